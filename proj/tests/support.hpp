#pragma once

#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fpf/interface.hpp"

namespace fpf::test {

inline std::string corpus_path(const std::string& name) { return std::string(FPF_SOURCE_DIR) + "/corpus/" + name; }
inline std::string golden_path(const std::string& name) { return std::string(FPF_SOURCE_DIR) + "/tests/golden/" + name; }

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline const std::vector<std::string>& corpus_files() {
    static const std::vector<std::string> files = {
        "and_comm.fpf", "exists_or.fpf",   "sub_suc.fpf",           "day_eta.fpf",
        "list_length_app.fpf", "season_next4.fpf", "tree_mirror_mirror.fpf",
    };
    return files;
}

inline std::vector<ProofTrace> check_file(const std::string& name) {
    return check_with_stdlib(parse_script(slurp(corpus_path(name))));
}

inline std::size_t count_nodes(const std::vector<TraceNode>& ns) {
    std::size_t k = 0;
    for (const auto& n : ns) {
        ++k;
        for (const auto& b : n.children) k += count_nodes(b.nodes);
    }
    return k;
}

// ---------------------------------------------------------------------------
// propositional formulas over A0..A9
// ---------------------------------------------------------------------------

inline std::string atom_name(int i) { return "A" + std::to_string(i); }

inline std::string prop_header(int atoms = 10) {
    std::string s = "Variables";
    for (int i = 0; i < atoms; ++i) s += " " + atom_name(i);
    return s + " : Prop.\n";
}

struct PropGen {
    std::mt19937 rng;
    int atoms;

    explicit PropGen(unsigned seed, int atoms_ = 10) : rng(seed), atoms(atoms_) {}

    int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

    Formula atom() { return Formula::atom(atom_name(pick(atoms))); }

    Formula any(int depth) {
        if (depth == 0) return pick(12) == 0 ? Formula::falsity() : atom();
        switch (pick(6)) {
            case 0: return atom();
            case 1: return Formula::negation(any(depth - 1));
            case 2: return Formula::conj(any(depth - 1), any(depth - 1));
            case 3: return Formula::disj(any(depth - 1), any(depth - 1));
            default: return Formula::imp(any(depth - 1), any(depth - 1));
        }
    }

    // instances of intuitionistic schemes, so the search below usually succeeds
    Formula provable(int depth) {
        Formula x = any(depth), y = any(depth), z = any(depth);
        switch (pick(9)) {
            case 0: return Formula::imp(x, x);
            case 1: return Formula::imp(Formula::conj(x, y), Formula::conj(y, x));
            case 2: return Formula::imp(x, Formula::imp(y, x));
            case 3: return Formula::imp(Formula::imp(x, y), Formula::imp(Formula::imp(y, z), Formula::imp(x, z)));
            case 4: return Formula::imp(Formula::disj(x, y), Formula::disj(y, x));
            case 5: return Formula::imp(x, Formula::negation(Formula::negation(x)));
            case 6: return Formula::imp(Formula::conj(x, Formula::negation(x)), y);
            case 7: return Formula::imp(Formula::conj(Formula::imp(x, z), Formula::imp(y, z)),
                                        Formula::imp(Formula::disj(x, y), z));
            default: return Formula::imp(Formula::falsity(), x);
        }
    }
};

/// Truth-table evaluation, written without reference to the kernel.
inline bool eval_prop(const Formula& f, std::uint32_t val) {
    switch (f.kind) {
        case Formula::Kind::Atom: return (val >> std::stoi(f.name.substr(1))) & 1u;
        case Formula::Kind::False: return false;
        case Formula::Kind::Not: return !eval_prop(f.subs[0], val);
        case Formula::Kind::And: return eval_prop(f.subs[0], val) && eval_prop(f.subs[1], val);
        case Formula::Kind::Or: return eval_prop(f.subs[0], val) || eval_prop(f.subs[1], val);
        case Formula::Kind::Imp: return !eval_prop(f.subs[0], val) || eval_prop(f.subs[1], val);
        default: return false;
    }
}

inline void atoms_of(const Formula& f, std::set<int>& out) {
    if (f.kind == Formula::Kind::Atom) out.insert(std::stoi(f.name.substr(1)));
    for (const auto& s : f.subs) atoms_of(s, out);
}

inline bool tautology(const Formula& f) {
    std::set<int> as;
    atoms_of(f, as);
    std::vector<int> idx(as.begin(), as.end());
    for (std::uint32_t m = 0; m < (1u << idx.size()); ++m) {
        std::uint32_t val = 0;
        for (std::size_t i = 0; i < idx.size(); ++i)
            if ((m >> i) & 1u) val |= 1u << idx[i];
        if (!eval_prop(f, val)) return false;
    }
    return true;
}

inline TacticLine tactic(TacticKind k, std::vector<std::string> names = {}) {
    TacticLine l;
    l.kind = k;
    for (auto& n : names) l.args.push_back(Term::var(std::move(n)));
    return l;
}

/// Small depth-first proof search that only proposes tactic lines; the kernel
/// decides whether they apply.
struct Prover {
    const Environment& env;
    int budget = 400;
    int fresh = 0;

    std::string name() { return "H" + std::to_string(fresh++); }

    /// Plausible next lines for the focused goal, most promising first.
    std::vector<TacticLine> candidates(const ProofState& s) {
        const Goal& g = s.focus.front();
        std::vector<TacticLine> tries;
        tries.push_back(tactic(TacticKind::Assumption));
        auto hyps = g.context.hypotheses();
        for (const auto* h : hyps) {
            const Formula& f = h->statement;
            if (f.kind == Formula::Kind::False) tries.push_back(tactic(TacticKind::UseFalse, {h->name}));
            if (f.kind == Formula::Kind::Not)
                for (const auto* a : hyps) tries.push_back(tactic(TacticKind::UseNot, {h->name, a->name}));
        }
        switch (g.target.kind) {
            case Formula::Kind::Imp: tries.push_back(tactic(TacticKind::ProveImp, {name()})); break;
            case Formula::Kind::Not: tries.push_back(tactic(TacticKind::ProveNot, {name()})); break;
            case Formula::Kind::And: tries.push_back(tactic(TacticKind::ProveAnd)); break;
            default: break;
        }
        for (const auto* h : hyps) {
            if (h->statement.kind == Formula::Kind::And)
                tries.push_back(tactic(TacticKind::UseAnd, {h->name, name(), name()}));
            if (h->statement.kind == Formula::Kind::Or) tries.push_back(tactic(TacticKind::UseOr, {h->name}));
        }
        for (const auto* h : hyps) {
            if (h->statement.kind != Formula::Kind::Imp) continue;
            bool known = false;
            for (const auto* c : hyps) known = known || alpha_equal(c->statement, h->statement.right());
            if (known) continue;
            for (const auto* a : hyps) tries.push_back(tactic(TacticKind::UseImp, {h->name, a->name, name()}));
        }
        if (g.target.kind == Formula::Kind::Or) {
            tries.push_back(tactic(TacticKind::ProveOrLeft));
            tries.push_back(tactic(TacticKind::ProveOrRight));
        }
        return tries;
    }

    std::optional<std::vector<TacticLine>> solve(const ProofState& s, int depth) {
        if (s.focus.empty()) return std::vector<TacticLine>{};
        if (depth == 0 || --budget <= 0) return std::nullopt;
        const std::vector<TacticLine> tries = candidates(s);
        for (const auto& t : tries) {
            ProofState next;
            try {
                next = apply_tactic(s, t, env).first;
            } catch (const Error&) {
                continue;
            }
            if (auto rest = solve(next, depth - 1)) {
                rest->insert(rest->begin(), t);
                return rest;
            }
            if (budget <= 0) return std::nullopt;
        }
        return std::nullopt;
    }
};

inline std::string theorem_text(const std::string& name, const Formula& f, const std::vector<TacticLine>& proof) {
    std::string s = "Theorem " + name + " : " + print(f) + ".\nProof.\n";
    for (const auto& l : proof) s += "  " + print(l) + "\n";
    return s + "Qed.\n";
}

// ---------------------------------------------------------------------------
// wrong-shape situations
// ---------------------------------------------------------------------------

/// Library plus ten propositional variables and a nat predicate.
inline const Environment& prop_env() {
    static const Environment env = [] {
        Environment e = *shared_stdlib();
        for (const auto& d : parse_script(prop_header() + "Variables P : nat -> Prop.\n").declarations)
            elaborate_declaration(d, e);
        return e;
    }();
    return env;
}

struct Situation {
    ProofState state;
    TacticLine line;
};

/// State whose focused goal is `target` with hypothesis H : hyp above the line.
inline ProofState with_hyp(const Formula& hyp, const Formula& target) {
    const Environment& env = prop_env();
    ProofState s = init_state(Formula::imp(hyp, target), env);
    return apply_tactic(s, tactic(TacticKind::ProveImp, {"H"}), env).first;
}

inline bool top_is(const Formula& f, Formula::Kind k) { return f.kind == k; }

/// n situations in which `k` must be rejected because of a shape mismatch.
inline std::vector<Situation> wrong_shape(TacticKind k, int n, unsigned seed) {
    PropGen g(seed);
    const Environment& env = prop_env();
    std::vector<Situation> out;
    auto goal_not = [&](Formula::Kind bad) {
        Formula f = g.any(1 + g.pick(3));
        while (top_is(f, bad)) f = g.any(1 + g.pick(3));
        return f;
    };
    using K = Formula::Kind;
    using T = TacticKind;
    const std::map<T, K> goal_kind = {{T::ProveImp, K::Imp}, {T::ProveAll, K::Forall}, {T::ProveNot, K::Not},
                                      {T::ProveAnd, K::And}, {T::ProveOrLeft, K::Or}, {T::ProveOrRight, K::Or},
                                      {T::ProveExists, K::Exists}, {T::Reflexivity, K::Eq}};
    const std::map<T, K> hyp_kind = {{T::UseAnd, K::And}, {T::UseOr, K::Or},          {T::UseExists, K::Exists},
                                     {T::UseAll, K::Forall}, {T::UseImp, K::Imp},     {T::UseFalse, K::False},
                                     {T::UseNot, K::Not}, {T::Rewrite, K::Eq}};
    while (static_cast<int>(out.size()) < n) {
        if (auto it = goal_kind.find(k); it != goal_kind.end()) {
            std::vector<std::string> args;
            if (k == T::ProveImp || k == T::ProveAll || k == T::ProveNot) args = {"H"};
            TacticLine l = tactic(k, args);
            if (k == T::ProveExists) l.args = {Term::num(0)};
            out.push_back({init_state(goal_not(it->second), env), l});
        } else if (auto hk = hyp_kind.find(k); hk != hyp_kind.end()) {
            std::vector<std::string> args = {"H"};
            if (k == T::UseAnd || k == T::UseExists) args = {"H", "H1", "H2"};
            if (k == T::UseImp) args = {"H", "H", "H2"};
            if (k == T::UseNot) args = {"H", "H"};
            TacticLine l = tactic(k, args);
            if (k == T::UseAll) l.args = {Term::var("H"), Term::num(0), Term::var("H2")};
            out.push_back({with_hyp(goal_not(hk->second), g.any(2)), l});
        } else if (k == T::Assumption) {
            Formula h = g.any(2), t = g.any(2);
            while (alpha_equal(h, t)) t = g.any(2);
            out.push_back({with_hyp(h, t), tactic(k)});
        } else if (k == T::UseTheorem) {
            out.push_back({init_state(g.any(2), env), tactic(k, {"no_such_lemma" + std::to_string(out.size()), "H"})});
        } else if (k == T::Unfold) {
            // no defined function occurs in a propositional goal
            static const char* fs[] = {"add", "sub", "pred", "app", "mirror", "next"};
            out.push_back({init_state(g.any(2), env), tactic(k, {fs[g.pick(6)]})});
        } else if (k == T::Case || k == T::Induction) {
            // propositional variables do not belong to an inductive type
            out.push_back({init_state(g.any(2), env), tactic(k, {atom_name(g.pick(10))})});
        } else if (k == T::Bullet) {
            ProofState s = init_state(Formula::conj(g.any(1), g.any(1)), env);
            s = apply_tactic(s, tactic(T::ProveAnd), env).first;
            TacticLine l = tactic(T::Bullet);
            l.bullet = g.pick(2) ? '*' : '-';
            out.push_back({s, l});
        } else {
            break;
        }
    }
    return out;
}

inline bool rejected(const Situation& s) {
    try {
        apply_tactic(s.state, s.line, prop_env());
        return false;
    } catch (const Error&) {
        return true;
    }
}

// ---------------------------------------------------------------------------
// closed arithmetic
// ---------------------------------------------------------------------------

/// Integer model of ⊕, ⊖ (truncated), pred and Suc. Independent of eval_closed.
inline std::optional<std::int64_t> arith(const Term& t) {
    if (t.is_num()) return static_cast<std::int64_t>(t.value);
    if (!t.is_app()) return std::nullopt;
    std::vector<std::int64_t> a;
    for (const auto& x : t.args) {
        auto v = arith(x);
        if (!v) return std::nullopt;
        a.push_back(*v);
    }
    if (t.name == "0" && a.empty()) return 0;
    if (t.name == "Suc" && a.size() == 1) return a[0] + 1;
    if (t.name == "pred" && a.size() == 1) return a[0] > 0 ? a[0] - 1 : 0;
    if (t.name == "add" && a.size() == 2) return a[0] + a[1];
    if (t.name == "sub" && a.size() == 2) return a[0] > a[1] ? a[0] - a[1] : 0;
    return std::nullopt;
}

struct ArithGen {
    std::mt19937 rng;
    std::uint64_t max;

    explicit ArithGen(unsigned seed, std::uint64_t max_ = 16) : rng(seed), max(max_) {}

    int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }
    Term leaf() { return Term::num(static_cast<std::uint64_t>(pick(static_cast<int>(max) + 1))); }

    Term any(int depth) {
        if (depth == 0) return leaf();
        switch (pick(5)) {
            case 0: return leaf();
            case 1: return Term::app("Suc", {any(depth - 1)});
            case 2: return Term::app("pred", {any(depth - 1)});
            case 3: return Term::app("add", {any(depth - 1), any(depth - 1)});
            default: return Term::app("sub", {any(depth - 1), any(depth - 1)});
        }
    }
};

inline bool accepted(const std::string& script) {
    try {
        check_with_stdlib(parse_script(script));
        return true;
    } catch (const Error&) {
        return false;
    }
}

}  // namespace fpf::test
