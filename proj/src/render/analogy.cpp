#include <algorithm>
#include <cctype>
#include <functional>

#include "internal.hpp"

namespace fpf {

namespace {

using Sigma = std::map<std::string, std::string>;

std::string rn(const std::string& s, const Sigma& sigma) {
    auto it = sigma.find(s);
    return it == sigma.end() ? s : it->second;
}

Term rename(const Term& t, const Sigma& sigma) {
    if (t.is_num()) return t;
    Term out = t;
    out.name = rn(t.name, sigma);
    for (auto& a : out.args) a = rename(a, sigma);
    return out;
}

Sort rename(const Sort& s, const Sigma& sigma) {
    Sort out = s;
    for (auto& p : out.parts) p = rn(p, sigma);
    return out;
}

bool is_fixed(const Formula& f, const std::vector<Formula>& fixed) {
    return std::any_of(fixed.begin(), fixed.end(), [&](const Formula& x) { return alpha_equal(x, f); });
}

Formula rename(const Formula& f, const Sigma& sigma, const std::vector<Formula>& fixed) {
    if (is_fixed(f, fixed)) return f;
    Formula out = f;
    if (f.kind == Formula::Kind::Atom || f.is_quantifier()) out.name = rn(f.name, sigma);
    if (f.is_quantifier()) out.sort = rename(f.sort, sigma);
    for (auto& t : out.terms) t = rename(t, sigma);
    for (auto& s : out.subs) s = rename(s, sigma, fixed);
    return out;
}

Goal rename(const Goal& g, const Sigma& sigma, const std::vector<Formula>& fixed) {
    Goal out = g;
    for (auto& e : out.context.entries) {
        if (e.is_hypothesis) {
            e.statement = rename(e.statement, sigma, fixed);
        } else {
            e.sort = rename(e.sort, sigma);
        }
    }
    out.target = rename(g.target, sigma, fixed);
    return out;
}

ProofState rename(const ProofState& s, const Sigma& sigma, const std::vector<Formula>& fixed) {
    ProofState out = s;
    for (auto& g : out.focus) g = rename(g, sigma, fixed);
    for (auto& fr : out.frames) {
        for (auto& g : fr.pending) g = rename(g, sigma, fixed);
    }
    return out;
}

TacticKind swapped(TacticKind k, const AnalogyReport& r) {
    for (const auto& [a, b] : r.swaps) {
        if (a == k) return b;
    }
    return k;
}

TacticLine rename(const TacticLine& l, const AnalogyReport& r) {
    TacticLine out = l;
    out.kind = swapped(l.kind, r);
    for (auto& a : out.args) a = rename(a, r.sigma);
    if (out.target) out.target = rn(*out.target, r.sigma);
    return out;
}

TraceNode transform(const TraceNode& n, const AnalogyReport& r) {
    TraceNode out = n;
    out.line = rename(n.line, r);
    out.before = rename(n.before, r.sigma, r.fixed);
    out.after = rename(n.after, r.sigma, r.fixed);
    out.used_hypothesis = rn(n.used_hypothesis, r.sigma);
    if (out.rewrite) {
        RewriteInfo& ri = *out.rewrite;
        ri.justification = rn(ri.justification, r.sigma);
        ri.equation = rename(ri.equation, r.sigma, r.fixed);
        for (auto& c : ri.side_conditions) c = rename(c, r.sigma, r.fixed);
        ri.before = rename(ri.before, r.sigma);
        ri.after = rename(ri.after, r.sigma);
        if (ri.in_hypothesis) ri.in_hypothesis = rn(*ri.in_hypothesis, r.sigma);
        if (ri.from_hypothesis) {
            if (const ContextEntry* h = out.goal_before().context.hypothesis(ri.justification)) {
                ri.label = print(h->statement);
            }
        }
    }
    for (auto& c : out.children) {
        for (auto& k : c.nodes) k = transform(k, r);
    }
    return out;
}

// --- anti-unification -------------------------------------------------------

struct AntiUnifier {
    Sigma sigma;
    std::vector<std::pair<std::string, std::string>> shown;
    bool ok = true;

    void pair(const std::string& a, const std::string& b) {
        if (a == b) {
            if (sigma.count(a) && sigma[a] != a) ok = false;
            return;
        }
        auto it = sigma.find(a);
        if (it != sigma.end()) {
            if (it->second != b) ok = false;
            return;
        }
        for (const auto& [k, v] : sigma) {
            if (v == b) ok = false;
        }
        sigma[a] = b;
    }

    void show(std::string a, std::string b) {
        auto p = std::make_pair(std::move(a), std::move(b));
        if (std::find(shown.begin(), shown.end(), p) == shown.end()) shown.push_back(std::move(p));
    }

    void term(const Term& a, const Term& b) {
        if (!ok || a == b) return;
        if (a.kind != b.kind || a.args.size() != b.args.size() || a.is_num()) {
            ok = false;
            return;
        }
        if (a.name != b.name) {
            pair(a.name, b.name);
            show(print(a), print(b));
        }
        for (std::size_t i = 0; i < a.args.size(); ++i) term(a.args[i], b.args[i]);
    }

    void sort(const Sort& a, const Sort& b) {
        if (a.parts.size() != b.parts.size()) {
            ok = false;
            return;
        }
        for (std::size_t i = 0; i < a.parts.size(); ++i) {
            if (a.parts[i] != b.parts[i]) pair(a.parts[i], b.parts[i]);
        }
    }

    void formula(const Formula& a, const Formula& b) {
        if (!ok || alpha_equal(a, b)) return;
        if (a.kind != b.kind || a.terms.size() != b.terms.size() || a.subs.size() != b.subs.size()) {
            ok = false;
            return;
        }
        if (a.kind == Formula::Kind::Atom && a.name != b.name) {
            pair(a.name, b.name);
            show(print(a), print(b));
            for (std::size_t i = 0; i < a.terms.size(); ++i) {
                if (!(a.terms[i] == b.terms[i])) ok = false;
            }
            return;
        }
        if (a.is_quantifier()) {
            if (a.name != b.name) pair(a.name, b.name);
            sort(a.sort, b.sort);
        }
        for (std::size_t i = 0; i < a.terms.size(); ++i) term(a.terms[i], b.terms[i]);
        for (std::size_t i = 0; i < a.subs.size(); ++i) formula(a.subs[i], b.subs[i]);
    }

    void goal(const Goal& a, const Goal& b) {
        const auto& ea = a.context.entries;
        const auto& eb = b.context.entries;
        if (ea.size() != eb.size()) {
            ok = false;
            return;
        }
        for (std::size_t i = 0; i < ea.size() && ok; ++i) {
            if (ea[i].is_hypothesis != eb[i].is_hypothesis || ea[i].name != eb[i].name) ok = false;
            if (ea[i].is_hypothesis) {
                formula(ea[i].statement, eb[i].statement);
            } else {
                sort(ea[i].sort, eb[i].sort);
            }
        }
        formula(a.target, b.target);
    }
};

// Maximal subformulas equal on both sides that sigma would still change.
void collect_fixed(const Formula& a, const Formula& b, const Sigma& sigma, std::vector<Formula>& out) {
    if (alpha_equal(a, b)) {
        if (!alpha_equal(rename(a, sigma, {}), a) && !is_fixed(a, out)) out.push_back(a);
        return;
    }
    if (a.kind != b.kind || a.subs.size() != b.subs.size()) return;
    for (std::size_t i = 0; i < a.subs.size(); ++i) collect_fixed(a.subs[i], b.subs[i], sigma, out);
}

void collect_fixed(const Goal& a, const Goal& b, const Sigma& sigma, std::vector<Formula>& out) {
    for (std::size_t i = 0; i < a.context.entries.size(); ++i) {
        const auto& x = a.context.entries[i];
        if (x.is_hypothesis) collect_fixed(x.statement, b.context.entries[i].statement, sigma, out);
    }
    collect_fixed(a.target, b.target, sigma, out);
}

bool contains_sub(const Formula& big, const Formula& small) {
    if (alpha_equal(big, small)) return true;
    return std::any_of(big.subs.begin(), big.subs.end(), [&](const Formula& s) { return contains_sub(s, small); });
}

std::vector<Formula> minimal(const std::vector<Formula>& cands) {
    std::vector<Formula> out;
    for (const auto& c : cands) {
        bool has_smaller = std::any_of(cands.begin(), cands.end(), [&](const Formula& d) {
            return !alpha_equal(c, d) && contains_sub(c, d);
        });
        if (!has_smaller) out.push_back(c);
    }
    return out;
}

using NodePairs = std::vector<std::pair<const TraceNode*, const TraceNode*>>;

bool pair_nodes(const std::vector<TraceNode>& a, const std::vector<TraceNode>& b, NodePairs& out) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const TraceNode& x = a[i];
        const TraceNode& y = b[i];
        if (x.children.size() != y.children.size() || x.produced.size() != y.produced.size()) return false;
        if (x.line.args.size() != y.line.args.size() || x.line.reverse != y.line.reverse) return false;
        if (x.line.target.has_value() != y.line.target.has_value()) return false;
        out.emplace_back(&x, &y);
        for (std::size_t c = 0; c < x.children.size(); ++c) {
            if (!pair_nodes(x.children[c].nodes, y.children[c].nodes, out)) return false;
        }
    }
    return true;
}

bool or_swap(TacticKind a, TacticKind b) {
    return (a == TacticKind::ProveOrLeft && b == TacticKind::ProveOrRight) ||
           (a == TacticKind::ProveOrRight && b == TacticKind::ProveOrLeft);
}

}  // namespace

bool analogy_candidate(TacticKind k) {
    return k == TacticKind::UseOr || k == TacticKind::Case || k == TacticKind::Induction;
}

std::optional<AnalogyReport> detect_analogy(const Branch& reference, const Branch& other, const Environment& env) {
    NodePairs pairs;
    if (!pair_nodes(reference.nodes, other.nodes, pairs)) return std::nullopt;

    AnalogyReport rep;
    AntiUnifier au;
    for (const auto& [x, y] : pairs) {
        if (x->line.kind != y->line.kind) {
            if (!or_swap(x->line.kind, y->line.kind)) return std::nullopt;
            auto sw = std::make_pair(x->line.kind, y->line.kind);
            if (std::find(rep.swaps.begin(), rep.swaps.end(), sw) == rep.swaps.end()) rep.swaps.push_back(sw);
        }
        for (std::size_t i = 0; i < x->line.args.size(); ++i) au.term(x->line.args[i], y->line.args[i]);
        if (x->line.target) au.pair(*x->line.target, *y->line.target);
        au.goal(x->goal_before(), y->goal_before());
        for (std::size_t i = 0; i < x->produced.size(); ++i) {
            const Goal* ga = detail::produced_goal(*x, i);
            const Goal* gb = detail::produced_goal(*y, i);
            if (!ga || !gb) return std::nullopt;
            au.goal(*ga, *gb);
        }
        if (!au.ok) return std::nullopt;
    }
    // a swapped kind must be swapped at every occurrence
    for (const auto& [x, y] : pairs) {
        for (const auto& [a, b] : rep.swaps) {
            if (x->line.kind == a && y->line.kind != b) return std::nullopt;
        }
    }
    rep.sigma = au.sigma;
    rep.shown = au.shown;

    std::vector<Formula> cands;
    for (const auto& [x, y] : pairs) {
        collect_fixed(x->goal_before(), y->goal_before(), rep.sigma, cands);
        for (std::size_t i = 0; i < x->produced.size(); ++i) {
            collect_fixed(*detail::produced_goal(*x, i), *detail::produced_goal(*y, i), rep.sigma, cands);
        }
    }
    rep.fixed = minimal(cands);

    // verification: transformed states agree and transformed steps replay
    for (const auto& [x, y] : pairs) {
        Goal moved = rename(x->goal_before(), rep.sigma, rep.fixed);
        const Goal& want = y->goal_before();
        if (!(moved.context.entries == want.context.entries) || !alpha_equal(moved.target, want.target)) {
            return std::nullopt;
        }
        TacticLine line = rename(x->line, rep);
        try {
            auto [state, node] = apply_tactic(y->before, line, env);
            if (!(state == y->after)) return std::nullopt;
        } catch (const Error&) {
            return std::nullopt;
        }
    }
    return rep;
}

Branch apply_analogy(const AnalogyReport& report, const Branch& reference) {
    Branch out;
    out.marker = reference.marker;
    for (const auto& n : reference.nodes) out.nodes.push_back(transform(n, report));
    return out;
}

std::string analogy_text(const AnalogyReport& r, const Catalog& cat) {
    std::string text = cat.phrase("analogy_intro");
    std::vector<std::string> parts;
    for (const auto& [a, b] : r.shown) parts.push_back(fill(cat.phrase("analogy_replace"), {{"from", a}, {"to", b}}));
    std::string sentence = detail::join_list(parts, cat);
    if (!r.fixed.empty() && !sentence.empty()) {
        std::vector<std::string> items;
        for (const auto& f : r.fixed) {
            items.push_back(fill(cat.phrase("analogy_fixed_item"), {{"noun", detail::noun(f, cat)}, {"formula", print(f)}}));
        }
        sentence += " " + fill(cat.phrase("analogy_except"), {{"fixed", detail::join_list(items, cat)}});
    }
    const bool starts_with_phrase = sentence.empty();
    for (const auto& [a, b] : r.swaps) {
        const std::string& p = cat.phrase(a == TacticKind::ProveOrLeft ? "analogy_swap_left" : "analogy_swap_right");
        sentence += sentence.empty() ? p : " " + cat.phrase("and") + " " + p;
    }
    if (!sentence.empty()) {
        if (starts_with_phrase) sentence[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(sentence[0])));
        text += " " + sentence + ".";
    }
    return text;
}

}  // namespace fpf
