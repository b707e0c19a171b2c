#include <algorithm>

#include "internal.hpp"

namespace fpf {

namespace {

constexpr char kMarkers[] = {'+', '*', '-'};

std::string describe(const Formula& f) {
    switch (f.kind) {
        case Formula::Kind::Atom: return "an atomic proposition";
        case Formula::Kind::Eq: return "an equation";
        case Formula::Kind::False: return "False";
        case Formula::Kind::Not: return f.is_neq() ? "a negated equation" : "a negation";
        case Formula::Kind::And: return "a conjunction";
        case Formula::Kind::Or: return "a disjunction";
        case Formula::Kind::Imp: return "an implication";
        case Formula::Kind::Forall: return "a universal statement";
        case Formula::Kind::Exists: return "an existential statement";
    }
    return "a formula";
}

std::string kind_phrase(Formula::Kind k) {
    if (k == Formula::Kind::Not) return "a negation";
    Formula probe;
    probe.kind = k;
    return describe(probe);
}

// Per-application context: the goal being worked on plus error helpers.
struct Step {
    const TacticLine& line;
    const Environment& env;
    const Goal& goal;
    std::string tactic;

    [[noreturn]] void fail(ErrorCode code, std::string msg, ErrorDetail d = {}) const {
        d.tactic = tactic;
        throw Error(code, line.span, std::move(msg), std::move(d));
    }

    void expect_goal(Formula::Kind k, ErrorCode code) const {
        const Formula& t = goal.target;
        if (t.kind == k) return;
        fail(code,
             tactic + " expects the current goal to be " + kind_phrase(k) + "; the goal here is " + describe(t) +
                 " (" + print(t) + ").",
             {"", print(t), describe(t), "", kind_phrase(k)});
    }

    const ContextEntry& hyp(const std::string& name) const {
        const ContextEntry* e = goal.context.hypothesis(name);
        if (!e) {
            fail(ErrorCode::UnknownName, "there is no hypothesis named " + name + ".",
                 {"", "", "", name, "a hypothesis"});
        }
        return *e;
    }

    const ContextEntry& hyp_of(const std::string& name, Formula::Kind k, ErrorCode code) const {
        const ContextEntry& e = hyp(name);
        if (e.statement.kind != k) {
            fail(code,
                 tactic + " expects " + name + " to be " + kind_phrase(k) + "; " + name + " is " +
                     describe(e.statement) + " (" + print(e.statement) + ").",
                 {"", print(e.statement), describe(e.statement), name, kind_phrase(k)});
        }
        return e;
    }

    void fresh(const std::string& name, const Context& ctx, std::initializer_list<std::string> taken = {}) const {
        bool clash = ctx.contains(name) || env.signature.is_global(name) || env.theorems.count(name) ||
                     std::find(taken.begin(), taken.end(), name) != taken.end();
        if (clash) {
            fail(ErrorCode::NameCollision, "the name " + name + " is already in use.", {"", "", "", name, "a fresh name"});
        }
    }

    Term term(const Term& raw) const {
        try {
            return resolve(raw, goal.context, env, line.span);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::UnresolvedName) throw;
            ErrorDetail d = e.detail();
            d.tactic = tactic;
            throw Error(ErrorCode::UnknownName, line.span, e.what(), d);
        }
    }

    Sort sort(const Term& t) const { return sort_of(t, goal.context, env, line.span); }

    /// Instance for a quantifier of sort `s`: types and predicates are passed by name.
    Term instance(const Term& raw, const Sort& s) const {
        if (s.is_type() || s.is_prop() || s.is_predicate()) {
            bool ident = raw.is_var() || (raw.is_app() && raw.args.empty());
            const ContextEntry* v = ident ? goal.context.variable(raw.name) : nullptr;
            bool ok = s.is_type() ? ident && (env.signature.is_base_sort(raw.name) || (v && v->sort.is_type()))
                                  : v && v->sort == s;
            if (!ok) {
                fail(ErrorCode::SortMismatch, print(raw) + " cannot be used for a quantifier over " + print(s) + ".",
                     {"", print(raw), "", "", print(s)});
            }
            return Term::var(raw.name);
        }
        Term t = term(raw);
        Sort ts = sort(t);
        if (!(ts == s)) {
            fail(ErrorCode::SortMismatch, print(t) + " has sort " + print(ts) + " but " + print(s) + " was expected.",
                 {"", print(t), print(ts), "", print(s)});
        }
        return t;
    }

    /// Instantiates leading universal quantifiers with the given arguments.
    Formula instantiate(Formula f, const std::vector<Term>& args) const {
        for (const auto& raw : args) {
            if (f.kind != Formula::Kind::Forall) {
                fail(ErrorCode::WrongArgumentCount, tactic + " was given more arguments than the statement has quantifiers.",
                     {"", print(f), describe(f), "", "fewer arguments"});
            }
            Term v = instance(raw, f.sort);
            f = substitute(f.body(), f.name, v);
        }
        return f;
    }

    const TheoremRecord& theorem(const std::string& name) const {
        auto it = env.theorems.find(name);
        if (it == env.theorems.end()) {
            fail(ErrorCode::UnknownName, "there is no theorem named " + name + ".", {"", "", "", name, "a theorem"});
        }
        return it->second;
    }
};

void remove_entry(Context& ctx, const std::string& name) {
    for (auto it = ctx.entries.end(); it != ctx.entries.begin();) {
        --it;
        if (it->name == name) {
            ctx.entries.erase(it);
            return;
        }
    }
}

void replace_statement(Context& ctx, const std::string& name, Formula f) {
    for (auto it = ctx.entries.rbegin(); it != ctx.entries.rend(); ++it) {
        if (it->name == name) {
            it->statement = std::move(f);
            return;
        }
    }
}

ContextEntry var_entry(std::string n, Sort s) { return {std::move(n), false, std::move(s), {}}; }
ContextEntry hyp_entry(std::string n, Formula f) { return {std::move(n), true, Sort(), std::move(f)}; }

Goal with_target(const Goal& g, Formula t) {
    Goal r = g;
    r.target = std::move(t);
    return r;
}

// ---------------------------------------------------------------------------
// rewriting
// ---------------------------------------------------------------------------

std::optional<Term> numeral_view(const Term& t) {
    if (!t.is_num()) return std::nullopt;
    return Term::app(std::string(kSuc), {Term::num(t.value - 1)});
}

bool match(const Term& p, const Term& t, const std::set<std::string>& pv, detail::Bindings& b) {
    if (p.is_var() && pv.count(p.name)) {
        auto it = b.find(p.name);
        if (it != b.end()) return it->second == t;
        b[p.name] = t;
        return true;
    }
    if (p.is_num() && t.is_num()) return p.value == t.value;
    if (p.is_num()) return match(*numeral_view(p), t, pv, b);
    if (t.is_num()) {
        if (p.is_app() && p.name == kSuc && p.args.size() == 1) return match(p, *numeral_view(t), pv, b);
        return false;
    }
    if (p.kind != t.kind || p.name != t.name || p.args.size() != t.args.size()) return false;
    for (std::size_t i = 0; i < p.args.size(); ++i) {
        if (!match(p.args[i], t.args[i], pv, b)) return false;
    }
    return true;
}

bool disjoint(const std::set<std::string>& a, const std::set<std::string>& b) {
    for (const auto& x : a) {
        if (b.count(x)) return false;
    }
    return true;
}

struct Rewriter {
    const Term& lhs;
    const Term& rhs;
    const std::set<std::string>& pvars;
    bool done = false;
    detail::Bindings bindings;

    Term term(const Term& t, const std::set<std::string>& bound) {
        if (done) return t;
        detail::Bindings b;
        if (match(lhs, t, pvars, b) && b.size() == pvars.size() && disjoint(free_names(t), bound)) {
            Term out = detail::substitute_all(rhs, b);
            if (disjoint(free_names(out), bound)) {
                done = true;
                bindings = std::move(b);
                return out;
            }
        }
        if (t.is_num()) return t;
        Term r = t;
        for (auto& a : r.args) a = term(a, bound);
        return r;
    }

    Formula formula(const Formula& f, std::set<std::string> bound) {
        if (done) return f;
        Formula r = f;
        if (f.is_quantifier()) bound.insert(f.name);
        for (auto& t : r.terms) t = term(t, bound);
        for (auto& s : r.subs) s = formula(s, bound);
        return r;
    }
};

struct RewriteResult {
    Formula formula;
    RewriteInfo info;
    detail::Bindings bindings;
};

// Rewrites the leftmost-outermost instance of `lhs` in `f`.
std::optional<RewriteResult> rewrite_once(const Formula& f, const Term& lhs, const Term& rhs,
                                          const std::set<std::string>& pvars) {
    Rewriter rw{lhs, rhs, pvars};
    RewriteResult res;
    const Formula* eq = f.kind == Formula::Kind::Eq ? &f : (f.is_neq() ? &f.body() : nullptr);
    if (eq) {
        Formula out = *eq;
        out.terms[0] = rw.term(eq->lhs(), {});
        res.info.side = RedexSide::Lhs;
        if (!rw.done) {
            out.terms[1] = rw.term(eq->rhs(), {});
            res.info.side = RedexSide::Rhs;
        }
        if (!rw.done) return std::nullopt;
        const std::size_t i = res.info.side == RedexSide::Lhs ? 0 : 1;
        res.info.before = eq->terms[i];
        res.info.after = out.terms[i];
        res.formula = f.kind == Formula::Kind::Eq ? out : Formula::negation(out);
    } else {
        res.formula = rw.formula(f, {});
        if (!rw.done) return std::nullopt;
        res.info.side = RedexSide::Whole;
    }
    res.bindings = std::move(rw.bindings);
    return res;
}

Formula substitute_bindings(Formula f, const detail::Bindings& b) {
    for (const auto& [k, v] : b) f = substitute(f, k, v);
    return f;
}

// ---------------------------------------------------------------------------
// bullets
// ---------------------------------------------------------------------------

void close_finished_frames(ProofState& s) {
    while (s.focus.empty() && !s.frames.empty() && s.frames.back().pending.empty()) s.frames.pop_back();
}

void apply_bullet(ProofState& s, const TacticLine& line) {
    const char m = *line.bullet;
    auto fail = [&](ErrorCode code, std::string msg, std::string expected) {
        throw Error(code, line.span, std::move(msg), {"", std::string(1, m), "", "", std::move(expected)});
    };
    if (s.focus.empty()) {
        if (s.frames.empty()) fail(ErrorCode::NoMoreSubgoals, "there are no more subgoals to focus.", "");
        BulletFrame& top = s.frames.back();
        if (top.marker != m) {
            fail(ErrorCode::BulletWrongMarker,
                 std::string("the next subgoal has to be focused with ") + top.marker + ", not " + m + ".",
                 std::string(1, top.marker));
        }
        s.focus.push_back(std::move(top.pending.front()));
        top.pending.erase(top.pending.begin());
        return;
    }
    for (const auto& f : s.frames) {
        if (f.marker == m) {
            fail(ErrorCode::BulletUnfinished, std::string("the current subgoal is not finished yet, so ") + m +
                                                  " cannot focus another one.",
                 "");
        }
    }
    const char want = kMarkers[s.frames.size() % 3];
    if (m != want) {
        fail(ErrorCode::BulletWrongMarker, std::string("subgoals at this depth are focused with ") + want + ", not " + m + ".",
             std::string(1, want));
    }
    BulletFrame frame{m, {}};
    frame.pending.assign(s.focus.begin() + 1, s.focus.end());
    s.focus.resize(1);
    s.frames.push_back(std::move(frame));
}

}  // namespace

std::vector<TacticLine> expand_line(const TacticLine& line) {
    if (!line.bullet || line.kind == TacticKind::Bullet) return {line};
    TacticLine b;
    b.kind = TacticKind::Bullet;
    b.bullet = line.bullet;
    b.span = line.bullet_span;
    b.bullet_span = line.bullet_span;
    b.source_line = line.source_line;
    TacticLine t = line;
    t.bullet.reset();
    return {b, t};
}

ProofState init_state(const Formula& theorem, const Environment& env) {
    ProofState s;
    Goal g;
    g.id = 1;
    g.context = env.globals;
    g.target = resolve(theorem, env.globals, env);
    s.focus.push_back(std::move(g));
    s.next_goal_id = 2;
    return s;
}

std::pair<ProofState, TraceNode> apply_tactic(const ProofState& state, const TacticLine& line,
                                              const Environment& env) {
    TraceNode node;
    node.id = state.step;
    node.line = line;
    node.before = state;
    ProofState s = state;

    if (line.kind == TacticKind::Bullet) {
        node.bullet_event = true;
        apply_bullet(s, line);
        s.step++;
        node.after = s;
        return {s, node};
    }

    const std::string tactic(tactic_name(line.kind));
    if (s.focus.empty()) {
        if (s.complete()) {
            throw Error(ErrorCode::NoGoals, line.span, "there are no goals left; the proof is complete.", {tactic});
        }
        throw Error(ErrorCode::BulletExpected, line.span, "the next subgoal has to be focused with a bullet first.",
                    {tactic, "", "", "", std::string(1, s.frames.back().marker)});
    }
    const Goal goal = s.focus.front();
    Step st{line, env, goal, tactic};
    auto nm = [&](std::size_t i) -> const std::string& {
        try {
            return line.name_arg(i);
        } catch (Error& e) {
            e.set_span(line.span);
            throw;
        }
    };
    auto arity = [&](std::size_t n) {
        if (line.args.size() != n) {
            st.fail(ErrorCode::WrongArgumentCount,
                    tactic + " expects " + std::to_string(n) + " argument" + (n == 1 ? "" : "s") + ".",
                    {"", "", "", "", std::to_string(n)});
        }
    };

    std::vector<Goal> out;
    switch (line.kind) {
        case TacticKind::ProveImp: {
            arity(1);
            st.expect_goal(Formula::Kind::Imp, ErrorCode::GoalNotImplication);
            st.fresh(nm(0), goal.context);
            Goal g = with_target(goal, goal.target.right());
            g.context.entries.push_back(hyp_entry(nm(0), goal.target.left()));
            out.push_back(std::move(g));
            break;
        }
        case TacticKind::ProveAll: {
            arity(1);
            st.expect_goal(Formula::Kind::Forall, ErrorCode::GoalNotUniversal);
            st.fresh(nm(0), goal.context);
            const Formula& t = goal.target;
            Goal g = with_target(goal, substitute(t.body(), t.name, Term::var(nm(0))));
            g.context.entries.push_back(var_entry(nm(0), t.sort));
            out.push_back(std::move(g));
            break;
        }
        case TacticKind::ProveNot: {
            arity(1);
            st.expect_goal(Formula::Kind::Not, ErrorCode::GoalNotNegation);
            st.fresh(nm(0), goal.context);
            Goal g = with_target(goal, Formula::falsity());
            g.context.entries.push_back(hyp_entry(nm(0), goal.target.body()));
            out.push_back(std::move(g));
            break;
        }
        case TacticKind::ProveAnd:
            arity(0);
            st.expect_goal(Formula::Kind::And, ErrorCode::GoalNotConjunction);
            out.push_back(with_target(goal, goal.target.left()));
            out.push_back(with_target(goal, goal.target.right()));
            break;
        case TacticKind::ProveOrLeft:
        case TacticKind::ProveOrRight:
            arity(0);
            st.expect_goal(Formula::Kind::Or, ErrorCode::GoalNotDisjunction);
            out.push_back(with_target(goal, line.kind == TacticKind::ProveOrLeft ? goal.target.left()
                                                                                 : goal.target.right()));
            break;
        case TacticKind::ProveExists: {
            arity(1);
            st.expect_goal(Formula::Kind::Exists, ErrorCode::GoalNotExistential);
            const Formula& t = goal.target;
            Term w = st.instance(line.args[0], t.sort);
            out.push_back(with_target(goal, substitute(t.body(), t.name, w)));
            break;
        }
        case TacticKind::UseAnd: {
            arity(3);
            const ContextEntry& h = st.hyp_of(nm(0), Formula::Kind::And, ErrorCode::HypNotConjunction);
            Goal g = goal;
            Formula a = h.statement.left(), b = h.statement.right();
            remove_entry(g.context, nm(0));
            st.fresh(nm(1), g.context);
            st.fresh(nm(2), g.context, {nm(1)});
            g.context.entries.push_back(hyp_entry(nm(1), std::move(a)));
            g.context.entries.push_back(hyp_entry(nm(2), std::move(b)));
            out.push_back(std::move(g));
            break;
        }
        case TacticKind::UseOr: {
            arity(1);
            const ContextEntry& h = st.hyp_of(nm(0), Formula::Kind::Or, ErrorCode::HypNotDisjunction);
            for (const Formula* side : {&h.statement.left(), &h.statement.right()}) {
                Goal g = goal;
                replace_statement(g.context, nm(0), *side);
                out.push_back(std::move(g));
            }
            break;
        }
        case TacticKind::UseExists: {
            arity(3);
            const ContextEntry& h = st.hyp_of(nm(0), Formula::Kind::Exists, ErrorCode::HypNotExistential);
            Formula ex = h.statement;
            Goal g = goal;
            remove_entry(g.context, nm(0));
            st.fresh(nm(1), g.context);
            st.fresh(nm(2), g.context, {nm(1)});
            g.context.entries.push_back(var_entry(nm(1), ex.sort));
            g.context.entries.push_back(hyp_entry(nm(2), substitute(ex.body(), ex.name, Term::var(nm(1)))));
            out.push_back(std::move(g));
            break;
        }
        case TacticKind::UseAll: {
            arity(3);
            const ContextEntry& h = st.hyp_of(nm(0), Formula::Kind::Forall, ErrorCode::HypNotUniversal);
            Formula inst = st.instantiate(h.statement, {line.args[1]});
            st.fresh(nm(2), goal.context);
            Goal g = goal;
            g.context.entries.push_back(hyp_entry(nm(2), std::move(inst)));
            out.push_back(std::move(g));
            break;
        }
        case TacticKind::UseImp: {
            arity(3);
            const ContextEntry& h = st.hyp_of(nm(0), Formula::Kind::Imp, ErrorCode::HypNotImplication);
            const ContextEntry& a = st.hyp(nm(1));
            if (!convertible(a.statement, h.statement.left(), env.signature)) {
                st.fail(ErrorCode::PremiseMismatch,
                        nm(1) + " (" + print(a.statement) + ") does not match the premise " + print(h.statement.left()) +
                            " of " + nm(0) + ".",
                        {"", print(a.statement), "", nm(1), print(h.statement.left())});
            }
            st.fresh(nm(2), goal.context);
            Goal g = goal;
            g.context.entries.push_back(hyp_entry(nm(2), h.statement.right()));
            out.push_back(std::move(g));
            break;
        }
        case TacticKind::UseFalse:
            arity(1);
            st.hyp_of(nm(0), Formula::Kind::False, ErrorCode::HypNotFalse);
            node.used_hypothesis = nm(0);
            break;
        case TacticKind::UseNot: {
            arity(2);
            const ContextEntry& h = st.hyp_of(nm(0), Formula::Kind::Not, ErrorCode::HypNotNegation);
            const ContextEntry& a = st.hyp(nm(1));
            if (!convertible(a.statement, h.statement.body(), env.signature)) {
                st.fail(ErrorCode::PremiseMismatch,
                        nm(1) + " (" + print(a.statement) + ") is not the negated statement " +
                            print(h.statement.body()) + ".",
                        {"", print(a.statement), "", nm(1), print(h.statement.body())});
            }
            node.used_hypothesis = nm(1);
            break;
        }
        case TacticKind::UseTheorem: {
            if (line.args.size() < 2) arity(2);
            const TheoremRecord& th = st.theorem(nm(0));
            const std::string& target = nm(line.args.size() - 1);
            std::vector<Term> args(line.args.begin() + 1, line.args.end() - 1);
            Formula inst = st.instantiate(th.statement, args);
            st.fresh(target, goal.context);
            Goal g = goal;
            g.context.entries.push_back(hyp_entry(target, std::move(inst)));
            out.push_back(std::move(g));
            break;
        }
        case TacticKind::Rewrite: {
            const std::string& source = nm(0);
            RewriteInfo info;
            info.justification = source;
            info.reverse = line.reverse;
            Formula stmt;
            if (const ContextEntry* h = goal.context.hypothesis(source)) {
                stmt = h->statement;
                info.from_hypothesis = true;
                info.label = print(h->statement);
            } else if (env.theorems.count(source)) {
                stmt = env.theorems.at(source).statement;
                info.label = source;
            } else {
                st.fail(ErrorCode::UnknownName, "there is no hypothesis or theorem named " + source + ".",
                        {"", "", "", source, "a hypothesis or theorem"});
            }
            stmt = st.instantiate(stmt, std::vector<Term>(line.args.begin() + 1, line.args.end()));
            std::set<std::string> pvars;
            for (int i = 0; stmt.kind == Formula::Kind::Forall; ++i) {
                std::string p = "?" + std::to_string(i);
                pvars.insert(p);
                stmt = substitute(stmt.body(), stmt.name, Term::var(p));
            }
            std::vector<Formula> conditions;
            while (stmt.kind == Formula::Kind::Imp) {
                conditions.push_back(stmt.left());
                stmt = stmt.right();
            }
            if (stmt.kind != Formula::Kind::Eq) {
                st.fail(ErrorCode::NotAnEquation, source + " is not an equation: " + print(stmt) + ".",
                        {"", print(stmt), describe(stmt), source, "an equation"});
            }
            const Term& l = line.reverse ? stmt.rhs() : stmt.lhs();
            const Term& r = line.reverse ? stmt.lhs() : stmt.rhs();
            std::set<std::string> in_lhs = free_names(l);
            for (const auto& p : pvars) {
                if (!in_lhs.count(p)) {
                    st.fail(ErrorCode::WrongArgumentCount,
                            "rewrite with " + source + " needs explicit arguments for its quantifiers.",
                            {"", print(stmt), "", source, "more arguments"});
                }
            }
            Goal g = goal;
            const Formula* subject = &goal.target;
            if (line.target) {
                if (*line.target == source) {
                    st.fail(ErrorCode::UnknownName, "a hypothesis cannot be rewritten with itself.",
                            {"", "", "", source, "another hypothesis"});
                }
                subject = &st.hyp(*line.target).statement;
                info.in_hypothesis = *line.target;
            }
            auto res = rewrite_once(*subject, l, r, pvars);
            if (!res) {
                st.fail(ErrorCode::RewriteRedexNotFound,
                        "the pattern " + print(l) + " does not occur in " + print(*subject) + ".",
                        {"", print(*subject), "", source, print(l)});
            }
            info.side = res->info.side;
            info.before = res->info.before;
            info.after = res->info.after;
            Term il = detail::substitute_all(l, res->bindings);
            Term ir = detail::substitute_all(r, res->bindings);
            info.equation = Formula::eq(il, ir);
            for (const auto& c : conditions) info.side_conditions.push_back(substitute_bindings(c, res->bindings));
            if (line.target) {
                replace_statement(g.context, *line.target, res->formula);
            } else {
                g.target = res->formula;
            }
            out.push_back(std::move(g));
            for (const auto& c : info.side_conditions) out.push_back(with_target(goal, c));
            node.rewrite = std::move(info);
            break;
        }
        case TacticKind::Unfold: {
            arity(1);
            auto fn = env.signature.functions.find(nm(0));
            if (fn == env.signature.functions.end()) {
                if (env.signature.constructors.count(nm(0))) {
                    st.fail(ErrorCode::NotAFunction, nm(0) + " is a constructor, not a defined function.",
                            {"", "", "", nm(0), "a defined function"});
                }
                st.fail(ErrorCode::UnknownName, "there is no function named " + nm(0) + ".",
                        {"", "", "", nm(0), "a defined function"});
            }
            Goal g = goal;
            const Formula& subject = line.target ? st.hyp(*line.target).statement : goal.target;
            auto r = detail::unfold_once(subject, fn->second, env.signature);
            if (!r) {
                st.fail(ErrorCode::UnfoldNotApplicable, nm(0) + " cannot be unfolded in " + print(subject) + ".",
                        {"", print(subject), "", nm(0), "a reducible occurrence"});
            }
            if (line.target) {
                replace_statement(g.context, *line.target, *r);
            } else {
                g.target = *r;
            }
            out.push_back(std::move(g));
            break;
        }
        case TacticKind::Case: {
            if (line.args.empty()) arity(1);
            Term t = st.term(line.args[0]);
            Sort ts = st.sort(t);
            auto ty = env.signature.types.find(ts.result());
            if (ts.is_arrow() || ty == env.signature.types.end()) {
                st.fail(ErrorCode::NotInductive, print(t) + " does not belong to an inductive type.",
                        {"", print(t), print(ts), "", "an inductive type"});
            }
            std::size_t total = 0;
            for (const auto& c : ty->second.constructors) total += env.signature.constructors.at(c).arg_sorts.size();
            if (line.args.size() != total + 2) {
                st.fail(ErrorCode::WrongArgumentCount,
                        "case on " + print(t) + " needs a hypothesis name and " + std::to_string(total) +
                            " variable name" + (total == 1 ? "" : "s") + ".",
                        {"", print(t), "", "", std::to_string(total + 1)});
            }
            std::vector<std::string> names;
            for (std::size_t i = 1; i < line.args.size(); ++i) {
                const std::string& n = nm(i);
                st.fresh(n, goal.context);
                if (std::find(names.begin(), names.end(), n) != names.end()) {
                    st.fail(ErrorCode::NameCollision, "the name " + n + " is used twice.", {"", "", "", n, "distinct names"});
                }
                names.push_back(n);
            }
            std::size_t k = 1;
            for (const auto& cname : ty->second.constructors) {
                const Constructor& c = env.signature.constructors.at(cname);
                Goal g = goal;
                Term value = Term::app(cname);
                for (const auto& s : c.arg_sorts) {
                    g.context.entries.push_back(var_entry(names[k], Sort(s)));
                    value.args.push_back(Term::var(names[k++]));
                }
                g.context.entries.push_back(hyp_entry(names[0], Formula::eq(t, std::move(value))));
                out.push_back(std::move(g));
            }
            break;
        }
        case TacticKind::Induction: {
            const std::string& x = nm(0);
            const ContextEntry* v = goal.context.variable(x);
            if (!v) st.fail(ErrorCode::UnknownName, "there is no variable named " + x + ".", {"", "", "", x, "a variable"});
            auto ty = env.signature.types.find(v->sort.result());
            if (v->sort.is_arrow() || ty == env.signature.types.end()) {
                st.fail(ErrorCode::NotInductive, x + " does not belong to an inductive type.",
                        {"", x, print(v->sort), x, "an inductive type"});
            }
            for (const ContextEntry* h : goal.context.hypotheses()) {
                if (occurs(x, h->statement)) {
                    st.fail(ErrorCode::HypDependsOnVariable,
                            "hypothesis " + h->name + " mentions " + x + "; induction on " + x + " is not possible.",
                            {"", print(h->statement), "", h->name, ""});
                }
            }
            const std::string type = ty->first;
            std::size_t total = 0;
            for (const auto& c : ty->second.constructors) {
                for (const auto& s : env.signature.constructors.at(c).arg_sorts) total += s == type ? 2 : 1;
            }
            if (line.args.size() != total + 1) {
                st.fail(ErrorCode::WrongArgumentCount,
                        "induction on " + x + " needs " + std::to_string(total) + " name" + (total == 1 ? "" : "s") + ".",
                        {"", x, "", x, std::to_string(total)});
            }
            Context base = goal.context;
            remove_entry(base, x);
            std::vector<std::string> names;
            for (std::size_t i = 1; i < line.args.size(); ++i) {
                const std::string& n = nm(i);
                st.fresh(n, base);
                if (std::find(names.begin(), names.end(), n) != names.end()) {
                    st.fail(ErrorCode::NameCollision, "the name " + n + " is used twice.", {"", "", "", n, "distinct names"});
                }
                names.push_back(n);
            }
            std::size_t k = 0;
            for (const auto& cname : ty->second.constructors) {
                const Constructor& c = env.signature.constructors.at(cname);
                Goal g = goal;
                g.context = base;
                Term value = Term::app(cname);
                std::vector<std::string> recursive;
                for (const auto& s : c.arg_sorts) {
                    g.context.entries.push_back(var_entry(names[k], Sort(s)));
                    value.args.push_back(Term::var(names[k]));
                    if (s == type) recursive.push_back(names[k]);
                    ++k;
                }
                for (const auto& r : recursive) {
                    g.context.entries.push_back(hyp_entry(names[k++], substitute(goal.target, x, Term::var(r))));
                }
                g.target = substitute(goal.target, x, value);
                out.push_back(std::move(g));
            }
            break;
        }
        case TacticKind::Assumption: {
            arity(0);
            auto hyps = goal.context.hypotheses();
            for (auto it = hyps.rbegin(); it != hyps.rend(); ++it) {
                if (convertible((*it)->statement, goal.target, env.signature)) {
                    node.used_hypothesis = (*it)->name;
                    break;
                }
            }
            if (node.used_hypothesis.empty()) {
                st.fail(ErrorCode::NoMatchingAssumption, "no hypothesis matches the goal " + print(goal.target) + ".",
                        {"", print(goal.target), describe(goal.target), "", ""});
            }
            break;
        }
        case TacticKind::Reflexivity: {
            arity(0);
            st.expect_goal(Formula::Kind::Eq, ErrorCode::GoalNotEquation);
            Term l = normalize(goal.target.lhs(), env.signature);
            Term r = normalize(goal.target.rhs(), env.signature);
            if (!(l == r)) {
                st.fail(ErrorCode::NotReflexive,
                        "the two sides of " + print(goal.target) + " do not compute to the same value.",
                        {"", print(goal.target), print(Formula::eq(l, r)), "", ""});
            }
            break;
        }
        case TacticKind::Bullet:
            break;
    }

    node.goal_id = goal.id;
    for (auto& g : out) {
        g.id = s.next_goal_id++;
        node.produced.push_back(g.id);
    }
    s.focus.erase(s.focus.begin());
    s.focus.insert(s.focus.begin(), out.begin(), out.end());
    close_finished_frames(s);
    s.step++;
    node.after = s;
    return {s, node};
}

}  // namespace fpf
