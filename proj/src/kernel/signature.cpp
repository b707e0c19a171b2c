#include <algorithm>

#include "internal.hpp"

namespace fpf {

namespace {

[[noreturn]] void fail(ErrorCode code, Span span, std::string msg, ErrorDetail d = {}) {
    throw Error(code, span, std::move(msg), std::move(d));
}

bool sort_part_known(const std::string& p, const Context& ctx, const Environment& env) {
    if (p == "Type" || p == "Prop" || env.signature.is_base_sort(p)) return true;
    const ContextEntry* v = ctx.variable(p);
    if (!v) v = env.globals.variable(p);
    return v && v->sort.is_type();
}

void check_sort(const Sort& s, const Context& ctx, const Environment& env, Span span) {
    for (std::size_t i = 0; i < s.parts.size(); ++i) {
        const std::string& p = s.parts[i];
        if (p == "Type" && s.parts.size() > 1) fail(ErrorCode::SortMismatch, span, "Type cannot appear in an arrow sort");
        if (p == "Prop" && i + 1 < s.parts.size()) fail(ErrorCode::SortMismatch, span, "Prop can only be a result sort");
        if (!sort_part_known(p, ctx, env)) {
            fail(ErrorCode::UnresolvedName, span, "unknown sort " + p, {"", "", "", p, "a sort"});
        }
    }
}

const ContextEntry* lookup_variable(const std::string& n, const Context& ctx, const Environment& env) {
    if (const ContextEntry* e = ctx.find(n)) return e->is_hypothesis ? nullptr : e;
    return env.globals.variable(n);
}

void ensure_fresh(const std::string& name, const Environment& env, Span span) {
    if (env.signature.is_global(name) || env.theorems.count(name) || env.globals.contains(name)) {
        fail(ErrorCode::DuplicateName, span, name + " is already declared", {"", "", "", name, "a fresh name"});
    }
}

void expect_sort(const Term& t, const Sort& got, const Sort& want, Span span) {
    if (!(got == want)) {
        fail(ErrorCode::SortMismatch, span,
             print(t) + " has sort " + print(got) + " but " + print(want) + " was expected",
             {"", print(t), print(got), "", print(want)});
    }
}

}  // namespace

Sort sort_of(const Term& t, const Context& ctx, const Environment& env, Span span) {
    if (t.is_num()) return Sort(std::string(kNatSort));
    if (const ContextEntry* v = lookup_variable(t.name, ctx, env)) {
        if (t.is_var() || t.args.empty()) return v->sort;
        return Sort(v->sort.result());
    }
    if (auto g = env.signature.global_sort(t.name)) {
        if (t.args.empty()) return *g;
        return Sort(g->result());
    }
    fail(ErrorCode::UnresolvedName, span, "unknown name " + t.name, {"", "", "", t.name, "a declared name"});
}

Term resolve(const Term& t, const Context& ctx, const Environment& env, Span span) {
    if (t.is_num()) return t;
    if (const ContextEntry* v = lookup_variable(t.name, ctx, env)) {
        if (t.args.empty()) return Term::var(t.name);
        if (v->sort.arity() != t.args.size() || v->sort.is_predicate()) {
            fail(ErrorCode::SortMismatch, span, t.name + " is applied to the wrong number of arguments",
                 {"", print(t), print(v->sort), t.name, ""});
        }
        Term r = Term::app(t.name, {});
        for (std::size_t i = 0; i < t.args.size(); ++i) {
            Term a = resolve(t.args[i], ctx, env, span);
            expect_sort(a, sort_of(a, ctx, env, span), Sort(v->sort.parts[i]), span);
            r.args.push_back(std::move(a));
        }
        return r;
    }
    auto g = env.signature.global_sort(t.name);
    if (!g) fail(ErrorCode::UnresolvedName, span, "unknown name " + t.name, {"", "", "", t.name, "a declared name"});
    if (t.args.empty()) return Term::app(t.name);
    if (g->arity() != t.args.size()) {
        fail(ErrorCode::SortMismatch, span, t.name + " expects " + std::to_string(g->arity()) + " arguments",
             {"", print(t), print(*g), t.name, ""});
    }
    Term r = Term::app(t.name);
    for (std::size_t i = 0; i < t.args.size(); ++i) {
        Term a = resolve(t.args[i], ctx, env, span);
        expect_sort(a, sort_of(a, ctx, env, span), Sort(g->parts[i]), span);
        r.args.push_back(std::move(a));
    }
    return r;
}

Formula resolve(const Formula& f, const Context& ctx, const Environment& env, Span span) {
    switch (f.kind) {
        case Formula::Kind::False:
            return f;
        case Formula::Kind::Atom: {
            const ContextEntry* p = lookup_variable(f.name, ctx, env);
            if (!p) {
                if (env.signature.is_global(f.name)) {
                    fail(ErrorCode::SortMismatch, span, f.name + " is not a proposition",
                         {"", f.name, "", f.name, "a proposition"});
                }
                fail(ErrorCode::UnresolvedName, span, "unknown name " + f.name,
                     {"", "", "", f.name, "a declared name"});
            }
            const bool ok = f.terms.empty() ? p->sort.is_prop()
                                            : p->sort.is_predicate() && p->sort.arity() == f.terms.size();
            if (!ok) {
                fail(ErrorCode::SortMismatch, span, f.name + " has sort " + print(p->sort),
                     {"", f.name, print(p->sort), f.name, "a proposition"});
            }
            Formula r = f;
            for (std::size_t i = 0; i < f.terms.size(); ++i) {
                r.terms[i] = resolve(f.terms[i], ctx, env, span);
                expect_sort(r.terms[i], sort_of(r.terms[i], ctx, env, span), Sort(p->sort.parts[i]), span);
            }
            return r;
        }
        case Formula::Kind::Eq: {
            Term l = resolve(f.lhs(), ctx, env, span);
            Term r = resolve(f.rhs(), ctx, env, span);
            Sort ls = sort_of(l, ctx, env, span);
            expect_sort(r, sort_of(r, ctx, env, span), ls, span);
            if (ls.is_arrow()) fail(ErrorCode::SortMismatch, span, "equations between functions are not supported");
            return Formula::eq(std::move(l), std::move(r));
        }
        case Formula::Kind::Forall:
        case Formula::Kind::Exists: {
            check_sort(f.sort, ctx, env, span);
            Context inner = ctx;
            inner.entries.push_back({f.name, false, f.sort, {}});
            Formula r = f;
            r.subs[0] = resolve(f.body(), inner, env, span);
            return r;
        }
        default: {
            Formula r = f;
            for (auto& s : r.subs) s = resolve(s, ctx, env, span);
            return r;
        }
    }
}

// ---------------------------------------------------------------------------
// declarations
// ---------------------------------------------------------------------------

namespace {

Context params_context(const std::vector<Binder>& params) {
    Context ctx;
    for (const auto& b : params) ctx.entries.push_back({b.name, false, b.sort, {}});
    return ctx;
}

bool constructor_headed(const Term& t, const Signature& sig) {
    if (t.is_num()) return false;
    return sig.constructors.count(t.name) > 0;
}

std::size_t decreasing_position(const Declaration& d, const Signature& sig) {
    if (d.decreasing) {
        for (std::size_t i = 0; i < d.binders.size(); ++i) {
            if (d.binders[i].name == *d.decreasing) return i;
        }
        fail(ErrorCode::MalformedEquation, d.span, *d.decreasing + " is not a parameter of " + d.name,
             {"", "", "", *d.decreasing, "a parameter"});
    }
    for (std::size_t i = 0; i < d.binders.size(); ++i) {
        bool all = !d.equations.empty();
        for (const auto& eq : d.equations) {
            if (!eq.lhs.is_app() || eq.lhs.args.size() != d.binders.size() ||
                !constructor_headed(eq.lhs.args[i], sig)) {
                all = false;
                break;
            }
        }
        if (all) return i;
    }
    fail(ErrorCode::MalformedEquation, d.span, d.name + ": no argument is matched against constructors",
         {"", "", "", d.name, "a constructor pattern"});
}

DefiningEquation elaborate_equation(const EquationDecl& e, const FunctionDef& fn, const Environment& env) {
    const Signature& sig = env.signature;
    if (!e.lhs.is_app() || e.lhs.name != fn.name || e.lhs.args.size() != fn.params.size()) {
        fail(ErrorCode::MalformedEquation, e.span, "left-hand side must apply " + fn.name + " to every parameter",
             {"", print(e.lhs), "", fn.name, ""});
    }
    DefiningEquation out;
    Context ctx;
    std::set<std::string> seen;
    auto bind = [&](const Term& v, const std::string& sort) {
        if (!v.is_var() || sig.is_global(v.name) || !seen.insert(v.name).second) {
            fail(ErrorCode::MalformedEquation, e.span, "pattern variables must be distinct fresh names",
                 {"", print(v), "", v.name, "a pattern variable"});
        }
        ctx.entries.push_back({v.name, false, Sort(sort), {}});
    };
    for (std::size_t i = 0; i < fn.params.size(); ++i) {
        const Term& a = e.lhs.args[i];
        if (i != fn.decreasing) {
            bind(a, fn.params[i].sort.result());
            out.pattern_args.push_back(a);
            continue;
        }
        auto ctor = sig.constructors.find(a.name);
        if (a.is_num() || ctor == sig.constructors.end() || ctor->second.arg_sorts.size() != a.args.size()) {
            fail(ErrorCode::MalformedEquation, e.span, "expected a constructor pattern, got " + print(a),
                 {"", print(a), "", a.name, "a constructor pattern"});
        }
        for (std::size_t k = 0; k < a.args.size(); ++k) bind(a.args[k], ctor->second.arg_sorts[k]);
        out.pattern_args.push_back(Term::app(a.name, a.args));
    }
    out.rhs = resolve(e.rhs, ctx, env, e.span);
    Sort rs = sort_of(out.rhs, ctx, env, e.span);
    if (!(rs == Sort(fn.result_sort))) {
        fail(ErrorCode::SortMismatch, e.span, "right-hand side has sort " + print(rs),
             {"", print(out.rhs), print(rs), "", fn.result_sort});
    }
    return out;
}

void add_type(const std::string& name, const std::vector<Constructor>& ctors, bool record, Environment& env) {
    InductiveType ty{name, {}, record};
    for (const auto& c : ctors) {
        ty.constructors.push_back(c.name);
        env.signature.constructors[c.name] = c;
    }
    env.signature.types[name] = std::move(ty);
}

}  // namespace

void elaborate_declaration(const Declaration& d, Environment& env) {
    try {
        switch (d.kind) {
            case Declaration::Kind::Require:
            case Declaration::Kind::Theorem:
                return;
            case Declaration::Kind::Variable:
                for (const auto& b : d.binders) {
                    ensure_fresh(b.name, env, d.span);
                    check_sort(b.sort, env.globals, env, d.span);
                    env.globals.entries.push_back({b.name, false, b.sort, {}});
                }
                return;
            case Declaration::Kind::Inductive: {
                ensure_fresh(d.name, env, d.span);
                env.signature.types[d.name] = {d.name, {}, false};  // allow recursive argument sorts
                std::vector<Constructor> ctors;
                for (const auto& c : d.constructors) {
                    ensure_fresh(c.name, env, c.span);
                    for (const auto& other : ctors) {
                        if (other.name == c.name) fail(ErrorCode::DuplicateName, c.span, c.name + " is declared twice");
                    }
                    if (c.sort.result() != d.name) {
                        fail(ErrorCode::SortMismatch, c.span, "constructor " + c.name + " must build " + d.name,
                             {"", print(c.sort), "", c.name, d.name});
                    }
                    Constructor k{c.name, d.name, {}};
                    for (std::size_t i = 0; i + 1 < c.sort.parts.size(); ++i) {
                        if (!env.signature.is_base_sort(c.sort.parts[i])) {
                            env.signature.types.erase(d.name);
                            fail(ErrorCode::UnresolvedName, c.span, "unknown sort " + c.sort.parts[i],
                                 {"", "", "", c.sort.parts[i], "an inductive type"});
                        }
                        k.arg_sorts.push_back(c.sort.parts[i]);
                    }
                    ctors.push_back(std::move(k));
                }
                add_type(d.name, ctors, false, env);
                return;
            }
            case Declaration::Kind::Record: {
                ensure_fresh(d.name, env, d.span);
                ensure_fresh(d.record_constructor, env, d.span);
                Constructor k{d.record_constructor, d.name, {}};
                for (const auto& f : d.fields) {
                    if (!env.signature.is_base_sort(f.sort)) {
                        fail(ErrorCode::UnresolvedName, d.span, "unknown sort " + f.sort,
                             {"", "", "", f.sort, "an inductive type"});
                    }
                    k.arg_sorts.push_back(f.sort);
                }
                add_type(d.name, {k}, true, env);
                // Projections behave like one-equation fixpoints on the record.
                std::vector<Term> vars;
                for (std::size_t i = 0; i < d.fields.size(); ++i) vars.push_back(Term::var("x" + std::to_string(i)));
                for (std::size_t i = 0; i < d.fields.size(); ++i) {
                    ensure_fresh(d.fields[i].name, env, d.span);
                    FunctionDef fn;
                    fn.kind = FunctionDef::Kind::Fixpoint;
                    fn.name = d.fields[i].name;
                    fn.params = {{"r", Sort(d.name)}};
                    fn.result_sort = d.fields[i].sort;
                    fn.equations = {{{Term::app(d.record_constructor, vars)}, vars[i]}};
                    env.signature.functions[fn.name] = std::move(fn);
                }
                return;
            }
            case Declaration::Kind::Definition: {
                ensure_fresh(d.name, env, d.span);
                Context ctx = params_context(d.binders);
                for (const auto& b : d.binders) check_sort(b.sort, ctx, env, d.span);
                FunctionDef fn;
                fn.kind = FunctionDef::Kind::Definition;
                fn.name = d.name;
                fn.params = d.binders;
                fn.result_sort = d.result_sort;
                fn.body = resolve(d.body, ctx, env, d.span);
                expect_sort(fn.body, sort_of(fn.body, ctx, env, d.span), Sort(d.result_sort), d.span);
                env.signature.functions[d.name] = std::move(fn);
                return;
            }
            case Declaration::Kind::Fixpoint: {
                ensure_fresh(d.name, env, d.span);
                FunctionDef fn;
                fn.kind = FunctionDef::Kind::Fixpoint;
                fn.name = d.name;
                fn.params = d.binders;
                fn.result_sort = d.result_sort;
                for (const auto& b : d.binders) {
                    if (b.sort.is_arrow() || !env.signature.is_base_sort(b.sort.result())) {
                        fail(ErrorCode::SortMismatch, d.span, "parameters of a fixpoint must have inductive sorts",
                             {"", b.name, print(b.sort), b.name, "an inductive type"});
                    }
                }
                fn.decreasing = decreasing_position(d, env.signature);
                env.signature.functions[d.name] = fn;  // visible to the right-hand sides
                try {
                    for (const auto& e : d.equations) fn.equations.push_back(elaborate_equation(e, fn, env));
                    guard_check(fn, env.signature);
                } catch (...) {
                    env.signature.functions.erase(d.name);
                    throw;
                }
                const auto& order = env.signature.types.at(fn.params[fn.decreasing].sort.result()).constructors;
                std::stable_sort(fn.equations.begin(), fn.equations.end(), [&](const auto& a, const auto& b) {
                    auto pos = [&](const DefiningEquation& e) {
                        return std::find(order.begin(), order.end(), e.pattern_args[fn.decreasing].name) - order.begin();
                    };
                    return pos(a) < pos(b);
                });
                env.signature.functions[d.name] = std::move(fn);
                return;
            }
            case Declaration::Kind::Axiom: {
                ensure_fresh(d.name, env, d.span);
                TheoremRecord rec;
                rec.name = d.name;
                rec.statement = resolve(d.statement, env.globals, env, d.span);
                rec.status = TheoremRecord::Status::Axiomatized;
                env.theorems[d.name] = std::move(rec);
                return;
            }
        }
    } catch (Error& e) {
        if (!e.span().valid()) e.set_span(d.span);
        throw;
    }
}

}  // namespace fpf
