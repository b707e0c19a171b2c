#include <algorithm>

#include "internal.hpp"

namespace fpf {

namespace detail {

Term substitute_all(const Term& t, const Bindings& b) {
    if (t.is_var()) {
        auto it = b.find(t.name);
        return it == b.end() ? t : it->second;
    }
    Term r = t;
    for (auto& a : r.args) a = substitute_all(a, b);
    return r;
}

std::optional<Term> constructor_view(const Term& t, const Signature& sig) {
    if (t.is_num()) return Term::app(std::string(kSuc), {Term::num(t.value - 1)});
    if (t.is_app() && sig.constructors.count(t.name)) return t;
    return std::nullopt;
}

namespace {

// Finds the defining equation for a constructor-headed decreasing argument and
// returns its instantiated right-hand side.
std::optional<Term> iota_step(const FunctionDef& fn, const std::vector<Term>& args, const Signature& sig) {
    if (args.size() != fn.params.size()) return std::nullopt;
    auto head = constructor_view(args[fn.decreasing], sig);
    if (!head) return std::nullopt;
    for (const auto& eq : fn.equations) {
        const Term& pat = eq.pattern_args[fn.decreasing];
        if (pat.name != head->name || pat.args.size() != head->args.size()) continue;
        Bindings b;
        for (std::size_t i = 0; i < args.size(); ++i) {
            if (i == fn.decreasing) continue;
            b[eq.pattern_args[i].name] = args[i];
        }
        for (std::size_t i = 0; i < pat.args.size(); ++i) b[pat.args[i].name] = head->args[i];
        return substitute_all(eq.rhs, b);
    }
    return std::nullopt;
}

Term delta_step(const FunctionDef& fn, const std::vector<Term>& args) {
    Bindings b;
    for (std::size_t i = 0; i < fn.params.size() && i < args.size(); ++i) b[fn.params[i].name] = args[i];
    return substitute_all(fn.body, b);
}

}  // namespace

std::optional<Term> unfold_once(const Term& t, const FunctionDef& fn, const Signature& sig) {
    if (!t.is_app()) return std::nullopt;
    if (t.name == fn.name) {
        if (fn.kind == FunctionDef::Kind::Definition) return delta_step(fn, t.args);
        if (auto r = iota_step(fn, t.args, sig)) return r;
    }
    bool changed = false;
    Term r = t;
    for (auto& a : r.args) {
        if (auto u = unfold_once(a, fn, sig)) {
            a = std::move(*u);
            changed = true;
        }
    }
    if (!changed) return std::nullopt;
    return r;
}

std::optional<Formula> unfold_once(const Formula& f, const FunctionDef& fn, const Signature& sig) {
    bool changed = false;
    Formula r = f;
    for (auto& t : r.terms) {
        if (auto u = unfold_once(t, fn, sig)) {
            t = std::move(*u);
            changed = true;
        }
    }
    for (auto& s : r.subs) {
        if (auto u = unfold_once(s, fn, sig)) {
            s = std::move(*u);
            changed = true;
        }
    }
    if (!changed) return std::nullopt;
    return r;
}

}  // namespace detail

Term normalize(const Term& t, const Signature& sig) {
    if (t.is_num()) return desugar_numerals(t);
    if (t.is_var()) return t;
    std::vector<Term> args;
    args.reserve(t.args.size());
    for (const auto& a : t.args) args.push_back(normalize(a, sig));
    auto fn = sig.functions.find(t.name);
    if (fn != sig.functions.end()) {
        const FunctionDef& def = fn->second;
        if (def.kind == FunctionDef::Kind::Definition && args.size() == def.params.size()) {
            return normalize(detail::delta_step(def, args), sig);
        }
        if (def.kind == FunctionDef::Kind::Fixpoint) {
            if (auto r = detail::iota_step(def, args, sig)) return normalize(*r, sig);
        }
    }
    return Term::app(t.name, std::move(args));
}

Formula normalize(const Formula& f, const Signature& sig) {
    Formula r = f;
    for (auto& t : r.terms) t = normalize(t, sig);
    for (auto& s : r.subs) s = normalize(s, sig);
    return r;
}

bool convertible(const Formula& a, const Formula& b, const Signature& sig) {
    return alpha_equal(normalize(a, sig), normalize(b, sig));
}

// ---------------------------------------------------------------------------
// guard check
// ---------------------------------------------------------------------------

namespace {

void check_calls(const Term& t, const FunctionDef& fix, const std::set<std::string>& smaller) {
    if (t.is_app() && t.name == fix.name) {
        const bool ok = t.args.size() == fix.params.size() && t.args[fix.decreasing].is_var() &&
                        smaller.count(t.args[fix.decreasing].name);
        if (!ok) {
            throw Error(ErrorCode::NonStructuralRecursion, {},
                        "recursive call " + print(t) + " is not on a strict subterm of the decreasing argument",
                        {"", print(t), "", fix.name, "a structurally smaller argument"});
        }
    }
    for (const auto& a : t.args) check_calls(a, fix, smaller);
}

}  // namespace

void guard_check(const FunctionDef& fix, const Signature& sig) {
    if (fix.kind != FunctionDef::Kind::Fixpoint) return;
    const std::string& type = fix.params.at(fix.decreasing).sort.result();
    for (const auto& eq : fix.equations) {
        std::set<std::string> smaller;
        const Term& pat = eq.pattern_args.at(fix.decreasing);
        if (pat.is_app()) {
            auto ctor = sig.constructors.find(pat.name);
            if (ctor != sig.constructors.end()) {
                for (std::size_t i = 0; i < pat.args.size() && i < ctor->second.arg_sorts.size(); ++i) {
                    if (ctor->second.arg_sorts[i] == type && pat.args[i].is_var()) smaller.insert(pat.args[i].name);
                }
            }
        }
        check_calls(eq.rhs, fix, smaller);
    }
    auto type_it = sig.types.find(type);
    if (type_it == sig.types.end()) {
        throw Error(ErrorCode::NotInductive, {}, fix.name + ": decreasing argument is not of an inductive type",
                    {"", type, "", fix.name, "an inductive type"});
    }
    std::vector<std::string> seen;
    for (const auto& eq : fix.equations) {
        const Term& pat = eq.pattern_args.at(fix.decreasing);
        if (!pat.is_app() || !sig.constructors.count(pat.name)) {
            throw Error(ErrorCode::MalformedEquation, {},
                        fix.name + ": the decreasing argument of every equation must be a constructor pattern",
                        {"", print(pat), "", fix.name, "a constructor pattern"});
        }
        seen.push_back(pat.name);
    }
    for (const auto& c : type_it->second.constructors) {
        if (std::count(seen.begin(), seen.end(), c) != 1) {
            throw Error(ErrorCode::NonExhaustiveEquations, {},
                        fix.name + ": constructor " + c + " must be covered by exactly one equation",
                        {"", c, "", fix.name, "one equation per constructor"});
        }
    }
    if (seen.size() != type_it->second.constructors.size()) {
        throw Error(ErrorCode::NonExhaustiveEquations, {}, fix.name + ": equations for foreign constructors",
                    {"", "", "", fix.name, "one equation per constructor"});
    }
}

}  // namespace fpf
