#include <algorithm>
#include <array>

#include "fpf/syntax.hpp"

namespace fpf {

Term Term::var(std::string n) {
    Term t;
    t.kind = Kind::Var;
    t.name = std::move(n);
    return t;
}

Term Term::app(std::string f, std::vector<Term> as) {
    Term t;
    t.kind = Kind::App;
    t.name = std::move(f);
    t.args = std::move(as);
    return t;
}

Term Term::num(std::uint64_t k) {
    if (k == 0) return app(std::string(kZero));
    Term t;
    t.kind = Kind::Num;
    t.value = k;
    return t;
}

bool operator==(const Term& a, const Term& b) {
    if (a.kind == Term::Kind::Num && b.kind == Term::Kind::Num) return a.value == b.value;
    if (a.kind == Term::Kind::Num || b.kind == Term::Kind::Num) {
        const Term& n = a.is_num() ? a : b;
        const Term& o = a.is_num() ? b : a;
        if (!o.is_app() || o.name != kSuc || o.args.size() != 1) return false;
        return Term::num(n.value - 1) == o.args[0];
    }
    return a.kind == b.kind && a.name == b.name && a.args == b.args;
}

Term desugar_numerals(const Term& t) {
    if (t.is_num()) {
        Term r = Term::app(std::string(kZero));
        for (std::uint64_t i = 0; i < t.value; ++i) r = Term::app(std::string(kSuc), {std::move(r)});
        return r;
    }
    Term r = t;
    for (auto& a : r.args) a = desugar_numerals(a);
    return r;
}

Formula Formula::atom(std::string p, std::vector<Term> args) {
    Formula f;
    f.kind = Kind::Atom;
    f.name = std::move(p);
    f.terms = std::move(args);
    return f;
}

Formula Formula::eq(Term l, Term r) {
    Formula f;
    f.kind = Kind::Eq;
    f.terms = {std::move(l), std::move(r)};
    return f;
}

Formula Formula::neq(Term l, Term r) { return negation(eq(std::move(l), std::move(r))); }

Formula Formula::falsity() { return Formula{}; }

Formula Formula::negation(Formula a) {
    Formula f;
    f.kind = Kind::Not;
    f.subs = {std::move(a)};
    return f;
}

namespace {
Formula binary(Formula::Kind k, Formula a, Formula b) {
    Formula f;
    f.kind = k;
    f.subs = {std::move(a), std::move(b)};
    return f;
}

Formula quantifier(Formula::Kind k, std::string v, Sort s, Formula body) {
    Formula f;
    f.kind = k;
    f.name = std::move(v);
    f.sort = std::move(s);
    f.subs = {std::move(body)};
    return f;
}
}  // namespace

Formula Formula::conj(Formula a, Formula b) { return binary(Kind::And, std::move(a), std::move(b)); }
Formula Formula::disj(Formula a, Formula b) { return binary(Kind::Or, std::move(a), std::move(b)); }
Formula Formula::imp(Formula a, Formula b) { return binary(Kind::Imp, std::move(a), std::move(b)); }
Formula Formula::forall(std::string v, Sort s, Formula body) {
    return quantifier(Kind::Forall, std::move(v), std::move(s), std::move(body));
}
Formula Formula::exists(std::string v, Sort s, Formula body) {
    return quantifier(Kind::Exists, std::move(v), std::move(s), std::move(body));
}

// ---------------------------------------------------------------------------
// alpha equivalence
// ---------------------------------------------------------------------------

namespace {

using Env = std::vector<std::pair<std::string, std::string>>;

int bound_index(const Env& env, const std::string& n, bool left) {
    for (int i = static_cast<int>(env.size()) - 1; i >= 0; --i) {
        if ((left ? env[i].first : env[i].second) == n) return i;
    }
    return -1;
}

bool same_name(const Env& env, const std::string& a, const std::string& b) {
    int ia = bound_index(env, a, true);
    int ib = bound_index(env, b, false);
    if (ia < 0 && ib < 0) return a == b;
    return ia == ib;
}

bool alpha_term(const Env& env, const Term& a, const Term& b) {
    if (a.is_num() || b.is_num()) {
        if (a.is_num() && b.is_num()) return a.value == b.value;
        return alpha_term(env, desugar_numerals(a), desugar_numerals(b));
    }
    if (a.kind != b.kind || a.args.size() != b.args.size()) return false;
    if (!same_name(env, a.name, b.name)) return false;
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (!alpha_term(env, a.args[i], b.args[i])) return false;
    }
    return true;
}

bool alpha_sort(const Env& env, const Sort& a, const Sort& b) {
    if (a.parts.size() != b.parts.size()) return false;
    for (std::size_t i = 0; i < a.parts.size(); ++i) {
        if (!same_name(env, a.parts[i], b.parts[i])) return false;
    }
    return true;
}

bool alpha_formula(Env& env, const Formula& a, const Formula& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case Formula::Kind::False:
            return true;
        case Formula::Kind::Atom:
            if (!same_name(env, a.name, b.name) || a.terms.size() != b.terms.size()) return false;
            [[fallthrough]];
        case Formula::Kind::Eq:
            for (std::size_t i = 0; i < a.terms.size(); ++i) {
                if (!alpha_term(env, a.terms[i], b.terms[i])) return false;
            }
            return true;
        case Formula::Kind::Not:
        case Formula::Kind::And:
        case Formula::Kind::Or:
        case Formula::Kind::Imp:
            for (std::size_t i = 0; i < a.subs.size(); ++i) {
                if (!alpha_formula(env, a.subs[i], b.subs[i])) return false;
            }
            return true;
        case Formula::Kind::Forall:
        case Formula::Kind::Exists: {
            if (!alpha_sort(env, a.sort, b.sort)) return false;
            env.emplace_back(a.name, b.name);
            bool r = alpha_formula(env, a.body(), b.body());
            env.pop_back();
            return r;
        }
    }
    return false;
}

}  // namespace

bool alpha_equal(const Formula& a, const Formula& b) {
    Env env;
    return alpha_formula(env, a, b);
}

// ---------------------------------------------------------------------------
// tactic names
// ---------------------------------------------------------------------------

namespace {
constexpr std::array<std::pair<TacticKind, std::string_view>, 22> kTacticNames{{
    {TacticKind::ProveImp, "prove_imp"},
    {TacticKind::ProveAll, "prove_all"},
    {TacticKind::ProveNot, "prove_not"},
    {TacticKind::ProveAnd, "prove_and"},
    {TacticKind::ProveOrLeft, "prove_or_left"},
    {TacticKind::ProveOrRight, "prove_or_right"},
    {TacticKind::ProveExists, "prove_exists"},
    {TacticKind::UseAnd, "use_and"},
    {TacticKind::UseOr, "use_or"},
    {TacticKind::UseExists, "use_exists"},
    {TacticKind::UseAll, "use_all"},
    {TacticKind::UseImp, "use_imp"},
    {TacticKind::UseFalse, "use_false"},
    {TacticKind::UseNot, "use_not"},
    {TacticKind::UseTheorem, "use_theorem"},
    {TacticKind::Rewrite, "rewrite"},
    {TacticKind::Unfold, "unfold"},
    {TacticKind::Case, "case"},
    {TacticKind::Induction, "induction"},
    {TacticKind::Assumption, "assumption"},
    {TacticKind::Reflexivity, "reflexivity"},
    {TacticKind::Bullet, "bullet"},
}};
}  // namespace

std::string_view tactic_name(TacticKind k) {
    for (const auto& [kind, name] : kTacticNames) {
        if (kind == k) return name;
    }
    return "?";
}

std::optional<TacticKind> tactic_from_name(std::string_view name) {
    for (const auto& [kind, n] : kTacticNames) {
        if (n == name && kind != TacticKind::Bullet) return kind;
    }
    return std::nullopt;
}

const std::vector<TacticKind>& all_tactic_kinds() {
    static const std::vector<TacticKind> kinds = [] {
        std::vector<TacticKind> ks;
        for (const auto& [kind, name] : kTacticNames) {
            if (kind != TacticKind::Bullet) ks.push_back(kind);
        }
        return ks;
    }();
    return kinds;
}

const std::string& TacticLine::name_arg(std::size_t i) const {
    if (i >= args.size() || !args[i].is_var()) {
        throw Error(ErrorCode::WrongArgumentCount, span,
                    std::string(tactic_name(kind)) + ": expected a name as argument " + std::to_string(i + 1),
                    {std::string(tactic_name(kind)), "", "", "", "a name"});
    }
    return args[i].name;
}

std::size_t ProofScript::theorem_count() const {
    return static_cast<std::size_t>(std::count_if(declarations.begin(), declarations.end(), [](const auto& d) {
        return d.kind == Declaration::Kind::Theorem;
    }));
}

// ---------------------------------------------------------------------------
// error codes
// ---------------------------------------------------------------------------

std::string_view code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::LexError: return "LEX_ERROR";
        case ErrorCode::ParseError: return "PARSE_ERROR";
        case ErrorCode::UnresolvedName: return "UNRESOLVED_NAME";
        case ErrorCode::DuplicateName: return "DUPLICATE_NAME";
        case ErrorCode::ScopeError: return "SCOPE_ERROR";
        case ErrorCode::SortMismatch: return "SORT_MISMATCH";
        case ErrorCode::NonStructuralRecursion: return "NON_STRUCTURAL_RECURSION";
        case ErrorCode::NonExhaustiveEquations: return "NON_EXHAUSTIVE_EQUATIONS";
        case ErrorCode::MalformedEquation: return "MALFORMED_EQUATION";
        case ErrorCode::GoalNotImplication: return "GOAL_NOT_IMPLICATION";
        case ErrorCode::GoalNotUniversal: return "GOAL_NOT_UNIVERSAL";
        case ErrorCode::GoalNotNegation: return "GOAL_NOT_NEGATION";
        case ErrorCode::GoalNotConjunction: return "GOAL_NOT_CONJUNCTION";
        case ErrorCode::GoalNotDisjunction: return "GOAL_NOT_DISJUNCTION";
        case ErrorCode::GoalNotExistential: return "GOAL_NOT_EXISTENTIAL";
        case ErrorCode::GoalNotEquation: return "GOAL_NOT_EQUATION";
        case ErrorCode::HypNotConjunction: return "HYP_NOT_CONJUNCTION";
        case ErrorCode::HypNotDisjunction: return "HYP_NOT_DISJUNCTION";
        case ErrorCode::HypNotExistential: return "HYP_NOT_EXISTENTIAL";
        case ErrorCode::HypNotUniversal: return "HYP_NOT_UNIVERSAL";
        case ErrorCode::HypNotImplication: return "HYP_NOT_IMPLICATION";
        case ErrorCode::HypNotFalse: return "HYP_NOT_FALSE";
        case ErrorCode::HypNotNegation: return "HYP_NOT_NEGATION";
        case ErrorCode::NotAnEquation: return "NOT_AN_EQUATION";
        case ErrorCode::PremiseMismatch: return "PREMISE_MISMATCH";
        case ErrorCode::UnknownName: return "UNKNOWN_NAME";
        case ErrorCode::NameCollision: return "NAME_COLLISION";
        case ErrorCode::WrongArgumentCount: return "WRONG_ARGUMENT_COUNT";
        case ErrorCode::NotInductive: return "NOT_INDUCTIVE";
        case ErrorCode::HypDependsOnVariable: return "HYP_DEPENDS_ON_VARIABLE";
        case ErrorCode::NotAFunction: return "NOT_A_FUNCTION";
        case ErrorCode::NoMatchingAssumption: return "NO_MATCHING_ASSUMPTION";
        case ErrorCode::NotReflexive: return "NOT_REFLEXIVE";
        case ErrorCode::RewriteRedexNotFound: return "REWRITE_REDEX_NOT_FOUND";
        case ErrorCode::UnfoldNotApplicable: return "UNFOLD_NOT_APPLICABLE";
        case ErrorCode::BulletWrongMarker: return "BULLET_WRONG_MARKER";
        case ErrorCode::BulletUnfinished: return "BULLET_UNFINISHED";
        case ErrorCode::BulletExpected: return "BULLET_EXPECTED";
        case ErrorCode::NoMoreSubgoals: return "NO_MORE_SUBGOALS";
        case ErrorCode::NoGoals: return "NO_GOALS";
        case ErrorCode::IncompleteProof: return "INCOMPLETE_PROOF";
        case ErrorCode::AtBeginning: return "AT_BEGINNING";
        case ErrorCode::AtEnd: return "AT_END";
        case ErrorCode::ProtocolError: return "PROTOCOL_ERROR";
        case ErrorCode::IoError: return "IO_ERROR";
    }
    return "UNKNOWN";
}

ErrorCategory category(ErrorCode code) {
    int v = static_cast<int>(code);
    if (v < 200) return ErrorCategory::Syntax;
    if (v >= 700) return ErrorCategory::Session;
    return ErrorCategory::Proof;
}

}  // namespace fpf
