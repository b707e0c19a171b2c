#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fpf/error.hpp"

namespace fpf {

// ---------------------------------------------------------------------------
// Terms
// ---------------------------------------------------------------------------

/// First-order term. `App` covers both constructor and function applications
/// (the signature tells them apart) and also nullary constants such as `0` or
/// `nil`. `Num` is a numeral k >= 1 and is equal to `Suc` applied k times to
/// `0`; operator== honours that identity.
struct Term {
    enum class Kind { Var, App, Num };

    Kind kind = Kind::Var;
    std::string name;
    std::vector<Term> args;
    std::uint64_t value = 0;

    static Term var(std::string n);
    static Term app(std::string f, std::vector<Term> as = {});
    static Term num(std::uint64_t k);  // k == 0 yields the constant `0`

    bool is_var() const { return kind == Kind::Var; }
    bool is_app() const { return kind == Kind::App; }
    bool is_num() const { return kind == Kind::Num; }

    friend bool operator==(const Term& a, const Term& b);
};

inline constexpr std::string_view kZero = "0";
inline constexpr std::string_view kSuc = "Suc";
inline constexpr std::string_view kNatSort = "nat";

/// Expands every numeral into its `Suc`/`0` form.
Term desugar_numerals(const Term& t);

// ---------------------------------------------------------------------------
// Sorts
// ---------------------------------------------------------------------------

/// `nat`, `Type`, `Prop`, `A -> Prop`, `nat -> nat`, ... stored as the list of
/// arrow components; the last one is the result.
struct Sort {
    std::vector<std::string> parts;

    Sort() = default;
    explicit Sort(std::string base) : parts{std::move(base)} {}
    explicit Sort(std::vector<std::string> ps) : parts(std::move(ps)) {}

    bool is_arrow() const { return parts.size() > 1; }
    const std::string& result() const { return parts.back(); }
    std::size_t arity() const { return parts.empty() ? 0 : parts.size() - 1; }
    bool is_type() const { return parts.size() == 1 && parts[0] == "Type"; }
    bool is_prop() const { return parts.size() == 1 && parts[0] == "Prop"; }
    bool is_predicate() const { return is_arrow() && result() == "Prop"; }

    friend bool operator==(const Sort&, const Sort&) = default;
};

// ---------------------------------------------------------------------------
// Formulas
// ---------------------------------------------------------------------------

struct Formula {
    enum class Kind { Atom, Eq, False, Not, And, Or, Imp, Forall, Exists };

    Kind kind = Kind::False;
    std::string name;          // predicate of an atom, bound variable of a quantifier
    Sort sort;                 // quantifier sort
    std::vector<Term> terms;   // atom arguments, or {lhs, rhs} of an equation
    std::vector<Formula> subs; // operands / quantifier body

    static Formula atom(std::string p, std::vector<Term> args = {});
    static Formula eq(Term l, Term r);
    static Formula neq(Term l, Term r);
    static Formula falsity();
    static Formula negation(Formula a);
    static Formula conj(Formula a, Formula b);
    static Formula disj(Formula a, Formula b);
    static Formula imp(Formula a, Formula b);
    static Formula forall(std::string v, Sort s, Formula body);
    static Formula exists(std::string v, Sort s, Formula body);

    bool is(Kind k) const { return kind == k; }
    bool is_quantifier() const { return kind == Kind::Forall || kind == Kind::Exists; }
    bool is_binary() const { return kind == Kind::And || kind == Kind::Or || kind == Kind::Imp; }
    /// `¬(l = r)`, printed as `l ≠ r`.
    bool is_neq() const { return kind == Kind::Not && subs[0].kind == Kind::Eq; }

    const Formula& left() const { return subs.at(0); }
    const Formula& right() const { return subs.at(1); }
    const Formula& body() const { return subs.at(0); }
    const Term& lhs() const { return terms.at(0); }
    const Term& rhs() const { return terms.at(1); }
};

/// Structural equality modulo renaming of bound variables (numeral aware).
bool alpha_equal(const Formula& a, const Formula& b);

// ---------------------------------------------------------------------------
// Tokens
// ---------------------------------------------------------------------------

enum class TokenKind { Ident, Number, Op, Punct };

struct Token {
    TokenKind kind;
    std::string text;  // canonical spelling; ASCII aliases are mapped to Unicode
    Span span;

    friend bool operator==(const Token&, const Token&) = default;
};

/// Splits source text into tokens. Comments `(* ... *)` nest and are dropped.
/// Throws Error(LexError) pointing at the first unrecognised character.
std::vector<Token> tokenize(std::string_view text);

// ---------------------------------------------------------------------------
// Tactic lines and declarations
// ---------------------------------------------------------------------------

enum class TacticKind {
    ProveImp,
    ProveAll,
    ProveNot,
    ProveAnd,
    ProveOrLeft,
    ProveOrRight,
    ProveExists,
    UseAnd,
    UseOr,
    UseExists,
    UseAll,
    UseImp,
    UseFalse,
    UseNot,
    UseTheorem,
    Rewrite,
    Unfold,
    Case,
    Induction,
    Assumption,
    Reflexivity,
    Bullet,
};

std::string_view tactic_name(TacticKind k);
std::optional<TacticKind> tactic_from_name(std::string_view name);
/// Every kind except Bullet, in declaration order.
const std::vector<TacticKind>& all_tactic_kinds();

/// One tactic sentence. Arguments keep their source order; names are stored as
/// variable terms. For `rewrite` and `unfold` the optional `in H` target lives in
/// `target`, and `<-` sets `reverse`.
struct TacticLine {
    TacticKind kind = TacticKind::Assumption;
    std::vector<Term> args;
    bool reverse = false;
    std::optional<std::string> target;
    std::optional<char> bullet;
    Span span;          // span of the tactic keyword (or the bullet for Bullet events)
    Span bullet_span;
    int source_line = 0;

    /// Name argument at position i. Throws WrongArgumentCount if absent or not a name.
    const std::string& name_arg(std::size_t i) const;
};

struct Binder {
    std::string name;
    Sort sort;
};

struct ConstructorDecl {
    std::string name;
    Sort sort;  // e.g. nat -> nat for Suc; the result is the declared type
    Span span;
};

struct FieldDecl {
    std::string name;
    std::string sort;
};

struct EquationDecl {
    Term lhs;
    Term rhs;
    Span span;
};

struct Declaration {
    enum class Kind { Require, Variable, Inductive, Record, Definition, Fixpoint, Axiom, Theorem };

    Kind kind = Kind::Variable;
    std::string name;
    Span span;

    std::vector<Binder> binders;              // Variable(s), Definition/Fixpoint parameters
    std::string result_sort;                  // Definition/Fixpoint
    std::optional<std::string> decreasing;    // Fixpoint `on x`
    std::vector<ConstructorDecl> constructors;// Inductive
    std::string record_constructor;           // Record
    std::vector<FieldDecl> fields;            // Record
    Term body;                                // Definition
    std::vector<EquationDecl> equations;      // Fixpoint
    Formula statement;                        // Axiom/Theorem
    std::vector<TacticLine> proof;            // Theorem
    Span qed_span;
};

struct ProofScript {
    std::vector<Declaration> declarations;
    std::vector<std::string> imports;
    std::string source;

    std::size_t theorem_count() const;
};

/// Parses a complete `.fpf` script. Names inside terms are not yet resolved
/// against a signature (identifiers are kept as variables); resolution happens
/// when the script is elaborated against an environment.
ProofScript parse_script(std::string_view text);

/// Parse helpers for single phrases (used by tests, the session and bindings).
Formula parse_formula(std::string_view text);
Term parse_term(std::string_view text);

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

enum class Notation { Unicode, Ascii };

std::string print(const Term& t, Notation n = Notation::Unicode);
std::string print(const Formula& f, Notation n = Notation::Unicode);
std::string print(const Sort& s, Notation n = Notation::Unicode);
/// Reconstructs the tactic sentence, including the bullet and final dot.
std::string print(const TacticLine& line, Notation n = Notation::Unicode);

}  // namespace fpf
