#include <set>

#include "fpf/syntax.hpp"

namespace fpf {

namespace {

struct InfixOp {
    std::string_view symbol;
    std::string_view function;
    int level;  // lower binds tighter
    bool right_assoc;
};

constexpr InfixOp kInfix[] = {
    {"⊕", "add", 50, false},
    {"⊖", "sub", 50, false},
    {"++", "app", 60, true},
};

const InfixOp* infix_by_symbol(std::string_view s) {
    for (const auto& op : kInfix) {
        if (op.symbol == s) return &op;
    }
    return nullptr;
}

const std::set<std::string, std::less<>> kReserved = {
    "Require", "Variable", "Variables", "Inductive", "Record", "Definition", "Fixpoint",
    "Axiom",   "Theorem",  "Lemma",     "Proof",     "Qed",    "False",      "in",
    "on",      "Type",     "Prop",
};

class Parser {
public:
    explicit Parser(std::string_view text) : tokens_(tokenize(text)), text_(text) {}

    ProofScript script() {
        ProofScript s;
        s.source = std::string(text_);
        while (!at_end()) {
            Declaration d = declaration();
            if (d.kind == Declaration::Kind::Require) s.imports.push_back(d.name);
            s.declarations.push_back(std::move(d));
        }
        return s;
    }

    Formula formula_only() {
        Formula f = formula();
        expect_end();
        return f;
    }

    Term term_only() {
        Term t = term();
        expect_end();
        return t;
    }

private:
    std::vector<Token> tokens_;
    std::string_view text_;
    std::size_t pos_ = 0;

    // -- token helpers ------------------------------------------------------

    bool at_end() const { return pos_ >= tokens_.size(); }
    const Token* peek(std::size_t ahead = 0) const {
        return pos_ + ahead < tokens_.size() ? &tokens_[pos_ + ahead] : nullptr;
    }
    bool peek_is(std::string_view text, std::size_t ahead = 0) const {
        const Token* t = peek(ahead);
        return t && t->kind != TokenKind::Number && t->text == text;
    }
    bool peek_kind(TokenKind k) const { return peek() && peek()->kind == k; }

    Span error_span() const {
        if (!at_end()) return tokens_[pos_].span;
        if (!tokens_.empty()) return tokens_.back().span;
        return {1, 1};
    }

    [[noreturn]] void fail(const std::string& expected) const {
        std::string found = at_end() ? "end of input" : "'" + tokens_[pos_].text + "'";
        throw Error(ErrorCode::ParseError, error_span(), "expected " + expected + " but found " + found,
                    {"", found, "", "", expected});
    }

    const Token& take() {
        if (at_end()) fail("more input");
        return tokens_[pos_++];
    }

    bool accept(std::string_view text) {
        if (peek_is(text)) {
            ++pos_;
            return true;
        }
        return false;
    }

    const Token& expect(std::string_view text) {
        if (!peek_is(text)) fail("'" + std::string(text) + "'");
        return tokens_[pos_++];
    }

    void expect_end() const {
        if (!at_end()) fail("end of input");
    }

    std::string ident() {
        if (!peek_kind(TokenKind::Ident) || kReserved.count(peek()->text)) fail("an identifier");
        return take().text;
    }

    // -- declarations -------------------------------------------------------

    Declaration declaration() {
        if (!peek_kind(TokenKind::Ident)) fail("a declaration");
        Declaration d;
        d.span = peek()->span;
        const std::string kw = take().text;
        if (kw == "Require") {
            d.kind = Declaration::Kind::Require;
            d.name = ident();
            expect(".");
        } else if (kw == "Variable" || kw == "Variables") {
            d.kind = Declaration::Kind::Variable;
            std::vector<std::string> names;
            do names.push_back(ident());
            while (peek_kind(TokenKind::Ident) && !peek_is(":"));
            expect(":");
            Sort s = sort();
            for (auto& n : names) d.binders.push_back({n, s});
            d.name = d.binders.front().name;
            expect(".");
        } else if (kw == "Inductive") {
            inductive(d);
        } else if (kw == "Record") {
            record(d);
        } else if (kw == "Definition") {
            d.kind = Declaration::Kind::Definition;
            d.name = ident();
            d.binders = binders();
            expect(":");
            d.result_sort = ident_or_sort_name();
            expect(":=");
            d.body = term();
            expect(".");
        } else if (kw == "Fixpoint") {
            fixpoint(d);
        } else if (kw == "Axiom") {
            d.kind = Declaration::Kind::Axiom;
            d.name = ident();
            expect(":");
            d.statement = formula();
            expect(".");
        } else if (kw == "Theorem" || kw == "Lemma") {
            theorem(d);
        } else {
            --pos_;
            fail("a declaration keyword (Require, Variable, Inductive, Record, Definition, Fixpoint, Axiom, Theorem)");
        }
        return d;
    }

    std::string ident_or_sort_name() {
        if (peek_is("Type") || peek_is("Prop")) return take().text;
        return ident();
    }

    Sort sort() {
        std::vector<std::string> parts{ident_or_sort_name()};
        while (accept("→")) parts.push_back(ident_or_sort_name());
        return Sort(std::move(parts));
    }

    std::vector<Binder> binders() {
        std::vector<Binder> out;
        while (accept("(")) {
            std::vector<std::string> names;
            do names.push_back(ident());
            while (!peek_is(":"));
            expect(":");
            Sort s = sort();
            expect(")");
            for (auto& n : names) out.push_back({n, s});
        }
        return out;
    }

    std::string constructor_name() {
        if (peek() && peek()->kind == TokenKind::Number && peek()->text == "0") return take().text;
        return ident();
    }

    void inductive(Declaration& d) {
        d.kind = Declaration::Kind::Inductive;
        d.name = ident();
        expect(":=");
        accept("|");
        do {
            ConstructorDecl c;
            c.span = error_span();
            c.name = constructor_name();
            c.sort = accept(":") ? sort() : Sort(d.name);
            d.constructors.push_back(std::move(c));
        } while (accept("|"));
        expect(".");
    }

    void record(Declaration& d) {
        d.kind = Declaration::Kind::Record;
        d.name = ident();
        expect(":=");
        d.record_constructor = ident();
        expect("{");
        do {
            FieldDecl f;
            f.name = ident();
            expect(":");
            f.sort = ident_or_sort_name();
            d.fields.push_back(std::move(f));
        } while (accept(";"));
        expect("}");
        expect(".");
    }

    void fixpoint(Declaration& d) {
        d.kind = Declaration::Kind::Fixpoint;
        d.name = ident();
        d.binders = binders();
        expect(":");
        d.result_sort = ident_or_sort_name();
        if (accept("on")) d.decreasing = ident();
        expect(":=");
        accept("|");
        do {
            EquationDecl e;
            e.span = error_span();
            e.lhs = term();
            expect("=");
            e.rhs = term();
            d.equations.push_back(std::move(e));
        } while (accept(";") || accept("|"));
        expect(".");
    }

    void theorem(Declaration& d) {
        d.kind = Declaration::Kind::Theorem;
        d.name = ident();
        expect(":");
        d.statement = formula();
        expect(".");
        if (accept("Proof")) expect(".");
        while (!peek_is("Qed")) {
            if (at_end()) fail("'Qed' or a tactic");
            d.proof.push_back(tactic_line());
        }
        d.qed_span = take().span;
        expect(".");
    }

    // -- tactic lines --------------------------------------------------------

    static std::size_t min_args(TacticKind k) {
        switch (k) {
            case TacticKind::ProveImp:
            case TacticKind::ProveAll:
            case TacticKind::ProveNot:
            case TacticKind::ProveExists:
            case TacticKind::UseOr:
            case TacticKind::UseFalse:
            case TacticKind::Rewrite:
            case TacticKind::Unfold:
            case TacticKind::Induction:
                return 1;
            case TacticKind::UseNot:
            case TacticKind::UseTheorem:
            case TacticKind::Case:
                return 2;
            case TacticKind::UseAnd:
            case TacticKind::UseExists:
            case TacticKind::UseAll:
            case TacticKind::UseImp:
                return 3;
            default:
                return 0;
        }
    }

    static bool variadic(TacticKind k) {
        return k == TacticKind::UseTheorem || k == TacticKind::Rewrite || k == TacticKind::Case ||
               k == TacticKind::Induction;
    }

    // Argument positions that must be plain names.
    static bool name_position(TacticKind k, std::size_t i, std::size_t n) {
        switch (k) {
            case TacticKind::ProveExists:
                return false;
            case TacticKind::UseAll:
                return i != 1;
            case TacticKind::UseTheorem:
                return i == 0 || i + 1 == n;
            case TacticKind::Rewrite:
                return i == 0;
            case TacticKind::Case:
                return i >= 1;
            default:
                return true;
        }
    }

    bool atom_start() const {
        const Token* t = peek();
        if (!t) return false;
        if (t->kind == TokenKind::Number) return true;
        if (t->kind == TokenKind::Ident) return !kReserved.count(t->text);
        return t->text == "(";
    }

    TacticLine tactic_line() {
        TacticLine line;
        if (peek_is("+") || peek_is("*") || peek_is("-")) {
            line.bullet_span = peek()->span;
            line.bullet = take().text[0];
        }
        if (!peek_kind(TokenKind::Ident)) fail("a tactic");
        const Token& kw = take();
        auto kind = tactic_from_name(kw.text);
        if (!kind) {
            --pos_;
            fail("a tactic name");
        }
        line.kind = *kind;
        line.span = kw.span;
        line.source_line = line.bullet ? line.bullet_span.line : kw.span.line;
        if (line.kind == TacticKind::Rewrite && accept("←")) line.reverse = true;
        while (atom_start()) line.args.push_back(atom());
        if ((line.kind == TacticKind::Rewrite || line.kind == TacticKind::Unfold) && accept("in")) {
            line.target = ident();
        }
        std::size_t need = min_args(line.kind);
        if (line.args.size() < need || (!variadic(line.kind) && line.args.size() != need)) {
            throw Error(ErrorCode::ParseError, line.span,
                        std::string(tactic_name(line.kind)) + " expects " + std::to_string(need) +
                            (variadic(line.kind) ? " or more" : "") + " argument(s), got " +
                            std::to_string(line.args.size()),
                        {std::string(tactic_name(line.kind)), "", "", "", std::to_string(need) + " argument(s)"});
        }
        for (std::size_t i = 0; i < line.args.size(); ++i) {
            if (name_position(line.kind, i, line.args.size()) && !line.args[i].is_var()) {
                throw Error(ErrorCode::ParseError, line.span,
                            std::string(tactic_name(line.kind)) + ": argument " + std::to_string(i + 1) +
                                " must be a name",
                            {std::string(tactic_name(line.kind)), print(line.args[i]), "", "", "a name"});
            }
        }
        expect(".");
        return line;
    }

    // -- terms ---------------------------------------------------------------

    Term atom() {
        const Token* t = peek();
        if (!t) fail("a term");
        if (t->kind == TokenKind::Number) {
            std::string digits = take().text;
            if (digits.size() > 6) {
                throw Error(ErrorCode::ParseError, t->span, "numeral too large", {"", digits, "", "", "a numeral"});
            }
            return Term::num(std::stoull(digits));
        }
        if (accept("(")) {
            Term inner = term();
            expect(")");
            return inner;
        }
        return Term::var(ident());
    }

    Term application() {
        if (peek_kind(TokenKind::Ident) && !kReserved.count(peek()->text)) {
            std::string head = take().text;
            std::vector<Term> args;
            while (atom_start()) args.push_back(atom());
            if (args.empty()) return Term::var(std::move(head));
            return Term::app(std::move(head), std::move(args));
        }
        return atom();
    }

    Term term(int max_level = 100) {
        Term lhs = application();
        while (peek_kind(TokenKind::Op)) {
            const InfixOp* op = infix_by_symbol(peek()->text);
            if (!op || op->level > max_level) break;
            take();
            Term rhs = term(op->right_assoc ? op->level : op->level - 1);
            lhs = Term::app(std::string(op->function), {std::move(lhs), std::move(rhs)});
        }
        return lhs;
    }

    // -- formulas ------------------------------------------------------------

    bool at_quantifier() const { return peek_is("∀") || peek_is("∃"); }

    Formula formula() {
        if (at_quantifier()) return quantified();
        Formula lhs = disjunction();
        if (accept("→")) return Formula::imp(std::move(lhs), formula());
        return lhs;
    }

    Formula quantified() {
        bool universal = take().text == "∀";
        std::vector<Binder> bs;
        if (peek_is("(")) {
            bs = binders();
        } else {
            std::vector<std::string> names;
            do names.push_back(ident());
            while (!peek_is(":"));
            expect(":");
            Sort s = sort();
            for (auto& n : names) bs.push_back({n, s});
        }
        expect(",");
        Formula body = formula();
        for (auto it = bs.rbegin(); it != bs.rend(); ++it) {
            body = universal ? Formula::forall(it->name, it->sort, std::move(body))
                             : Formula::exists(it->name, it->sort, std::move(body));
        }
        return body;
    }

    Formula disjunction() {
        Formula lhs = conjunction();
        if (accept("∨")) return Formula::disj(std::move(lhs), at_quantifier() ? quantified() : disjunction());
        return lhs;
    }

    Formula conjunction() {
        Formula lhs = unary();
        if (accept("∧")) return Formula::conj(std::move(lhs), at_quantifier() ? quantified() : conjunction());
        return lhs;
    }

    Formula unary() {
        if (accept("¬")) return Formula::negation(at_quantifier() ? quantified() : unary());
        return primary();
    }

    Formula primary() {
        if (accept("False")) return Formula::falsity();
        if (peek_is("(")) {
            std::size_t save = pos_;
            try {
                return term_formula();
            } catch (const Error&) {
                pos_ = save;
            }
            expect("(");
            Formula inner = formula();
            expect(")");
            return inner;
        }
        return term_formula();
    }

    Formula term_formula() {
        Span start = error_span();
        Term t = term();
        if (accept("=")) return Formula::eq(std::move(t), term());
        if (accept("≠")) return Formula::neq(std::move(t), term());
        if (t.is_var()) return Formula::atom(t.name);
        if (t.is_app() && !t.args.empty() && !infix_by_symbol_name(t.name)) {
            return Formula::atom(t.name, std::move(t.args));
        }
        throw Error(ErrorCode::ParseError, start, "expected a formula", {"", print(t), "", "", "a formula"});
    }

    static bool infix_by_symbol_name(std::string_view fn) {
        for (const auto& op : kInfix) {
            if (op.function == fn) return true;
        }
        return false;
    }
};

}  // namespace

ProofScript parse_script(std::string_view text) { return Parser(text).script(); }
Formula parse_formula(std::string_view text) { return Parser(text).formula_only(); }
Term parse_term(std::string_view text) { return Parser(text).term_only(); }

}  // namespace fpf
