#include <doctest.h>

#include "support.hpp"

using namespace fpf;

namespace {

struct SyntaxGen {
    std::mt19937 rng;
    explicit SyntaxGen(unsigned seed) : rng(seed) {}
    int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

    Term term(int depth) {
        static const char* vars[] = {"x", "y", "n", "m"};
        if (depth == 0 || pick(3) == 0) {
            if (pick(2)) return Term::var(vars[pick(4)]);
            return Term::num(static_cast<std::uint64_t>(pick(12)));
        }
        switch (pick(5)) {
            case 0: return Term::app("Suc", {term(depth - 1)});
            case 1: return Term::app("pred", {term(depth - 1)});
            case 2: return Term::app("add", {term(depth - 1), term(depth - 1)});
            case 3: return Term::app("sub", {term(depth - 1), term(depth - 1)});
            default: return Term::app("f", {term(depth - 1), term(depth - 1)});
        }
    }

    Formula formula(int depth) {
        if (depth == 0) {
            switch (pick(4)) {
                case 0: return Formula::atom("A");
                case 1: return Formula::atom("P", {term(1)});
                case 2: return Formula::eq(term(2), term(2));
                default: return Formula::falsity();
            }
        }
        switch (pick(8)) {
            case 0: return Formula::negation(formula(depth - 1));
            case 1: return Formula::conj(formula(depth - 1), formula(depth - 1));
            case 2: return Formula::disj(formula(depth - 1), formula(depth - 1));
            case 3: return Formula::imp(formula(depth - 1), formula(depth - 1));
            case 4: return Formula::forall(pick(2) ? "x" : "z", Sort("nat"), formula(depth - 1));
            case 5: return Formula::exists("w", Sort("A"), formula(depth - 1));
            case 6: return Formula::neq(term(2), term(1));
            default: return formula(0);
        }
    }
};

}  // namespace

TEST_SUITE("syntax") {
    TEST_CASE("lexer maps ascii aliases") {
        auto ts = tokenize("A /\\ B -> ~C \\/ n -. 1 <> m +. 2");
        std::vector<std::string> texts;
        for (const auto& t : ts) texts.push_back(t.text);
        CHECK(texts == std::vector<std::string>{"A", "∧", "B", "→", "¬", "C", "∨", "n", "⊖", "1", "≠", "m", "⊕", "2"});
    }

    TEST_CASE("nested comments are dropped") {
        auto ts = tokenize("a (* x (* y *) z *) b");
        REQUIRE(ts.size() == 2);
        CHECK(ts[1].text == "b");
        CHECK(ts[1].span == Span{1, 21});
    }

    TEST_CASE("lex error points at the character") {
        try {
            tokenize("A ∧\n  B # C");
            FAIL("no error");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::LexError);
            CHECK(e.span() == Span{2, 5});
        }
    }

    TEST_CASE("precedence and printing") {
        CHECK(print(parse_formula("A ∧ B → B ∧ A")) == "A ∧ B → B ∧ A");
        CHECK(print(parse_formula("(A → B) → C")) == "(A → B) → C");
        CHECK(print(parse_formula("A → (B → C)")) == "A → B → C");
        CHECK(print(parse_formula("¬(A ∨ B)")) == "¬(A ∨ B)");
        CHECK(print(parse_formula("n ⊖ m ≠ 0 ∨ n = m")) == "n ⊖ m ≠ 0 ∨ n = m");
        CHECK(print(parse_formula("(∃ a : A, P a) ∨ (∃ a : A, Q a)")) == "(∃ a : A, P a) ∨ (∃ a : A, Q a)");
        CHECK(print(parse_formula("A ∧ B -> C"), Notation::Ascii) == "A /\\ B -> C");
    }

    TEST_CASE("numerals equal their Suc form") {
        CHECK(Term::num(2) == Term::app("Suc", {Term::app("Suc", {Term::num(0)})}));
        CHECK(print(desugar_numerals(Term::num(2))) == "Suc (Suc 0)");
    }

    TEST_CASE("alpha equality ignores bound names") {
        CHECK(alpha_equal(parse_formula("∀ x : nat, x = x"), parse_formula("∀ y : nat, y = y")));
        CHECK_FALSE(alpha_equal(parse_formula("∀ x : nat, x = z"), parse_formula("∀ z : nat, z = z")));
    }

    TEST_CASE("random formulas round-trip through the printer") {
        SyntaxGen g(7);
        for (int i = 0; i < 500; ++i) {
            Formula f = g.formula(1 + i % 4);
            for (auto n : {Notation::Unicode, Notation::Ascii}) {
                const std::string s = print(f, n);
                Formula back = parse_formula(s);
                INFO(s);
                CHECK(alpha_equal(back, f));
                CHECK(print(back, n) == s);
            }
        }
    }

    TEST_CASE("script structure") {
        ProofScript s = parse_script(test::slurp(test::corpus_path("and_comm.fpf")));
        REQUIRE(s.declarations.size() == 2);
        const Declaration& th = s.declarations[1];
        CHECK(th.kind == Declaration::Kind::Theorem);
        CHECK(th.name == "and_comm");
        CHECK(th.span == Span{3, 1});
        REQUIRE(th.proof.size() == 5);
        CHECK(th.proof[3].bullet == '+');
        CHECK(th.proof[3].kind == TacticKind::Assumption);
        CHECK(th.proof[2].span == Span{7, 3});
        CHECK(th.qed_span.line == 10);
        CHECK(s.theorem_count() == 1);
    }

    TEST_CASE("tactic names") {
        for (auto k : all_tactic_kinds()) CHECK(tactic_from_name(tactic_name(k)) == k);
        CHECK_FALSE(tactic_from_name("intros").has_value());
    }

    TEST_CASE("parse errors carry positions") {
        try {
            parse_script("Theorem t : A ∧ .\nProof.\nQed.");
            FAIL("no error");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::ParseError);
            CHECK(e.span().line == 1);
        }
        CHECK_THROWS_AS(parse_script("Theorem t : A.\nProof.\n  prove_imp H\nQed."), Error);
    }
}
