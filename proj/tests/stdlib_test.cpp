#include <doctest.h>

#include <cstdlib>

#include "support.hpp"

using namespace fpf;

namespace {

Term as_term(const Value& v) {
    if (v.is_nat) return Term::num(v.nat);
    std::vector<Term> args;
    for (const auto& a : v.args) args.push_back(as_term(a));
    return Term::app(v.ctor, std::move(args));
}

struct DataGen {
    std::mt19937 rng;
    explicit DataGen(unsigned seed) : rng(seed) {}
    int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

    Term tree(int depth) {
        if (depth == 0 || pick(4) == 0) return Term::app("leaf");
        return Term::app("node", {tree(depth - 1), Term::num(static_cast<std::uint64_t>(pick(9))), tree(depth - 1)});
    }
    Term list(int len) {
        Term l = Term::app("nil");
        for (int i = 0; i < len; ++i) l = Term::app("cons", {Term::num(static_cast<std::uint64_t>(pick(9))), l});
        return l;
    }
};

}  // namespace

TEST_SUITE("stdlib") {
    TEST_CASE("modules load in order") {
        CHECK(stdlib_modules() == std::vector<std::string>{"nat", "list", "tree", "season"});
        const Environment& env = *shared_stdlib();
        for (const char* f : {"add", "sub", "pred", "app", "length", "mirror", "size", "next"})
            CHECK(env.signature.functions.count(f) == 1);
        for (const char* th : {"n_sub_0", "n_sub_n", "suc_n_sub_suc_m", "n_sub_suc_m", "pred_0", "suc_pred_n",
                               "n_add_m_sub_n", "add_comm", "I_add_n", "equ_fct"})
            CHECK(env.theorems.count(th) == 1);
    }

    TEST_CASE("unknown module") {
        try {
            check_with_stdlib(parse_script("Require reals.\n"));
            FAIL("accepted");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::UnresolvedName);
            CHECK(e.detail().name == "reals");
        }
    }

    TEST_CASE("library axioms hold in the standard model") {
        const Environment& env = *shared_stdlib();
        const Signature& sig = env.signature;
        for (std::uint64_t n = 0; n <= 16; ++n) {
            for (std::uint64_t m = 0; m <= 16; ++m) {
                const Term tn = Term::num(n), tm = Term::num(m);
                CHECK(normalize(Term::app("sub", {Term::app("add", {tn, tm}), tn}), sig) == tm);
                CHECK(normalize(Term::app("add", {tn, tm}), sig) == normalize(Term::app("add", {tm, tn}), sig));
                CHECK(normalize(Term::app("sub", {tn, Term::app("Suc", {tm})}), sig) ==
                      normalize(Term::app("pred", {Term::app("sub", {tn, tm})}), sig));
            }
        }
    }

    TEST_CASE("mirror sweep") {
        DataGen g(21);
        const Signature& sig = shared_stdlib()->signature;
        for (int i = 0; i < 300; ++i) {
            const Term t = g.tree(1 + i % 5);
            const Term mm = Term::app("mirror", {Term::app("mirror", {t})});
            CHECK(normalize(mm, sig) == t);
            CHECK(eval_closed(mm) == eval_closed(t));
            const Term m = Term::app("mirror", {t});
            CHECK(normalize(m, sig) == as_term(eval_closed(m)));
            CHECK(normalize(Term::app("size", {m}), sig) == normalize(Term::app("size", {t}), sig));
        }
    }

    TEST_CASE("list functions agree with evaluation") {
        DataGen g(4);
        const Signature& sig = shared_stdlib()->signature;
        for (int i = 0; i < 200; ++i) {
            const Term a = g.list(i % 6), b = g.list((i / 6) % 5);
            const Term ab = Term::app("app", {a, b});
            CHECK(normalize(ab, sig) == as_term(eval_closed(ab)));
            CHECK(normalize(Term::app("length", {ab}), sig) ==
                  Term::num(eval_closed(Term::app("length", {a})).nat + eval_closed(Term::app("length", {b})).nat));
        }
    }

    TEST_CASE("seasons cycle") {
        const Signature& sig = shared_stdlib()->signature;
        for (const char* s : {"spring", "summer", "autumn", "winter"}) {
            Term t = Term::app(s);
            for (int k = 0; k < 4; ++k) t = Term::app("next", {t});
            CHECK(normalize(t, sig) == Term::app(s));
        }
    }

    TEST_CASE("evaluation rejects open terms") {
        CHECK_THROWS_AS(eval_closed(Term::var("x")), Error);
        CHECK(print(eval_closed(parse_term("2 ⊖ 3"))) == "0");
    }
}
