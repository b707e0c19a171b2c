#include <doctest.h>

#include "support.hpp"

using namespace fpf;
using test::tactic;

namespace {

ProofTrace only(const std::string& file) {
    auto ts = test::check_file(file);
    REQUIRE(ts.size() == 1);
    return ts.front();
}

Error error_of(const std::string& script) {
    try {
        check_with_stdlib(parse_script(script));
    } catch (const Error& e) {
        return e;
    }
    FAIL("script was accepted");
    return Error(ErrorCode::ProtocolError, {}, "");
}

}  // namespace

TEST_SUITE("kernel") {
    TEST_CASE("and commutativity") {
        ProofTrace t = only("and_comm.fpf");
        CHECK(t.tactic_count() == 5);
        CHECK(print(t.statement) == "A ∧ B → B ∧ A");
        REQUIRE(t.roots.size() == 3);
        CHECK(t.roots[2].line.kind == TacticKind::ProveAnd);
        REQUIRE(t.roots[2].children.size() == 2);
        CHECK(t.roots[2].children[0].marker == '+');
        CHECK(t.roots[2].children[1].nodes.front().used_hypothesis == "HA");
        CHECK(replay(t));
    }

    TEST_CASE("state after three steps has two goals") {
        const Environment& env = test::prop_env();
        ProofState s = init_state(parse_formula("A0 ∧ A1 → A1 ∧ A0"), env);
        for (auto l : {tactic(TacticKind::ProveImp, {"H"}), tactic(TacticKind::UseAnd, {"H", "HA", "HB"}),
                       tactic(TacticKind::ProveAnd)})
            s = apply_tactic(s, l, env).first;
        REQUIRE(s.focus.size() == 2);
        CHECK(print(s.focus[0].target) == "A1");
        CHECK(print(s.focus[1].target) == "A0");
        CHECK(s.open_goals() == 2);
    }

    TEST_CASE("wrong start is rejected with the conjunction message") {
        Error e = error_of(test::slurp(test::corpus_path("and_comm_wrong_start.fpf")));
        CHECK(e.code() == ErrorCode::GoalNotConjunction);
        CHECK(code_name(e.code()) == "GOAL_NOT_CONJUNCTION");
        CHECK(e.span() == Span{5, 3});
        CHECK(std::string(e.what()) ==
              "prove_and expects the current goal to be a conjunction; the goal here is an implication (A ∧ B → B ∧ A).");
    }

    TEST_CASE("corpus checks and replays") {
        for (const auto& f : test::corpus_files()) {
            INFO(f);
            auto ts = test::check_file(f);
            REQUIRE_FALSE(ts.empty());
            for (const auto& t : ts) {
                CHECK(replay(t));
                CHECK(test::count_nodes(t.roots) == t.tactic_count());
            }
        }
    }

    TEST_CASE("checking is deterministic") {
        for (const auto& f : test::corpus_files()) {
            auto a = test::check_file(f), b = test::check_file(f), c = test::check_file(f);
            REQUIRE(a.size() == b.size());
            for (std::size_t i = 0; i < a.size(); ++i) {
                CHECK(same_trace(a[i], b[i]));
                CHECK(same_trace(a[i], c[i]));
            }
        }
    }

    TEST_CASE("case keeps the equation") {
        ProofTrace t = only("sub_suc.fpf");
        const TraceNode* cs = &t.roots.back();
        REQUIRE(cs->line.kind == TacticKind::UseOr);
        const TraceNode& c = cs->children[0].nodes.front();
        REQUIRE(c.line.kind == TacticKind::Case);
        REQUIRE(c.children.size() == 2);
        const Goal& g0 = c.children[0].nodes.front().goal_before();
        const Goal& g1 = c.children[1].nodes.front().goal_before();
        CHECK(print(g0.context.hypothesis("Hm")->statement) == "m = 0");
        CHECK(print(g1.context.hypothesis("Hm")->statement) == "m = Suc l");
        CHECK(g1.context.variable("l") != nullptr);
    }

    TEST_CASE("induction hypothesis") {
        ProofTrace t = only("list_length_app.fpf");
        const TraceNode& ind = t.roots[2];
        REQUIRE(ind.line.kind == TacticKind::Induction);
        const Goal& step = ind.children[1].nodes.front().goal_before();
        CHECK(print(step.context.hypothesis("IH")->statement) == "length (l' ++ k) = length l' ⊕ length k");
        CHECK(print(step.target) == "length (cons x l' ++ k) = length (cons x l') ⊕ length k");
    }

    TEST_CASE("rewrite records its justification") {
        ProofTrace t = only("sub_suc.fpf");
        int hyp = 0, thm = 0;
        for (const auto& s : t.steps) {
            if (s.line.kind != TacticKind::Rewrite) continue;
            (s.rewrite->from_hypothesis ? hyp : thm)++;
        }
        CHECK(hyp == 7);
        CHECK(thm == 11);
    }

    TEST_CASE("incomplete proof") {
        Error e = error_of(test::prop_header() + "Theorem t : A0 → A0.\nProof.\n  prove_imp H.\nQed.\n");
        CHECK(e.code() == ErrorCode::IncompleteProof);
        CHECK(e.span().line == 5);
        CHECK(e.detail().found == "1");
    }

    TEST_CASE("bullets by depth") {
        const std::string head = "Variables A B : Prop.\nTheorem t : A → B → A ∧ B.\nProof.\n prove_imp H. prove_imp K. prove_and.\n";
        CHECK(test::accepted(head + " + assumption.\n + assumption.\nQed."));
        CHECK(error_of(head + " * assumption.\n * assumption.\nQed.").code() == ErrorCode::BulletWrongMarker);
        CHECK(error_of(head + " + assumption.\n assumption.\nQed.").code() == ErrorCode::BulletExpected);
        CHECK(error_of(head + " + assumption.\n + assumption.\n assumption.\nQed.").code() == ErrorCode::NoGoals);
    }

    TEST_CASE("names must be fresh") {
        Error e = error_of("Variables A : Prop.\nTheorem t : A → A → A.\nProof.\n prove_imp H. prove_imp H.\nQed.");
        CHECK(e.code() == ErrorCode::NameCollision);
        CHECK(error_of("Require nat.\nTheorem add_comm : 0 = 0.\nProof.\n reflexivity.\nQed.").code() ==
              ErrorCode::DuplicateName);
    }

    TEST_CASE("non-structural recursion is refused") {
        Error e = error_of("Fixpoint loop (n : nat) : nat :=\n  | loop 0 = 0\n  | loop (Suc k) = loop (Suc k).\n");
        CHECK(e.code() == ErrorCode::NonStructuralRecursion);
        Error e2 = error_of("Fixpoint half (n : nat) : nat :=\n  | half 0 = 0.\n");
        CHECK(e2.code() == ErrorCode::NonExhaustiveEquations);
    }

    TEST_CASE("every tactic kind rejects wrong shapes") {
        std::vector<TacticKind> kinds = all_tactic_kinds();
        kinds.push_back(TacticKind::Bullet);
        for (auto k : kinds) {
            auto cases = test::wrong_shape(k, 50, 100 + static_cast<unsigned>(k));
            INFO(tactic_name(k));
            REQUIRE(cases.size() == 50);
            int rejected = 0;
            for (const auto& c : cases) rejected += test::rejected(c);
            CHECK(rejected == 50);
        }
    }

    TEST_CASE("shape errors use the matching code") {
        auto cases = test::wrong_shape(TacticKind::UseOr, 20, 3);
        for (const auto& c : cases) {
            try {
                apply_tactic(c.state, c.line, test::prop_env());
            } catch (const Error& e) {
                CHECK(e.code() == ErrorCode::HypNotDisjunction);
                CHECK(e.detail().name == "H");
            }
        }
    }

    TEST_CASE("accepted propositional theorems are tautologies") {
        test::PropGen g(11);
        const Environment& env = test::prop_env();
        int accepted = 0;
        for (int i = 0; i < 400; ++i) {
            Formula f = i % 2 ? g.provable(1 + i % 2) : g.any(2 + i % 2);
            test::Prover p{env};
            auto proof = p.solve(init_state(f, env), 14);
            if (!proof) continue;
            const std::string script = test::prop_header() + test::theorem_text("t", f, *proof);
            INFO(script);
            REQUIRE(test::accepted(script));
            ++accepted;
            CHECK(test::tautology(f));
        }
        MESSAGE("accepted: " << accepted);
        CHECK(accepted >= 150);
    }

    TEST_CASE("random tactic walks never prove a non-tautology") {
        test::PropGen g(5);
        const Environment& env = test::prop_env();
        std::vector<TacticKind> kinds = all_tactic_kinds();
        const std::vector<std::string> names = {"H", "H0", "H1", "H2", "A0", "A1"};
        int finished = 0, bogus = 0;
        for (int i = 0; i < 600; ++i) {
            Formula f = i % 3 ? g.any(2) : g.provable(1);
            test::Prover p{env};
            ProofState s = init_state(f, env);
            for (int step = 0; step < 20 && !s.complete(); ++step) {
                TacticLine l;
                if (s.focus.empty() || g.pick(4) == 0) {
                    // arbitrary line, usually rejected
                    l = tactic(kinds[g.pick(static_cast<int>(kinds.size()))]);
                    const int argc = g.pick(4);
                    for (int a = 0; a < argc; ++a) l.args.push_back(Term::var(names[g.pick(6)]));
                } else {
                    auto c = p.candidates(s);
                    l = c[g.pick(static_cast<int>(c.size()))];
                }
                try {
                    s = apply_tactic(s, l, env).first;
                } catch (const Error&) {
                    ++bogus;
                }
            }
            if (s.complete()) {
                ++finished;
                INFO(print(f));
                CHECK(test::tautology(f));
            }
        }
        CHECK(finished >= 50);
        CHECK(bogus > 0);
    }

    TEST_CASE("closed equalities agree with integer arithmetic") {
        test::ArithGen g(3);
        int yes = 0, no = 0;
        for (int i = 0; i < 600; ++i) {
            Term l = g.any(2), r = i % 3 ? g.any(2) : l;
            if (i % 5 == 0) r = Term::num(static_cast<std::uint64_t>(*test::arith(l)));
            const Formula eq = Formula::eq(l, r);
            const bool ok = test::accepted("Require nat.\nTheorem t : " + print(eq) + ".\nProof.\n reflexivity.\nQed.");
            INFO(print(eq));
            CHECK(ok == (*test::arith(l) == *test::arith(r)));
            (ok ? yes : no)++;
        }
        CHECK(yes > 100);
        CHECK(no > 100);
    }

    TEST_CASE("normalization agrees with evaluation on 0..32") {
        const Signature& sig = shared_stdlib()->signature;
        int checked = 0;
        for (std::uint64_t a = 0; a <= 32; ++a) {
            const Term ta = Term::num(a);
            CHECK(normalize(Term::app("pred", {ta}), sig) == Term::num(a ? a - 1 : 0));
            for (std::uint64_t b = 0; b <= 32; ++b) {
                const Term tb = Term::num(b);
                CHECK(normalize(Term::app("add", {ta, tb}), sig) == Term::num(a + b));
                CHECK(normalize(Term::app("sub", {ta, tb}), sig) == Term::num(a > b ? a - b : 0));
                const Term nested = Term::app("sub", {Term::app("add", {ta, tb}), Term::app("pred", {tb})});
                CHECK(eval_closed(nested) == Value::number(static_cast<std::uint64_t>(*test::arith(nested))));
                CHECK(normalize(nested, sig) == Term::num(static_cast<std::uint64_t>(*test::arith(nested))));
                checked += 3;
            }
        }
        CHECK(normalize(parse_term("2 ⊖ 3"), sig) == Term::num(0));
        CHECK(checked == 33 * 33 * 3);
    }
}
