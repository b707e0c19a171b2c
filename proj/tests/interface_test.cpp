#include <doctest.h>

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <condition_variable>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "support.hpp"

using namespace fpf;
using nlohmann::json;

namespace {

json ask(ProtocolHandler& h, json req) {
    req["v"] = 1;
    return json::parse(h.handle(req.dump()));
}

bool same_snapshot(const SessionSnapshot& a, const SessionSnapshot& b) {
    if (!(a.state == b.state) || a.traces.size() != b.traces.size() || a.open.has_value() != b.open.has_value())
        return false;
    for (std::size_t i = 0; i < a.traces.size(); ++i)
        if (!same_trace(a.traces[i], b.traces[i])) return false;
    if (a.open && !same_trace(*a.open, *b.open)) return false;
    return a.env->theorems.size() == b.env->theorems.size();
}

std::vector<ErrorCode> all_codes() {
    std::vector<ErrorCode> out;
    for (auto [lo, hi] : {std::pair{100, 105}, {200, 202}, {300, 315}, {400, 405}, {500, 503}, {600, 605}, {700, 703}})
        for (int c = lo; c <= hi; ++c) out.push_back(static_cast<ErrorCode>(c));
    return out;
}

struct Client {
    int fd = -1;
    std::string buf;

    explicit Client(int port) {
        fd = ::socket(AF_INET, SOCK_STREAM, 0);
        sockaddr_in a{};
        a.sin_family = AF_INET;
        a.sin_port = htons(static_cast<uint16_t>(port));
        a.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
        REQUIRE(::connect(fd, reinterpret_cast<sockaddr*>(&a), sizeof a) == 0);
    }
    ~Client() { ::close(fd); }

    json ask(json req) {
        req["v"] = 1;
        const std::string line = req.dump() + "\n";
        REQUIRE(::send(fd, line.data(), line.size(), 0) == static_cast<ssize_t>(line.size()));
        std::size_t nl;
        char chunk[4096];
        while ((nl = buf.find('\n')) == std::string::npos) {
            ssize_t n = ::recv(fd, chunk, sizeof chunk, 0);
            REQUIRE(n > 0);
            buf.append(chunk, static_cast<std::size_t>(n));
        }
        json j = json::parse(buf.substr(0, nl));
        buf.erase(0, nl + 1);
        return j;
    }
};

}  // namespace

TEST_SUITE("interface") {
    TEST_CASE("items of a script") {
        Session s = Session::load(test::slurp(test::corpus_path("and_comm.fpf")));
        REQUIRE(s.items().size() == 8);
        CHECK(s.items()[0].kind == SessionItem::Kind::Declaration);
        CHECK(s.items()[1].kind == SessionItem::Kind::ProofStart);
        CHECK(s.items()[1].last_line == 4);
        CHECK(s.items()[7].kind == SessionItem::Kind::Qed);
        CHECK(s.cursor() == 0);
        CHECK(s.accepted_line() == 0);
    }

    TEST_CASE("three steps give two goals") {
        ProtocolHandler h;
        ask(h, {{"type", "load"}, {"path", test::corpus_path("and_comm.fpf")}});
        json r;
        for (int i = 0; i < 5; ++i) r = ask(h, {{"type", "step_forward"}, {"id", i}});
        CHECK(r["type"] == "accepted");
        CHECK(r["id"] == 4);
        CHECK(r["line"] == 7);
        const json& st = r["state"];
        CHECK(st["open_goals"] == 2);
        CHECK(st["goals"] == json::array({"B", "A"}));
        CHECK(st["focused"] == 0);
        CHECK(st["further_goals"] == 1);
        CHECK(st["hypotheses"].size() == 4);
        CHECK(st["hypotheses"][2]["name"] == "HA");
        CHECK(st["accepted_line"] == 7);
    }

    TEST_CASE("step back at the beginning") {
        ProtocolHandler h;
        ask(h, {{"type", "load"}, {"source", "Variables A : Prop.\n"}});
        json r = ask(h, {{"type", "step_back"}, {"id", "x"}});
        CHECK(r["type"] == "error");
        CHECK(r["code_name"] == "AT_BEGINNING");
        CHECK(r["id"] == "x");
        CHECK(r["state"]["cursor"] == 0);
        ask(h, {{"type", "run_to_end"}});
        CHECK(ask(h, {{"type", "step_forward"}})["code_name"] == "AT_END");
    }

    TEST_CASE("errors do not move the cursor") {
        ProtocolHandler h;
        ask(h, {{"type", "load"}, {"path", test::corpus_path("and_comm_wrong_start.fpf")}});
        json r = ask(h, {{"type", "run_to_end"}});
        CHECK(r["type"] == "error");
        CHECK(r["code"] == 303);
        CHECK(r["code_name"] == "GOAL_NOT_CONJUNCTION");
        CHECK(r["span"] == json{{"line", 5}, {"column", 3}});
        CHECK(r["message"] ==
              "prove_and expects the current goal to be a conjunction; the goal here is an implication (A ∧ B → B ∧ A).");
        CHECK(r["state"]["cursor"] == 2);
        CHECK(ask(h, {{"type", "step_forward"}})["state"]["cursor"] == 2);
    }

    TEST_CASE("malformed requests keep the session") {
        ProtocolHandler h;
        ask(h, {{"type", "load"}, {"path", test::corpus_path("and_comm.fpf")}});
        ask(h, {{"type", "step_forward"}});
        for (const std::string bad : {"nonsense", "[1,2]", R"({"type":"get_state"})", R"({"v":2,"type":"get_state"})",
                                      R"({"v":1,"type":"fly"})", R"({"v":1,"type":"render","level":9})"}) {
            json r = json::parse(h.handle(bad));
            CHECK(r["v"] == 1);
            CHECK(r["code_name"] == "PROTOCOL_ERROR");
        }
        CHECK(ask(h, {{"type", "get_state"}})["state"]["cursor"] == 1);
        ProtocolHandler fresh;
        CHECK(ask(fresh, {{"type", "step_forward"}})["code_name"] == "PROTOCOL_ERROR");
        CHECK(ask(fresh, {{"type", "load"}, {"path", "/nonexistent.fpf"}})["code_name"] == "IO_ERROR");
    }

    TEST_CASE("render through the protocol") {
        ProtocolHandler h;
        ask(h, {{"type", "load"}, {"path", test::corpus_path("exists_or.fpf")}});
        json r = ask(h, {{"type", "run_to_end"}});
        CHECK(r["type"] == "accepted");
        CHECK(r["state"]["open_goals"] == 0);
        CHECK(r["state"]["proved"] == json::array({"exists_or"}));
        json d = ask(h, {{"type", "render"}, {"level", 2}});
        CHECK(d["type"] == "document");
        CHECK(d["level"] == 2);
        CHECK(d["blocks"].size() == 6);
        CHECK(d["blocks"][5]["kind"] == "analogy");
        CHECK(d["text"] == test::slurp(test::golden_path("exists_or_level2.txt")));
    }

    TEST_CASE("batch and interactive agree") {
        for (const auto& f : test::corpus_files()) {
            INFO(f);
            Session s = Session::load(test::slurp(test::corpus_path(f)));
            s.run_to_end();
            auto batch = test::check_file(f);
            REQUIRE(s.traces().size() == batch.size());
            for (std::size_t i = 0; i < batch.size(); ++i) CHECK(same_trace(s.traces()[i], batch[i]));
        }
    }

    TEST_CASE("stepping back restores every state") {
        for (const auto& f : test::corpus_files()) {
            INFO(f);
            const std::string src = test::slurp(test::corpus_path(f));
            Session ref = Session::load(src);
            std::vector<SessionSnapshot> forward = {ref.current()};
            while (!ref.at_end()) {
                ref.step_forward();
                forward.push_back(ref.current());
            }
            for (std::size_t k = 0; k < forward.size(); ++k) {
                Session s = Session::load(src);
                for (std::size_t i = 0; i < k; ++i) s.step_forward();
                for (std::size_t i = 0; i < k; ++i) s.step_back();
                CHECK(s.cursor() == 0);
                CHECK(same_snapshot(s.current(), forward[0]));
            }
            std::mt19937 rng(9);
            Session s = Session::load(src);
            for (int i = 0; i < 200; ++i) {
                if (rng() % 3 == 0 && s.cursor() > 0) s.step_back();
                else if (!s.at_end()) s.step_forward();
                CHECK(same_snapshot(s.current(), forward[s.cursor()]));
            }
        }
    }

    TEST_CASE("error positions agree between modes") {
        const std::vector<std::string> bad = {
            test::slurp(test::corpus_path("and_comm_wrong_start.fpf")),
            "Variables A B : Prop.\nTheorem t : A → B.\nProof.\n  prove_imp H.\n  assumption.\nQed.\n",
            "Variables A : Prop.\nTheorem t : A → A.\nProof.\n  prove_imp H.\nQed.\n",
            "Require nat.\nTheorem t : 2 ⊖ 3 = 1.\nProof.\n  reflexivity.\nQed.\n",
            "Require nope.\n",
            "Variables A : Prop.\nTheorem t : A.\nProof.\n  assumption.\nQed.\nRequire nope.\n",
        };
        for (const auto& src : bad) {
            Span batch_span;
            ErrorCode batch_code{};
            try {
                check_with_stdlib(parse_script(src));
                FAIL("accepted");
            } catch (const Error& e) {
                batch_code = e.code();
                batch_span = e.span();
            }
            for (int run = 0; run < 2; ++run) {
                try {
                    Session s = Session::load(src);
                    s.run_to_end();
                    FAIL("accepted");
                } catch (const Error& e) {
                    CHECK(e.code() == batch_code);
                    CHECK(e.span() == batch_span);
                }
            }
        }
    }

    TEST_CASE("every code has a template") {
        for (auto c : all_codes()) {
            INFO(code_name(c));
            CHECK_FALSE(error_template(c).empty());
            CHECK_FALSE(code_name(c).empty());
        }
        Error e(ErrorCode::HypNotConjunction, {3, 4}, "raw", {"use_and", "A ∨ B", "a disjunction", "H", "a conjunction"});
        CHECK(student_message(e) == "use_and expects H to be a conjunction; H is a disjunction (A ∨ B).");
        Error partial(ErrorCode::HypNotConjunction, {3, 4}, "raw text", {"use_and"});
        CHECK(student_message(partial) == "raw text");
        CHECK(report(e).span == Span{3, 4});
    }

    TEST_CASE("serve over a local socket") {
        std::atomic<bool> stop{false};
        std::mutex mu;
        std::condition_variable cv;
        int port = 0;
        std::thread server([&] {
            serve(0, Catalog::builtin(), [&](int p) {
                std::lock_guard<std::mutex> lock(mu);
                port = p;
                cv.notify_all();
            }, &stop);
        });
        {
            std::unique_lock<std::mutex> lock(mu);
            cv.wait(lock, [&] { return port != 0; });
        }
        {
            Client a(port), b(port);
            CHECK(a.ask({{"type", "load"}, {"path", test::corpus_path("and_comm.fpf")}})["type"] == "state_view");
            CHECK(b.ask({{"type", "load"}, {"path", test::corpus_path("sub_suc.fpf")}})["state"]["items"] == 33);
            for (int i = 0; i < 5; ++i) a.ask({{"type", "step_forward"}});
            CHECK(a.ask({{"type", "get_state"}})["state"]["open_goals"] == 2);
            CHECK(b.ask({{"type", "get_state"}})["state"]["cursor"] == 0);
            CHECK(a.ask({{"type", "bogus"}})["code_name"] == "PROTOCOL_ERROR");
            CHECK(a.ask({{"type", "run_to_end"}})["state"]["proved"] == json::array({"and_comm"}));
        }
        stop = true;
        server.join();
    }
}
