#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fpf/interface.hpp"

namespace fpf {

using nlohmann::ordered_json;

namespace {

ordered_json entry_json(const ContextEntry& e) {
    return {{"name", e.name}, {"kind", e.is_hypothesis ? "hypothesis" : "variable"},
            {"text", e.is_hypothesis ? print(e.statement) : print(e.sort)}};
}

ordered_json state_json(const Session& s) {
    const SessionSnapshot& snap = s.current();
    ordered_json j;
    j["cursor"] = s.cursor();
    j["items"] = s.items().size();
    j["accepted_line"] = s.accepted_line();
    j["theorem"] = snap.open ? ordered_json(snap.open->theorem) : ordered_json(nullptr);
    const ProofState& st = snap.state;
    j["open_goals"] = snap.open ? st.open_goals() : 0;
    auto hyps = ordered_json::array();
    auto goals = ordered_json::array();
    if (snap.open && !st.focus.empty()) {
        // only the focused goal's context is shown
        for (const auto& e : st.focus.front().context.entries) hyps.push_back(entry_json(e));
        for (const auto& g : st.focus) goals.push_back(print(g.target));
    }
    j["focused"] = goals.empty() ? ordered_json(nullptr) : ordered_json(0);
    j["hypotheses"] = std::move(hyps);
    j["goals"] = std::move(goals);
    const std::size_t further = snap.open && st.open_goals() > 0 ? st.open_goals() - 1 : 0;
    j["further_goals"] = further;
    j["proved"] = ordered_json::array();
    for (const auto& t : snap.traces) j["proved"].push_back(t.theorem);
    return j;
}

ordered_json error_json(const Error& e) {
    const ErrorReport r = report(e);
    ordered_json j;
    j["code"] = static_cast<int>(r.code);
    j["code_name"] = std::string(code_name(r.code));
    j["span"] = {{"line", r.span.line}, {"column", r.span.column}};
    j["message"] = r.message;
    return j;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, {}, "cannot read " + path, {"", "", "no such file", path, ""});
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

[[noreturn]] void bad(const std::string& what, const std::string& expected) {
    throw Error(ErrorCode::ProtocolError, {}, "malformed request: " + what, {"", "", what, "", expected});
}

}  // namespace

std::string state_view_json(const Session& s) { return state_json(s).dump(); }

std::string ProtocolHandler::handle(const std::string& request_line) {
    ordered_json out;
    out["v"] = kProtocolVersion;
    ordered_json id = nullptr;
    try {
        ordered_json req;
        try {
            req = ordered_json::parse(request_line);
        } catch (const nlohmann::json::exception&) {
            bad("not a JSON object", "one JSON object per line");
        }
        if (!req.is_object()) bad("not a JSON object", "one JSON object per line");
        if (req.contains("id")) id = req["id"];
        out["id"] = id;
        if (!req.contains("v") || req["v"] != kProtocolVersion) bad("missing or unsupported v", "\"v\":1");
        if (!req.contains("type") || !req["type"].is_string()) bad("missing type", "a request type");
        const std::string type = req["type"];

        auto need_session = [&]() -> Session& {
            if (!session_) bad("no script loaded", "a load request first");
            return *session_;
        };

        if (type == "load") {
            std::string source;
            if (req.contains("source") && req["source"].is_string()) source = req["source"];
            else if (req.contains("path") && req["path"].is_string()) source = read_file(req["path"]);
            else bad("load without source or path", "a source or path field");
            session_.reset();
            session_ = Session::load(std::move(source));
            out["type"] = "state_view";
            out["state"] = state_json(*session_);
        } else if (type == "step_forward") {
            Session& s = need_session();
            const SessionItem& it = s.step_forward();
            out["type"] = "accepted";
            out["line"] = it.source_line;
            out["last_line"] = it.last_line;
            out["state"] = state_json(s);
        } else if (type == "step_back") {
            Session& s = need_session();
            s.step_back();
            out["type"] = "state_view";
            out["state"] = state_json(s);
        } else if (type == "run_to_end") {
            Session& s = need_session();
            s.run_to_end();
            out["type"] = "accepted";
            out["line"] = s.accepted_line();
            out["last_line"] = s.accepted_line();
            out["state"] = state_json(s);
        } else if (type == "get_state") {
            out["type"] = "state_view";
            out["state"] = state_json(need_session());
        } else if (type == "render") {
            Session& s = need_session();
            if (!req.contains("level") || !req["level"].is_number_integer()) bad("render without level", "level 0..3");
            auto level = level_from_int(req["level"].get<int>());
            if (!level) bad("level out of range", "level 0..3");
            const auto& traces = s.traces();
            const ProofTrace* trace = nullptr;
            if (req.contains("theorem") && req["theorem"].is_string()) {
                for (const auto& t : traces)
                    if (t.theorem == req["theorem"]) trace = &t;
                if (!trace) bad("no finished proof of that name", "the name of an accepted theorem");
            } else if (!traces.empty()) {
                trace = &traces.back();
            } else {
                bad("no finished proof to render", "an accepted theorem");
            }
            const RenderedDocument doc = render(*level, *trace, *cat_);
            out["type"] = "document";
            out["level"] = static_cast<int>(doc.level);
            out["theorem"] = doc.theorem;
            auto blocks = ordered_json::array();
            std::istringstream lines(to_jsonl(doc));
            for (std::string l; std::getline(lines, l);) blocks.push_back(ordered_json::parse(l));
            out["blocks"] = std::move(blocks);
            out["text"] = to_text(doc);
        } else {
            bad("unknown type " + type, "load, step_forward, step_back, run_to_end, render or get_state");
        }
    } catch (const Error& e) {
        ordered_json err;
        err["v"] = kProtocolVersion;
        err["id"] = id;
        err["type"] = "error";
        err.update(error_json(e));
        if (session_) err["state"] = state_json(*session_);
        return err.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
    }
    return out.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

}  // namespace fpf
