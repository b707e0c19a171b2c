#include <map>

#include "fpf/kernel.hpp"

namespace fpf {

namespace {

struct TreeBuilder {
    const std::vector<TraceNode>& steps;
    std::map<int, std::size_t> acting;  // goal id -> step index of the tactic working on it
    std::map<int, char> marker;         // goal id -> bullet that focused it

    explicit TreeBuilder(const std::vector<TraceNode>& s) : steps(s) {
        for (std::size_t i = 0; i < steps.size(); ++i) {
            const TraceNode& n = steps[i];
            if (n.bullet_event) {
                if (!n.after.focus.empty() && n.line.bullet) marker.emplace(n.after.focus.front().id, *n.line.bullet);
            } else {
                acting.emplace(n.goal_id, i);
            }
        }
    }

    std::vector<TraceNode> branch(int goal) const {
        std::vector<TraceNode> out;
        for (;;) {
            auto it = acting.find(goal);
            if (it == acting.end()) return out;
            TraceNode node = steps[it->second];
            node.children.clear();
            if (node.produced.size() == 1) {
                goal = node.produced.front();
                out.push_back(std::move(node));
                continue;
            }
            for (int p : node.produced) {
                Branch b;
                if (auto m = marker.find(p); m != marker.end()) b.marker = m->second;
                b.nodes = branch(p);
                node.children.push_back(std::move(b));
            }
            out.push_back(std::move(node));
            return out;
        }
    }
};

}  // namespace

std::vector<TraceNode> build_tree(const std::vector<TraceNode>& steps) {
    if (steps.empty()) return {};
    const ProofState& first = steps.front().before;
    if (first.focus.empty()) return {};
    return TreeBuilder(steps).branch(first.focus.front().id);
}

bool replay(const ProofTrace& trace) {
    if (!trace.env) return false;
    ProofState s = trace.initial;
    try {
        for (const auto& step : trace.steps) {
            if (!(s == step.before)) return false;
            auto [next, node] = apply_tactic(s, step.line, *trace.env);
            if (!(next == step.after)) return false;
            s = std::move(next);
        }
    } catch (const Error&) {
        return false;
    }
    return s.complete();
}

std::vector<ProofTrace> check_script(const ProofScript& script, Environment& env) {
    std::vector<ProofTrace> traces;
    for (const auto& d : script.declarations) {
        if (d.kind != Declaration::Kind::Theorem) {
            elaborate_declaration(d, env);
            continue;
        }
        if (env.signature.is_global(d.name) || env.theorems.count(d.name) || env.globals.contains(d.name)) {
            throw Error(ErrorCode::DuplicateName, d.span, d.name + " is already declared",
                        {"", "", "", d.name, "a fresh name"});
        }
        auto snapshot = std::make_shared<const Environment>(env);
        ProofTrace trace;
        trace.theorem = d.name;
        trace.env = snapshot;
        try {
            trace.initial = init_state(d.statement, *snapshot);
        } catch (Error& e) {
            if (!e.span().valid()) e.set_span(d.span);
            throw;
        }
        trace.statement = trace.initial.focus.front().target;
        ProofState s = trace.initial;
        for (const auto& line : d.proof) {
            for (const auto& ev : expand_line(line)) {
                auto [next, node] = apply_tactic(s, ev, *snapshot);
                trace.steps.push_back(std::move(node));
                s = std::move(next);
            }
        }
        if (!s.complete()) {
            const std::size_t k = s.open_goals();
            throw Error(ErrorCode::IncompleteProof, d.qed_span,
                        "the proof of " + d.name + " is not finished: " + std::to_string(k) + " goal" +
                            (k == 1 ? "" : "s") + " remain" + (k == 1 ? "s" : "") + ".",
                        {"", "", std::to_string(k), d.name, "no open goals"});
        }
        trace.roots = build_tree(trace.steps);
        TheoremRecord rec;
        rec.name = d.name;
        rec.statement = trace.statement;
        rec.status = TheoremRecord::Status::ProvedInCorpus;
        auto shared = std::make_shared<const ProofTrace>(trace);
        rec.trace = shared;
        env.theorems[d.name] = std::move(rec);
        traces.push_back(std::move(trace));
    }
    return traces;
}

std::vector<ProofTrace> check_script(const ProofScript& script, const Environment& base) {
    Environment env = base;
    return check_script(script, env);
}

}  // namespace fpf
