#include "internal.hpp"

namespace fpf {

std::string condense_class(TacticKind k) {
    switch (k) {
        case TacticKind::ProveAll:
        case TacticKind::ProveImp: return "intro";
        case TacticKind::UseAll: return "use_all";
        case TacticKind::UseAnd: return "use_and";
        default: return "";
    }
}

namespace {

std::vector<GroupedBranch> condense_children(const TraceNode& n) {
    std::vector<GroupedBranch> out;
    for (const auto& c : n.children) out.push_back({c.marker, condense_runs(c.nodes)});
    return out;
}

}  // namespace

std::vector<GroupedNode> condense_runs(const std::vector<TraceNode>& branch) {
    std::vector<GroupedNode> out;
    for (const auto& n : branch) {
        const std::string cls = condense_class(n.line.kind);
        if (!cls.empty() && !out.empty() && out.back().cls == cls && !out.back().last().branching() &&
            !n.branching()) {
            out.back().members.push_back(n);
        } else {
            out.push_back({cls.empty() ? std::string(tactic_name(n.line.kind)) : cls, {n}, {}});
        }
        out.back().children = condense_children(n);
    }
    for (auto& g : out) {
        if (!g.is_group()) g.cls = std::string(tactic_name(g.last().line.kind));
    }
    return out;
}

std::vector<GroupedNode> condense_runs(const ProofTrace& trace) { return condense_runs(trace.roots); }

namespace {

struct Level2 {
    const Catalog& cat;
    const Environment* env;
    std::vector<Block> blocks;
    std::vector<std::string> goals;  // goal printed at the end of each block

    void push(Block b, std::string goal) {
        blocks.push_back(std::move(b));
        goals.push_back(std::move(goal));
    }

    std::string single(const TraceNode& n, std::string& goal_out) {
        detail::Values v = detail::node_values(n, cat, env);
        const std::string& tmpl = cat.intuitive_template(detail::template_key(n));
        if (cat.pronouns && !goals.empty() && !goals.back().empty()) {
            for (auto& [k, val] : v) {
                if (detail::formula_placeholder(k) && val == goals.back() &&
                    tmpl.find("{" + k + "}") != std::string::npos) {
                    val = cat.phrase("pronoun");
                }
            }
        }
        goal_out = tmpl.find("{goal}") != std::string::npos ? v["goal"] : "";
        return fill(tmpl, v);
    }

    void branch(const std::vector<GroupedNode>& nodes, int depth, std::optional<char> marker) {
        const std::size_t first = blocks.size();
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            const GroupedNode& g = nodes[i];
            const TraceNode& n = g.last();
            Block b;
            b.depth = depth;
            if (blocks.size() == first) b.marker = marker;
            for (const auto& m : g.members) b.nodes.push_back(m.id);
            std::string goal;
            if (g.is_group()) {
                b.kind = "group";
                b.text = detail::group_text(g, cat);
                if (const Goal* pg = detail::produced_goal(n)) goal = print(pg->target);
            } else if (detail::is_closer(n.line.kind) && blocks.size() > first) {
                Block& prev = blocks.back();
                detail::append_suffix(prev.text, detail::closer_suffix(n.line.kind, cat));
                prev.nodes.push_back(n.id);
                continue;
            } else {
                b.kind = "comment";
                b.text = single(n, goal);
                b.justifications = detail::node_justifications(n);
            }
            push(std::move(b), goal);
            children(g, n, depth);
        }
    }

    void children(const GroupedNode& g, const TraceNode& n, int depth) {
        for (std::size_t c = 0; c < g.children.size(); ++c) {
            const GroupedBranch& gb = g.children[c];
            if (c > 0 && env && analogy_candidate(n.line.kind)) {
                if (auto rep = detect_analogy(n.children[0], n.children[c], *env)) {
                    Block b;
                    b.kind = "analogy";
                    b.depth = depth + 1;
                    b.marker = gb.marker;
                    b.text = analogy_text(*rep, cat);
                    collect_ids(n.children[c].nodes, b.nodes);
                    push(std::move(b), "");
                    continue;
                }
            }
            branch(gb.nodes, depth + 1, gb.marker);
        }
    }

    static void collect_ids(const std::vector<TraceNode>& ns, std::vector<int>& out) {
        for (const auto& n : ns) {
            out.push_back(n.id);
            for (const auto& c : n.children) collect_ids(c.nodes, out);
        }
    }
};

void revert_branch(const std::vector<GroupedNode>& nodes, int depth, std::optional<char> marker, const Catalog& cat,
                   const Environment* env, std::vector<Block>& out) {
    bool first = true;
    for (const auto& g : nodes) {
        for (const auto& m : g.members) {
            TraceNode bare = m;
            bare.children.clear();
            auto bs = detail::level1_blocks_env({bare}, cat, env, depth, first ? marker : std::nullopt);
            out.insert(out.end(), bs.begin(), bs.end());
            first = false;
        }
        const TraceNode& n = g.last();
        for (std::size_t c = 0; c < g.children.size(); ++c) {
            const GroupedBranch& gb = g.children[c];
            if (c > 0 && env && analogy_candidate(n.line.kind)) {
                if (auto rep = detect_analogy(n.children[0], n.children[c], *env)) {
                    Branch moved = apply_analogy(*rep, n.children[0]);
                    auto bs = detail::level1_blocks_env(moved.nodes, cat, env, depth + 1, gb.marker);
                    out.insert(out.end(), bs.begin(), bs.end());
                    continue;
                }
            }
            revert_branch(gb.nodes, depth + 1, gb.marker, cat, env, out);
        }
    }
}

}  // namespace

RenderedDocument render_level2(const ProofTrace& trace, const Catalog& cat) {
    RenderedDocument doc;
    doc.level = FormalityLevel::Weakened;
    doc.theorem = trace.theorem;
    Level2 r{cat, trace.env.get(), {}, {}};
    r.branch(condense_runs(trace), 0, std::nullopt);
    doc.blocks = std::move(r.blocks);
    return doc;
}

std::vector<Block> revert_level2(const ProofTrace& trace, const Catalog& cat) {
    std::vector<Block> out;
    revert_branch(condense_runs(trace), 0, std::nullopt, cat, trace.env.get(), out);
    return out;
}

}  // namespace fpf
