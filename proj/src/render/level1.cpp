#include "internal.hpp"

namespace fpf {

std::string state_digest(const ProofState& s) {
    if (s.complete()) return "(* no more goals *)";
    const std::size_t k = s.open_goals();
    std::string out = "(* " + std::to_string(k) + (k == 1 ? " goal" : " goals");
    const Goal* g = s.current();
    if (!g) return out + ", none focused *)";
    std::string ctx;
    for (const auto& e : g->context.entries) {
        if (!ctx.empty()) ctx += ", ";
        ctx += e.name + " : " + (e.is_hypothesis ? print(e.statement) : print(e.sort));
    }
    out += ": ";
    if (!ctx.empty()) out += ctx + " ";
    return out + "⊢ " + print(g->target) + " *)";
}

RenderedDocument render_level0(const ProofTrace& trace) {
    RenderedDocument doc;
    doc.level = FormalityLevel::Script;
    doc.theorem = trace.theorem;
    Block head;
    head.kind = "theorem";
    head.text = "Theorem " + trace.theorem + " : " + print(trace.statement) + ".  " + state_digest(trace.initial);
    doc.blocks.push_back(std::move(head));
    const auto& steps = trace.steps;
    for (std::size_t i = 0; i < steps.size();) {
        std::size_t j = i;
        while (j + 1 < steps.size() && steps[j + 1].line.source_line == steps[i].line.source_line) ++j;
        const TraceNode& last = steps[j];
        Block b;
        b.kind = "line";
        b.depth = static_cast<int>(last.before.frames.size());
        if (steps[i].bullet_event) b.marker = steps[i].line.bullet;
        TacticLine shown = last.line;
        shown.bullet.reset();
        b.text = (last.bullet_event ? "" : print(shown) + "  ") + state_digest(last.after);
        if (last.bullet_event) b.depth = static_cast<int>(last.after.frames.size());
        for (std::size_t k = i; k <= j; ++k) b.nodes.push_back(steps[k].id);
        doc.blocks.push_back(std::move(b));
        i = j + 1;
    }
    Block qed;
    qed.kind = "line";
    qed.text = "Qed.";
    doc.blocks.push_back(std::move(qed));
    return doc;
}

namespace {

void level1_branch(const std::vector<TraceNode>& nodes, const Catalog& cat, const Environment* env, int depth,
                   std::optional<char> marker, std::vector<Block>& out) {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const TraceNode& n = nodes[i];
        Block b;
        b.kind = "comment";
        b.depth = depth;
        if (i == 0) b.marker = marker;
        b.text = detail::rule_text(n, cat, env);
        b.nodes = {n.id};
        b.justifications = detail::node_justifications(n);
        out.push_back(std::move(b));
        for (const auto& c : n.children) level1_branch(c.nodes, cat, env, depth + 1, c.marker, out);
    }
}

}  // namespace

std::vector<Block> level1_blocks(const std::vector<TraceNode>& roots, const Catalog& cat, int depth,
                                 std::optional<char> marker) {
    std::vector<Block> out;
    level1_branch(roots, cat, nullptr, depth, marker, out);
    return out;
}

namespace detail {

std::vector<Block> level1_blocks_env(const std::vector<TraceNode>& roots, const Catalog& cat, const Environment* env,
                                     int depth, std::optional<char> marker) {
    std::vector<Block> out;
    level1_branch(roots, cat, env, depth, marker, out);
    return out;
}

}  // namespace detail

RenderedDocument render_level1(const ProofTrace& trace, const Catalog& cat) {
    RenderedDocument doc;
    doc.level = FormalityLevel::LineByLine;
    doc.theorem = trace.theorem;
    doc.blocks = detail::level1_blocks_env(trace.roots, cat, trace.env.get(), 0, std::nullopt);
    return doc;
}

}  // namespace fpf
