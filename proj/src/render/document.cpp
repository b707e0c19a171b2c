#include <json.hpp>

#include "fpf/render.hpp"

namespace fpf {

namespace {

std::string prefix(const Block& b) {
    if (b.marker) return std::string(2 * static_cast<std::size_t>(std::max(b.depth - 1, 0)), ' ') + *b.marker + ' ';
    return std::string(2 * static_cast<std::size_t>(b.depth), ' ');
}

const char* side_label(EquationalChain::Side s) {
    switch (s) {
        case EquationalChain::Side::Lhs: return "lhs";
        case EquationalChain::Side::Rhs: return "rhs";
        case EquationalChain::Side::Forward: return "forward";
    }
    return "";
}

}  // namespace

std::string to_text(const RenderedDocument& doc) {
    std::string out;
    for (const auto& b : doc.blocks) out += prefix(b) + b.text + "\n";
    return out;
}

std::string to_jsonl(const RenderedDocument& doc) {
    std::string out;
    for (std::size_t i = 0; i < doc.blocks.size(); ++i) {
        const Block& b = doc.blocks[i];
        nlohmann::ordered_json j;
        j["level"] = static_cast<int>(doc.level);
        j["theorem"] = doc.theorem;
        j["index"] = i;
        j["depth"] = b.depth;
        j["marker"] = b.marker ? nlohmann::ordered_json(std::string(1, *b.marker)) : nlohmann::ordered_json(nullptr);
        j["kind"] = b.kind;
        j["text"] = b.text;
        j["nodes"] = b.nodes;
        j["justifications"] = b.justifications;
        auto chains = nlohmann::ordered_json::array();
        for (const auto& c : b.chains) {
            chains.push_back({{"side", side_label(c.side)}, {"text", print(c)}, {"hints", c.hints}, {"met", c.met}});
        }
        j["chains"] = std::move(chains);
        out += j.dump() + "\n";
    }
    return out;
}

RenderedDocument render(FormalityLevel level, const ProofTrace& trace, const Catalog& cat) {
    switch (level) {
        case FormalityLevel::Script: return render_level0(trace);
        case FormalityLevel::LineByLine: return render_level1(trace, cat);
        case FormalityLevel::Weakened: return render_level2(trace, cat);
        case FormalityLevel::StructureFaithful: return render_level3(trace, cat);
    }
    return render_level1(trace, cat);
}

}  // namespace fpf
