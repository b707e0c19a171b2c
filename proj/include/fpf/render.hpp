#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "fpf/kernel.hpp"

namespace fpf {

enum class FormalityLevel { Script = 0, LineByLine = 1, Weakened = 2, StructureFaithful = 3 };

std::optional<FormalityLevel> level_from_int(int level);

// ---------------------------------------------------------------------------
// Template catalog
// ---------------------------------------------------------------------------

/// Wording for every rendered sentence. Templates use `{name}` placeholders;
/// the allowed names per entry are fixed (see `catalog_placeholders`).
struct Catalog {
    struct SortPhrase {
        std::string singular;
        std::string plural;
    };

    std::map<std::string, std::string> rule;       // level 1, keyed by tactic name or variant
    std::map<std::string, std::string> intuitive;  // level 2/3
    std::map<std::string, std::string> phrases;    // groups, suffixes, analogy, level 3 sentences
    std::map<std::string, SortPhrase> sorts;       // base sort names plus Type, Prop, predicate, default
    bool pronouns = true;                          // one-block-lookback "it" replacement

    static const Catalog& builtin();
    /// Parses and validates a catalog document. Throws IoError with a reason.
    static Catalog from_json(std::string_view text);
    static Catalog from_file(const std::string& path);

    const std::string& rule_template(const std::string& key) const;
    const std::string& intuitive_template(const std::string& key) const;
    const std::string& phrase(const std::string& key) const;

    std::string sort_phrase(const Sort& s, bool plural) const;
};

/// Placeholder names each template key may use.
const std::map<std::string, std::set<std::string>>& catalog_placeholders();

/// Replaces `{name}` by values[name]; unknown names are left untouched.
std::string fill(const std::string& tmpl, const std::map<std::string, std::string>& values);

// ---------------------------------------------------------------------------
// Documents
// ---------------------------------------------------------------------------

struct EquationalChain {
    enum class Side { Lhs, Rhs, Forward };

    Side side = Side::Lhs;
    std::string prefix;  // forward chains: fixed part printed before t0, e.g. "0 ≠ "
    std::string hypothesis;
    std::vector<Term> terms;         // t0 .. tk
    std::vector<std::string> hints;  // j1 .. jk; empty hint = unlabelled step
    std::vector<int> nodes;          // rewrite node per step (-1 for unlabelled steps)
    bool met = false;                // closed by reflexivity
};

std::string print(const EquationalChain& c, Notation n = Notation::Unicode);

struct Block {
    int depth = 0;
    std::optional<char> marker;
    std::string text;
    std::vector<int> nodes;  // trace step ids covered by this block
    std::vector<std::string> justifications;
    std::vector<EquationalChain> chains;
    std::string kind;  // "comment", "group", "analogy", "theorem", "proof", "line"
};

struct RenderedDocument {
    FormalityLevel level = FormalityLevel::LineByLine;
    std::string theorem;
    std::vector<Block> blocks;
};

/// Plain text: one paragraph per block, indented by depth with its marker.
std::string to_text(const RenderedDocument& doc);
/// One JSON record per block.
std::string to_jsonl(const RenderedDocument& doc);

// ---------------------------------------------------------------------------
// Condensation and analogy
// ---------------------------------------------------------------------------

struct GroupedBranch;

/// A node of the condensed tree: a single tactic node or a run of
/// consecutive same-class nodes. Children hang off the last member.
struct GroupedNode {
    std::string cls;  // "intro", "use_all", "use_and" or the tactic name
    std::vector<TraceNode> members;
    std::vector<GroupedBranch> children;

    bool is_group() const { return members.size() > 1; }
    const TraceNode& last() const { return members.back(); }
};

struct GroupedBranch {
    std::optional<char> marker;
    std::vector<GroupedNode> nodes;
};

/// Condensation class of a tactic, or empty if it never condenses.
std::string condense_class(TacticKind k);
std::vector<GroupedNode> condense_runs(const std::vector<TraceNode>& branch);
std::vector<GroupedNode> condense_runs(const ProofTrace& trace);

struct AnalogyReport {
    std::size_t reference = 0;  // sibling index of the commented branch
    std::size_t analogous = 0;
    std::map<std::string, std::string> sigma;                  // symbol renaming
    std::vector<std::pair<std::string, std::string>> shown;    // printed replacement pairs
    std::vector<Formula> fixed;                                // formulas kept despite sigma
    std::vector<std::pair<TacticKind, TacticKind>> swaps;      // tactic kind exceptions
};

/// Tests two sibling branches for analogy. Verifies the result by replaying the
/// transformed reference steps on the analogous branch's recorded states.
std::optional<AnalogyReport> detect_analogy(const Branch& reference, const Branch& other, const Environment& env);

/// The reference branch with sigma, fixed formulas and swaps applied.
Branch apply_analogy(const AnalogyReport& report, const Branch& reference);

/// Renders the analogy sentence.
std::string analogy_text(const AnalogyReport& report, const Catalog& cat);

/// Whether analogies are looked for below nodes of this kind.
bool analogy_candidate(TacticKind k);

// ---------------------------------------------------------------------------
// Chains
// ---------------------------------------------------------------------------

/// Chains of consecutive rewrites, per side, in first-touch order over the whole trace.
std::vector<EquationalChain> extract_chains(const ProofTrace& trace);

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

RenderedDocument render_level0(const ProofTrace& trace);
RenderedDocument render_level1(const ProofTrace& trace, const Catalog& cat);
RenderedDocument render_level2(const ProofTrace& trace, const Catalog& cat);
RenderedDocument render_level3(const ProofTrace& trace, const Catalog& cat);
RenderedDocument render(FormalityLevel level, const ProofTrace& trace, const Catalog& cat = Catalog::builtin());

/// Level-1 comment blocks for a list of branches (the building block of level 1).
std::vector<Block> level1_blocks(const std::vector<TraceNode>& roots, const Catalog& cat, int depth = 0,
                                 std::optional<char> marker = std::nullopt);

/// Reconstructs the level-1 blocks from the level-2 plan alone: groups are
/// split into their members and every analogy block is replaced by the
/// transformed reference branch.
std::vector<Block> revert_level2(const ProofTrace& trace, const Catalog& cat);

/// Compact one-line summary of a proof state.
std::string state_digest(const ProofState& s);

}  // namespace fpf
