#pragma once

#include <map>
#include <string>
#include <vector>

#include "fpf/render.hpp"

namespace fpf::detail {

using Values = std::map<std::string, std::string>;

/// Goal produced by a node, by position. Null when the node closed its goal.
const Goal* produced_goal(const TraceNode& n, std::size_t i = 0);

/// Catalog key: the tactic name or one of rewrite_in / rewrite_conditional / unfold_in.
std::string template_key(const TraceNode& n);

/// Placeholder values for the node's templates.
Values node_values(const TraceNode& n, const Catalog& cat, const Environment* env = nullptr);

/// Formula-valued placeholders (candidates for the pronoun rule).
bool formula_placeholder(const std::string& name);

/// Noun for the top-level connective ("disjunction", ...).
std::string noun(const Formula& f, const Catalog& cat);

/// Names cited by a node at levels 1 and 2.
std::vector<std::string> node_justifications(const TraceNode& n);

/// "a, b and c".
std::string join_list(const std::vector<std::string>& items, const Catalog& cat);

/// Comment text for a single node in the rule register.
std::string rule_text(const TraceNode& n, const Catalog& cat, const Environment* env = nullptr);

bool is_closer(TacticKind k);
std::string closer_suffix(TacticKind k, const Catalog& cat);
/// Appends a closer suffix to a sentence, replacing its final period.
void append_suffix(std::string& text, const std::string& suffix);

/// level1_blocks with an environment for type names.
std::vector<Block> level1_blocks_env(const std::vector<TraceNode>& roots, const Catalog& cat, const Environment* env,
                                     int depth, std::optional<char> marker);

/// Text of a condensed group (intro, use_all, use_and runs).
std::string group_text(const GroupedNode& g, const Catalog& cat);

}  // namespace fpf::detail
