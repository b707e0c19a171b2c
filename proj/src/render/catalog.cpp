#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fpf/render.hpp"

namespace fpf {

namespace embedded {
extern const std::pair<std::string_view, std::string_view> data_files[];
extern const int data_files_count;
}  // namespace embedded

namespace {

using Names = std::set<std::string>;

const std::map<std::string, Names>& tactic_placeholders() {
    static const std::map<std::string, Names> table{
        {"prove_imp", {"hyp", "premise", "goal"}},
        {"prove_all", {"var", "sort", "sort_phrase", "goal"}},
        {"prove_not", {"hyp", "premise"}},
        {"prove_and", {"target", "left", "right"}},
        {"prove_or_left", {"target", "goal"}},
        {"prove_or_right", {"target", "goal"}},
        {"prove_exists", {"term", "target", "goal"}},
        {"use_and", {"hyp", "formula", "h1", "f1", "h2", "f2"}},
        {"use_or", {"hyp", "formula", "left", "right"}},
        {"use_exists", {"hyp", "formula", "var", "sort", "h1", "f1"}},
        {"use_all", {"hyp", "formula", "term", "h1", "f1"}},
        {"use_imp", {"hyp", "formula", "arg", "premise", "h1", "f1"}},
        {"use_false", {"hyp"}},
        {"use_not", {"hyp", "formula", "arg", "premise"}},
        {"use_theorem", {"theorem", "h1", "f1"}},
        {"rewrite", {"source", "label", "from", "to", "goal"}},
        {"rewrite_in", {"source", "label", "from", "to", "hyp", "f1"}},
        {"rewrite_conditional", {"source", "label", "from", "to", "goal", "conditions"}},
        {"unfold", {"fn", "goal"}},
        {"unfold_in", {"fn", "hyp", "f1"}},
        {"case", {"term", "type", "hyp", "cases"}},
        {"induction", {"var", "type", "cases"}},
        {"assumption", {"hyp", "goal"}},
        {"reflexivity", {"goal"}},
    };
    return table;
}

const std::map<std::string, Names>& phrase_placeholders() {
    static const std::map<std::string, Names> table{
        {"and", {}},
        {"pronoun", {}},
        {"group_intro", {"vars", "premises", "goal"}},
        {"group_vars", {"vars", "goal"}},
        {"group_assume", {"premises", "goal"}},
        {"group_var_item", {"names", "phrase"}},
        {"group_use_all", {"facts"}},
        {"group_use_and", {"formulas", "facts"}},
        {"suffix_assumption", {}},
        {"suffix_reflexivity", {}},
        {"suffix_use_false", {}},
        {"suffix_use_not", {}},
        {"analogy_intro", {}},
        {"analogy_replace", {"from", "to"}},
        {"analogy_except", {"fixed"}},
        {"analogy_fixed_item", {"noun", "formula"}},
        {"analogy_swap_left", {}},
        {"analogy_swap_right", {}},
        {"noun_and", {}},
        {"noun_or", {}},
        {"noun_imp", {}},
        {"noun_not", {}},
        {"noun_eq", {}},
        {"noun_other", {}},
        {"l3_theorem", {"statement"}},
        {"l3_proof", {}},
        {"l3_qed", {}},
        {"l3_use_or", {}},
        {"l3_or_branch", {"hyp", "goal"}},
        {"l3_case", {"type", "disjunction", "article"}},
        {"l3_case_first", {}},
        {"l3_case_again", {}},
        {"l3_case_branch", {"eq"}},
        {"l3_case_branch_vars", {"eq", "vars"}},
        {"l3_induction", {"var"}},
        {"l3_induction_base", {"goal"}},
        {"l3_induction_step", {"ihs", "goal"}},
        {"l3_and", {}},
        {"l3_and_branch", {"goal"}},
        {"l3_conditional", {"conditions", "chain"}},
        {"l3_conditional_close", {}},
        {"l3_remains", {"condition"}},
        {"l3_lhs", {"chain"}},
        {"l3_rhs", {"chain"}},
        {"l3_same", {}},
        {"l3_meets_rhs", {}},
        {"l3_meets_lhs", {}},
        {"l3_fact", {"fact"}},
        {"l3_fact_first", {"fact"}},
        {"l3_fact_second", {"fact"}},
        {"l3_derived", {"premise", "theorem", "fact"}},
        {"l3_modus_ponens", {"premise", "fact"}},
        {"l3_computation", {}},
        {"l3_prove_not", {"premise"}},
    };
    return table;
}

const Names kRequiredSorts{"Type", "Prop", "predicate", "function", "default"};

[[noreturn]] void bad(const std::string& why) { throw Error(ErrorCode::IoError, {}, "invalid catalog: " + why); }

Names placeholders_in(const std::string& tmpl) {
    Names out;
    std::size_t pos = 0;
    while ((pos = tmpl.find('{', pos)) != std::string::npos) {
        std::size_t end = tmpl.find('}', pos);
        if (end == std::string::npos) break;
        out.insert(tmpl.substr(pos + 1, end - pos - 1));
        pos = end + 1;
    }
    return out;
}

void check_section(const nlohmann::json& j, const char* section, const std::map<std::string, Names>& allowed,
                   std::map<std::string, std::string>& out) {
    if (!j.contains(section) || !j[section].is_object()) bad(std::string("missing section ") + section);
    for (const auto& [key, names] : allowed) {
        if (!j[section].contains(key) || !j[section][key].is_string()) bad(std::string(section) + "." + key + " is missing");
        std::string tmpl = j[section][key].get<std::string>();
        for (const auto& p : placeholders_in(tmpl)) {
            if (!names.count(p)) bad(std::string(section) + "." + key + " uses unknown placeholder {" + p + "}");
        }
        out[key] = std::move(tmpl);
    }
}

}  // namespace

const std::map<std::string, std::set<std::string>>& catalog_placeholders() {
    static const std::map<std::string, std::set<std::string>> all = [] {
        auto m = tactic_placeholders();
        for (const auto& [k, v] : phrase_placeholders()) m[k] = v;
        return m;
    }();
    return all;
}

std::optional<FormalityLevel> level_from_int(int level) {
    if (level < 0 || level > 3) return std::nullopt;
    return static_cast<FormalityLevel>(level);
}

std::string fill(const std::string& tmpl, const std::map<std::string, std::string>& values) {
    std::string out;
    out.reserve(tmpl.size() + 32);
    std::size_t i = 0;
    while (i < tmpl.size()) {
        if (tmpl[i] == '{') {
            std::size_t end = tmpl.find('}', i);
            if (end != std::string::npos) {
                auto it = values.find(tmpl.substr(i + 1, end - i - 1));
                if (it != values.end()) {
                    out += it->second;
                    i = end + 1;
                    continue;
                }
            }
        }
        out += tmpl[i++];
    }
    return out;
}

Catalog Catalog::from_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        bad(e.what());
    }
    if (!j.is_object()) bad("top level must be an object");
    if (j.value("version", 0) != 1) bad("unsupported version");
    Catalog c;
    check_section(j, "rule", tactic_placeholders(), c.rule);
    check_section(j, "intuitive", tactic_placeholders(), c.intuitive);
    check_section(j, "phrases", phrase_placeholders(), c.phrases);
    for (TacticKind k : all_tactic_kinds()) {
        const std::string name(tactic_name(k));
        if (!c.rule.count(name) || !c.intuitive.count(name)) bad("no templates for " + name);
    }
    if (!j.contains("sorts") || !j["sorts"].is_object()) bad("missing section sorts");
    for (const auto& [key, v] : j["sorts"].items()) {
        if (!v.is_array() || v.size() != 2 || !v[0].is_string() || !v[1].is_string()) {
            bad("sorts." + key + " must be [singular, plural]");
        }
        c.sorts[key] = {v[0].get<std::string>(), v[1].get<std::string>()};
    }
    for (const auto& k : kRequiredSorts) {
        if (!c.sorts.count(k)) bad("sorts." + k + " is missing");
    }
    if (j.contains("options")) {
        const std::string rep = j["options"].value("repetition", "pronoun");
        if (rep != "pronoun" && rep != "off") bad("options.repetition must be \"pronoun\" or \"off\"");
        c.pronouns = rep == "pronoun";
    }
    return c;
}

Catalog Catalog::from_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, {}, "cannot read catalog " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_json(ss.str());
}

const Catalog& Catalog::builtin() {
    static const Catalog cat = [] {
        for (int i = 0; i < embedded::data_files_count; ++i) {
            if (embedded::data_files[i].first == "catalog.json") return from_json(embedded::data_files[i].second);
        }
        bad("built-in catalog missing");
    }();
    return cat;
}

const std::string& Catalog::rule_template(const std::string& key) const { return rule.at(key); }
const std::string& Catalog::intuitive_template(const std::string& key) const { return intuitive.at(key); }
const std::string& Catalog::phrase(const std::string& key) const { return phrases.at(key); }

std::string Catalog::sort_phrase(const Sort& s, bool plural) const {
    auto pick = [&](const SortPhrase& p) { return plural ? p.plural : p.singular; };
    if (s.is_predicate() && s.arity() == 1) {
        return fill(pick(sorts.at("predicate")), {{"arg", print(Sort(s.parts[0]))}, {"sort", print(s)}});
    }
    if (s.is_arrow() && !s.is_predicate()) return fill(pick(sorts.at("function")), {{"sort", print(s)}});
    if (!s.is_arrow()) {
        if (auto it = sorts.find(s.result()); it != sorts.end()) return pick(it->second);
    }
    return fill(pick(sorts.at("default")), {{"sort", print(s)}});
}

}  // namespace fpf
