#include "internal.hpp"

namespace fpf::detail {

namespace {

const Formula& hyp_statement(const TraceNode& n, const std::string& name) {
    static const Formula none = Formula::falsity();
    const ContextEntry* e = n.goal_before().context.hypothesis(name);
    return e ? e->statement : none;
}

std::string produced_hyp(const TraceNode& n, const std::string& name) {
    const Goal* g = produced_goal(n);
    if (!g) return "";
    const ContextEntry* e = g->context.hypothesis(name);
    return e ? print(e->statement) : "";
}

std::string arg_name(const TraceNode& n, std::size_t i) {
    return i < n.line.args.size() ? print(n.line.args[i]) : "";
}

}  // namespace

const Goal* produced_goal(const TraceNode& n, std::size_t i) {
    if (i >= n.produced.size()) return nullptr;
    for (const auto& g : n.after.focus) {
        if (g.id == n.produced[i]) return &g;
    }
    return nullptr;
}

std::string template_key(const TraceNode& n) {
    if (n.line.kind == TacticKind::Rewrite) {
        if (n.line.target) return "rewrite_in";
        if (n.rewrite && !n.rewrite->side_conditions.empty()) return "rewrite_conditional";
    }
    if (n.line.kind == TacticKind::Unfold && n.line.target) return "unfold_in";
    return std::string(tactic_name(n.line.kind));
}

bool formula_placeholder(const std::string& name) {
    static const std::set<std::string> names{"premise", "goal", "target", "left", "right", "formula",
                                             "f1",      "f2",   "conditions"};
    return names.count(name) > 0;
}

std::string noun(const Formula& f, const Catalog& cat) {
    switch (f.kind) {
        case Formula::Kind::And: return cat.phrase("noun_and");
        case Formula::Kind::Or: return cat.phrase("noun_or");
        case Formula::Kind::Imp: return cat.phrase("noun_imp");
        case Formula::Kind::Eq: return cat.phrase("noun_eq");
        case Formula::Kind::Not: return f.is_neq() ? cat.phrase("noun_eq") : cat.phrase("noun_not");
        default: return cat.phrase("noun_other");
    }
}

std::string join_list(const std::vector<std::string>& items, const Catalog& cat) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i > 0) out += i + 1 == items.size() ? " " + cat.phrase("and") + " " : ", ";
        out += items[i];
    }
    return out;
}

Values node_values(const TraceNode& n, const Catalog& cat, const Environment* env) {
    Values v;
    const Goal& g = n.goal_before();
    const Formula& t = g.target;
    const Goal* out = produced_goal(n);
    if (out) v["goal"] = print(out->target);
    v["target"] = print(t);
    auto hyp = [&](std::size_t i) {
        v["hyp"] = arg_name(n, i);
        v["formula"] = print(hyp_statement(n, v["hyp"]));
    };
    switch (n.line.kind) {
        case TacticKind::ProveImp:
        case TacticKind::ProveNot:
            v["hyp"] = arg_name(n, 0);
            v["premise"] = print(t.left());
            break;
        case TacticKind::ProveAll:
            v["var"] = arg_name(n, 0);
            v["sort"] = print(t.sort);
            v["sort_phrase"] = cat.sort_phrase(t.sort, false);
            break;
        case TacticKind::ProveAnd:
            v["left"] = print(t.left());
            v["right"] = print(t.right());
            break;
        case TacticKind::ProveOrLeft:
        case TacticKind::ProveOrRight:
            break;
        case TacticKind::ProveExists:
            v["term"] = arg_name(n, 0);
            break;
        case TacticKind::UseAnd:
            hyp(0);
            v["h1"] = arg_name(n, 1);
            v["h2"] = arg_name(n, 2);
            v["f1"] = produced_hyp(n, v["h1"]);
            v["f2"] = produced_hyp(n, v["h2"]);
            break;
        case TacticKind::UseOr: {
            hyp(0);
            const Formula& f = hyp_statement(n, v["hyp"]);
            if (f.is(Formula::Kind::Or)) {
                v["left"] = print(f.left());
                v["right"] = print(f.right());
            }
            break;
        }
        case TacticKind::UseExists: {
            hyp(0);
            const Formula& f = hyp_statement(n, v["hyp"]);
            v["var"] = arg_name(n, 1);
            v["sort"] = f.is_quantifier() ? print(f.sort) : "";
            v["h1"] = arg_name(n, 2);
            v["f1"] = produced_hyp(n, v["h1"]);
            break;
        }
        case TacticKind::UseAll:
            hyp(0);
            v["term"] = arg_name(n, 1);
            v["h1"] = arg_name(n, 2);
            v["f1"] = produced_hyp(n, v["h1"]);
            break;
        case TacticKind::UseImp:
            hyp(0);
            v["arg"] = arg_name(n, 1);
            v["premise"] = print(hyp_statement(n, v["arg"]));
            v["h1"] = arg_name(n, 2);
            v["f1"] = produced_hyp(n, v["h1"]);
            break;
        case TacticKind::UseFalse:
            v["hyp"] = arg_name(n, 0);
            break;
        case TacticKind::UseNot:
            hyp(0);
            v["arg"] = arg_name(n, 1);
            v["premise"] = print(hyp_statement(n, v["arg"]));
            break;
        case TacticKind::UseTheorem:
            v["theorem"] = arg_name(n, 0);
            v["h1"] = arg_name(n, n.line.args.size() - 1);
            v["f1"] = produced_hyp(n, v["h1"]);
            break;
        case TacticKind::Rewrite: {
            const RewriteInfo& r = *n.rewrite;
            std::string src = r.justification;
            for (std::size_t i = 1; i < n.line.args.size(); ++i) {
                const Term& a = n.line.args[i];
                const bool paren = !a.args.empty();
                src += paren ? " (" + print(a) + ")" : " " + print(a);
            }
            v["source"] = src;
            v["label"] = r.label;
            v["from"] = print(r.equation.lhs());
            v["to"] = print(r.equation.rhs());
            if (r.in_hypothesis) {
                v["hyp"] = *r.in_hypothesis;
                v["f1"] = produced_hyp(n, *r.in_hypothesis);
            }
            std::vector<std::string> cs;
            for (const auto& c : r.side_conditions) cs.push_back(print(c));
            v["conditions"] = join_list(cs, cat);
            break;
        }
        case TacticKind::Unfold:
            v["fn"] = arg_name(n, 0);
            if (n.line.target) {
                v["hyp"] = *n.line.target;
                v["f1"] = produced_hyp(n, *n.line.target);
            }
            break;
        case TacticKind::Case: {
            v["hyp"] = arg_name(n, 1);
            std::vector<std::string> cases;
            for (std::size_t i = 0; i < n.produced.size(); ++i) {
                const Goal* pg = produced_goal(n, i);
                const ContextEntry* e = pg ? pg->context.hypothesis(v["hyp"]) : nullptr;
                if (!e) continue;
                if (i == 0) {
                    v["term"] = print(e->statement.lhs());
                    const Term& rhs = e->statement.rhs();
                    if (env && env->signature.constructors.count(rhs.name)) {
                        v["type"] = print(Sort(env->signature.constructors.at(rhs.name).type));
                    } else if (rhs.is_num() || rhs.name == kZero || rhs.name == kSuc) {
                        v["type"] = print(Sort(std::string(kNatSort)));
                    }
                }
                cases.push_back(print(e->statement));
            }
            v["cases"] = join_list(cases, cat);
            break;
        }
        case TacticKind::Induction: {
            v["var"] = arg_name(n, 0);
            if (const ContextEntry* e = g.context.variable(v["var"])) v["type"] = print(e->sort);
            std::vector<std::string> cases;
            for (std::size_t i = 0; i < n.produced.size(); ++i) {
                if (const Goal* pg = produced_goal(n, i)) cases.push_back(print(pg->target));
            }
            v["cases"] = join_list(cases, cat);
            break;
        }
        case TacticKind::Assumption:
            v["hyp"] = n.used_hypothesis;
            v["goal"] = print(t);
            break;
        case TacticKind::Reflexivity:
            v["goal"] = print(t);
            break;
        case TacticKind::Bullet:
            break;
    }
    return v;
}

std::vector<std::string> node_justifications(const TraceNode& n) {
    switch (n.line.kind) {
        case TacticKind::Rewrite: return {n.rewrite->justification};
        case TacticKind::UseTheorem: return {arg_name(n, 0)};
        case TacticKind::Unfold: return {arg_name(n, 0)};
        case TacticKind::Assumption: return {n.used_hypothesis};
        default: return {};
    }
}

std::string rule_text(const TraceNode& n, const Catalog& cat, const Environment* env) {
    return fill(cat.rule_template(template_key(n)), node_values(n, cat, env));
}

bool is_closer(TacticKind k) {
    return k == TacticKind::Assumption || k == TacticKind::Reflexivity || k == TacticKind::UseFalse ||
           k == TacticKind::UseNot;
}

std::string closer_suffix(TacticKind k, const Catalog& cat) {
    switch (k) {
        case TacticKind::Assumption: return cat.phrase("suffix_assumption");
        case TacticKind::Reflexivity: return cat.phrase("suffix_reflexivity");
        case TacticKind::UseFalse: return cat.phrase("suffix_use_false");
        case TacticKind::UseNot: return cat.phrase("suffix_use_not");
        default: return "";
    }
}

void append_suffix(std::string& text, const std::string& suffix) {
    if (suffix.empty()) return;
    std::string body = suffix;
    if (!body.empty() && body.back() == '.') body.pop_back();
    if (text.size() >= body.size() && text.find(body) != std::string::npos) return;
    if (!text.empty() && text.back() == '.') text.pop_back();
    text += suffix;
}

std::string group_text(const GroupedNode& grp, const Catalog& cat) {
    std::vector<Values> vals;
    for (const auto& m : grp.members) vals.push_back(node_values(m, cat));
    std::string goal;
    if (const Goal* g = produced_goal(grp.last())) goal = print(g->target);
    if (grp.cls == "intro") {
        std::vector<std::string> items, premises;
        std::vector<std::string> names;
        const Sort* sort = nullptr;
        auto flush = [&] {
            if (names.empty()) return;
            items.push_back(fill(cat.phrase("group_var_item"),
                                 {{"names", join_list(names, cat)}, {"phrase", cat.sort_phrase(*sort, names.size() > 1)}}));
            names.clear();
        };
        for (const auto& m : grp.members) {
            if (m.line.kind == TacticKind::ProveAll) {
                const Sort& s = m.goal_before().target.sort;
                if (sort && !(*sort == s)) flush();
                sort = &s;
                names.push_back(print(m.line.args[0]));
            } else {
                flush();
                premises.push_back(print(m.goal_before().target.left()));
            }
        }
        flush();
        std::string vars;
        for (std::size_t i = 0; i < items.size(); ++i) vars += (i ? ", " : "") + items[i];
        const std::string ps = join_list(premises, cat);
        if (premises.empty()) return fill(cat.phrase("group_vars"), {{"vars", vars}, {"goal", goal}});
        if (items.empty()) return fill(cat.phrase("group_assume"), {{"premises", ps}, {"goal", goal}});
        return fill(cat.phrase("group_intro"), {{"vars", vars}, {"premises", ps}, {"goal", goal}});
    }
    std::vector<std::string> facts, formulas;
    for (const auto& v : vals) {
        facts.push_back(v.at("f1"));
        if (grp.cls == "use_and") {
            facts.push_back(v.at("f2"));
            formulas.push_back(v.at("formula"));
        }
    }
    if (grp.cls == "use_and") {
        return fill(cat.phrase("group_use_and"), {{"formulas", join_list(formulas, cat)}, {"facts", join_list(facts, cat)}});
    }
    return fill(cat.phrase("group_use_all"), {{"facts", join_list(facts, cat)}});
}

}  // namespace fpf::detail
