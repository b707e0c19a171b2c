#include <algorithm>

#include "internal.hpp"

namespace fpf {

std::string print(const EquationalChain& c, Notation n) {
    if (c.terms.empty()) return c.prefix;
    std::string out = c.prefix + print(c.terms[0], n);
    for (std::size_t i = 1; i < c.terms.size(); ++i) {
        const std::string& h = c.hints[i - 1];
        out += h.empty() ? " = " : " ={" + h + "}= ";
        out += print(c.terms[i], n);
    }
    return out;
}

namespace {

using Side = EquationalChain::Side;
using detail::Values;

// A hypothesis derived or modified by forward reasoning inside one segment.
struct Fact {
    std::string hyp;
    Formula statement;
    std::optional<EquationalChain> chain;
    std::string premise;  // use_imp: printed premise
    std::string theorem;  // set when the implication came from use_theorem
    bool lone_theorem = false;
    bool consumed = false;
    int node = -1;
    RedexSide chain_side = RedexSide::Whole;
};

struct Segment {
    std::vector<std::string> sentences;
    std::vector<EquationalChain> chains;
    std::vector<std::string> justifications;
    std::vector<int> nodes;
    std::vector<EquationalChain> run;  // open goal chains, first-touch order
    std::size_t run_last = 0;          // index of the chain touched last
    std::vector<Fact> facts;
};

void add_step(EquationalChain& c, const Term& t, const std::string& hint, int node) {
    c.terms.push_back(t);
    c.hints.push_back(hint);
    c.nodes.push_back(node);
}

std::string op_of(const Formula& f) { return f.is_neq() ? " ≠ " : " = "; }

struct Level3 {
    const Catalog& cat;
    const Environment* env;
    std::vector<Block> blocks;
    bool case_seen = false;

    std::string text(const TraceNode& n) { return fill(cat.intuitive_template(detail::template_key(n)), detail::node_values(n, cat, env)); }

    void cite(Segment& s, const EquationalChain& c) {
        for (const auto& h : c.hints) {
            if (!h.empty()) s.justifications.push_back(h);
        }
    }

    void flush_run(Segment& s, const TraceNode* closing) {
        if (s.run.empty()) return;
        EquationalChain* lhs = nullptr;
        EquationalChain* rhs = nullptr;
        for (auto& c : s.run) (c.side == Side::Lhs ? lhs : rhs) = &c;
        std::string suffix;
        if (closing) {
            const Formula& g = closing->goal_before().target;
            const std::string l = print(g.lhs()), r = print(g.rhs());
            EquationalChain* last = &s.run[s.run_last];
            if (l != r) {
                add_step(*last, last == lhs ? g.rhs() : g.lhs(), "", -1);
            }
            for (auto& c : s.run) c.met = true;
            if (lhs && rhs) {
                suffix = cat.phrase("l3_same");
            } else {
                suffix = lhs ? cat.phrase("l3_meets_rhs") : cat.phrase("l3_meets_lhs");
            }
            s.nodes.push_back(closing->id);
        }
        for (const auto& c : s.run) {
            s.sentences.push_back(fill(cat.phrase(c.side == Side::Lhs ? "l3_lhs" : "l3_rhs"), {{"chain", print(c)}}));
            cite(s, c);
            s.chains.push_back(c);
        }
        if (!suffix.empty()) {
            if (lhs && rhs) {
                s.sentences.push_back(suffix);
            } else {
                detail::append_suffix(s.sentences.back(), suffix);
            }
        }
        s.run.clear();
    }

    std::string fact_text(const Fact& f) {
        std::string core = f.chain ? print(*f.chain) : print(f.statement);
        if (!f.theorem.empty()) {
            return fill(cat.phrase("l3_derived"), {{"premise", f.premise}, {"theorem", f.theorem}, {"fact", core}});
        }
        if (!f.premise.empty()) return fill(cat.phrase("l3_modus_ponens"), {{"premise", f.premise}, {"fact", core}});
        return core;
    }

    void flush_facts(Segment& s) {
        std::vector<const Fact*> shown;
        for (const auto& f : s.facts) {
            if (!f.consumed) shown.push_back(&f);
        }
        std::size_t k = 0;
        const std::size_t total = std::count_if(shown.begin(), shown.end(), [](const Fact* f) { return !f->lone_theorem; });
        for (const Fact* f : shown) {
            if (f->chain) {
                cite(s, *f->chain);
                s.chains.push_back(*f->chain);
            }
            if (!f->theorem.empty()) s.justifications.push_back(f->theorem);
            if (f->lone_theorem) {
                s.sentences.push_back(fill(cat.intuitive_template("use_theorem"),
                                           {{"theorem", f->theorem}, {"f1", print(f->statement)}, {"h1", f->hyp}}));
                continue;
            }
            const char* key = total == 2 ? (k == 0 ? "l3_fact_first" : "l3_fact_second") : "l3_fact";
            s.sentences.push_back(fill(cat.phrase(key), {{"fact", fact_text(*f)}}));
            ++k;
        }
        s.facts.clear();
    }

    void flush(Segment& s) {
        flush_run(s, nullptr);
        flush_facts(s);
    }

    Fact* fact_for(Segment& s, const std::string& hyp) {
        for (auto it = s.facts.rbegin(); it != s.facts.rend(); ++it) {
            if (it->hyp == hyp && !it->consumed) return &*it;
        }
        return nullptr;
    }

    void closer(Segment& s, const TraceNode& n) {
        if (n.line.kind == TacticKind::Reflexivity) {
            if (!s.run.empty()) {
                flush_facts(s);
                flush_run(s, &n);
                return;
            }
            flush(s);
            s.nodes.push_back(n.id);
            s.sentences.push_back(cat.phrase("l3_computation"));
            return;
        }
        flush(s);
        s.nodes.push_back(n.id);
        if (s.sentences.empty()) {
            s.sentences.push_back(text(n));
        } else {
            detail::append_suffix(s.sentences.back(), detail::closer_suffix(n.line.kind, cat));
        }
    }

    void forward_rewrite(Segment& s, const TraceNode& n) {
        const RewriteInfo& r = *n.rewrite;
        const std::string& h = *r.in_hypothesis;
        const Goal* after = detail::produced_goal(n);
        const Formula& now = after->context.hypothesis(h)->statement;
        Fact* f = fact_for(s, h);
        if (!f) {
            s.facts.push_back({h, n.goal_before().context.hypothesis(h)->statement, {}, "", "", false, false, n.id});
            f = &s.facts.back();
        }
        f->lone_theorem = false;
        const bool extend = f->chain && f->chain_side == r.side;
        if (!extend) {
            if (f->chain) {
                Fact copy = *f;
                copy.chain.reset();
                copy.premise.clear();
                copy.theorem.clear();
                copy.statement = f->statement;
                s.facts.push_back(copy);
                f = &s.facts.back();
            }
            EquationalChain c;
            c.side = Side::Forward;
            c.hypothesis = h;
            const Formula& eq = f->statement.is_neq() ? f->statement.body() : f->statement;
            c.prefix = r.side == RedexSide::Lhs ? print(eq.rhs()) + op_of(f->statement) : print(eq.lhs()) + op_of(f->statement);
            c.terms.push_back(r.before);
            f->chain = c;
            f->chain_side = r.side;
        }
        add_step(*f->chain, r.after, r.label, n.id);
        f->statement = now;
    }

    void node(Segment& s, const GroupedNode& g) {
        const TraceNode& n = g.last();
        for (const auto& m : g.members) {
            if (!detail::is_closer(m.line.kind)) s.nodes.push_back(m.id);
        }
        if (g.is_group()) {
            flush(s);
            s.sentences.push_back(detail::group_text(g, cat));
            return;
        }
        const Values v = detail::node_values(n, cat, env);
        switch (n.line.kind) {
            case TacticKind::Rewrite: {
                const RewriteInfo& r = *n.rewrite;
                if (!r.side_conditions.empty()) {
                    flush(s);
                    return;
                }
                if (r.in_hypothesis && r.side != RedexSide::Whole) {
                    flush_run(s, nullptr);
                    forward_rewrite(s, n);
                    return;
                }
                if (r.in_hypothesis || r.side == RedexSide::Whole) break;
                flush_facts(s);
                const Side side = r.side == RedexSide::Lhs ? Side::Lhs : Side::Rhs;
                std::size_t k = 0;
                while (k < s.run.size() && s.run[k].side != side) ++k;
                if (k == s.run.size()) {
                    s.run.push_back({});
                    s.run[k].side = side;
                    s.run[k].terms.push_back(r.before);
                }
                add_step(s.run[k], r.after, r.label, n.id);
                s.run_last = k;
                return;
            }
            case TacticKind::UseTheorem:
                flush_run(s, nullptr);
                s.facts.push_back({v.at("h1"), detail::produced_goal(n)->context.hypothesis(v.at("h1"))->statement, {},
                                   "", v.at("theorem"), true, false, n.id});
                return;
            case TacticKind::UseImp: {
                flush_run(s, nullptr);
                Fact f{v.at("h1"), detail::produced_goal(n)->context.hypothesis(v.at("h1"))->statement, {},
                       v.at("premise"), "", false, false, n.id};
                if (Fact* src = fact_for(s, v.at("hyp")); src && src->lone_theorem) {
                    src->consumed = true;
                    f.theorem = src->theorem;
                }
                s.facts.push_back(std::move(f));
                return;
            }
            case TacticKind::Assumption:
            case TacticKind::Reflexivity:
            case TacticKind::UseFalse:
            case TacticKind::UseNot:
                closer(s, n);
                return;
            case TacticKind::ProveNot:
                flush(s);
                s.sentences.push_back(fill(cat.phrase("l3_prove_not"), {{"premise", v.at("premise")}}));
                return;
            case TacticKind::Unfold:
                flush(s);
                s.sentences.push_back(text(n));
                return;
            default:
                break;
        }
        flush(s);
        s.sentences.push_back(text(n));
        for (const auto& j : detail::node_justifications(n)) {
            if (n.line.kind != TacticKind::Assumption) s.justifications.push_back(j);
        }
    }

    std::string disjunction(const TraceNode& n, const std::string& hyp) {
        std::string out;
        for (std::size_t i = 0; i < n.produced.size(); ++i) {
            const Goal* g = detail::produced_goal(n, i);
            const Formula& eq = g->context.hypothesis(hyp)->statement;
            std::vector<std::pair<std::string, Sort>> vars;
            for (const auto& e : g->context.entries) {
                if (!e.is_hypothesis && !n.goal_before().context.variable(e.name)) vars.emplace_back(e.name, e.sort);
            }
            Formula f = eq;
            for (auto it = vars.rbegin(); it != vars.rend(); ++it) f = Formula::exists(it->first, it->second, f);
            if (i) out += " ∨ ";
            out += vars.empty() ? print(f) : "(" + print(f) + ")";
        }
        return out;
    }

    std::string new_vars(const TraceNode& n, const Goal& g) {
        std::vector<std::string> vs;
        for (const auto& e : g.context.entries) {
            if (!e.is_hypothesis && !n.goal_before().context.variable(e.name)) vs.push_back(e.name + " : " + print(e.sort));
        }
        return detail::join_list(vs, cat);
    }

    // Sentence for a branching node, said before its children.
    void branching(Segment& s, const TraceNode& n) {
        const Values v = detail::node_values(n, cat, env);
        switch (n.line.kind) {
            case TacticKind::UseOr:
                case_seen = true;
                s.sentences.push_back(cat.phrase("l3_use_or"));
                return;
            case TacticKind::Case:
                s.sentences.push_back(fill(cat.phrase("l3_case"),
                                           {{"type", v.at("type")},
                                            {"disjunction", disjunction(n, v.at("hyp"))},
                                            {"article", cat.phrase(case_seen ? "l3_case_again" : "l3_case_first")}}));
                case_seen = true;
                return;
            case TacticKind::Induction:
                s.sentences.push_back(fill(cat.phrase("l3_induction"), {{"var", v.at("var")}}));
                return;
            case TacticKind::ProveAnd:
                s.sentences.push_back(cat.phrase("l3_and"));
                return;
            case TacticKind::Rewrite:
                if (!n.rewrite->side_conditions.empty() && !n.rewrite->in_hypothesis) return;
                [[fallthrough]];
            default:
                s.sentences.push_back(text(n));
        }
    }

    // Opening sentences of child c; may consume leading nodes of the child.
    std::size_t opener(Segment& s, const TraceNode& parent, std::size_t c) {
        const Branch& b = parent.children[c];
        const Goal* g = detail::produced_goal(parent, c);
        const std::string goal = g ? print(g->target) : "";
        const Values v = detail::node_values(parent, cat, env);
        switch (parent.line.kind) {
            case TacticKind::UseOr: {
                const std::string& h = v.at("hyp");
                s.sentences.push_back(
                    fill(cat.phrase("l3_or_branch"), {{"hyp", print(g->context.hypothesis(h)->statement)}, {"goal", goal}}));
                return 0;
            }
            case TacticKind::Case: {
                const std::string eq = print(g->context.hypothesis(v.at("hyp"))->statement);
                const std::string vars = new_vars(parent, *g);
                s.sentences.push_back(vars.empty() ? fill(cat.phrase("l3_case_branch"), {{"eq", eq}})
                                                   : fill(cat.phrase("l3_case_branch_vars"), {{"eq", eq}, {"vars", vars}}));
                return 0;
            }
            case TacticKind::Induction: {
                std::vector<std::string> ihs;
                for (const auto& e : g->context.entries) {
                    if (e.is_hypothesis && !parent.goal_before().context.hypothesis(e.name)) ihs.push_back(print(e.statement));
                }
                s.sentences.push_back(ihs.empty() ? fill(cat.phrase("l3_induction_base"), {{"goal", goal}})
                                                  : fill(cat.phrase("l3_induction_step"),
                                                         {{"ihs", detail::join_list(ihs, cat)}, {"goal", goal}}));
                return 0;
            }
            case TacticKind::Rewrite: {
                const RewriteInfo& r = *parent.rewrite;
                if (r.in_hypothesis || r.side_conditions.empty()) break;
                if (c > 0) {
                    s.sentences.push_back(fill(cat.phrase("l3_remains"), {{"condition", goal}}));
                    return 0;
                }
                std::vector<std::string> cs;
                for (const auto& x : r.side_conditions) cs.push_back(print(x));
                EquationalChain chain;
                chain.side = r.side == RedexSide::Rhs ? Side::Rhs : Side::Lhs;
                chain.terms.push_back(r.before);
                add_step(chain, r.after, r.label, parent.id);
                std::string sentence = fill(cat.phrase("l3_conditional"),
                                            {{"conditions", detail::join_list(cs, cat)}, {"chain", print(chain)}});
                std::size_t used = 0;
                if (!b.nodes.empty() && b.nodes.size() == 1 && b.nodes[0].line.kind == TacticKind::Reflexivity) {
                    chain.met = true;
                    sentence += cat.phrase("l3_conditional_close");
                    s.nodes.push_back(b.nodes[0].id);
                    used = 1;
                } else {
                    sentence += ".";
                }
                cite(s, chain);
                s.chains.push_back(chain);
                s.sentences.push_back(sentence);
                return used;
            }
            default:
                break;
        }
        s.sentences.push_back(fill(cat.phrase("l3_and_branch"), {{"goal", goal}}));
        return 0;
    }

    void emit(Segment& s, int depth, std::optional<char> marker, const std::string& kind, const std::string& lead) {
        Block b;
        b.depth = depth;
        b.marker = marker;
        b.kind = kind;
        std::string t = lead;
        for (const auto& x : s.sentences) {
            if (!t.empty()) t += ' ';
            t += x;
        }
        b.text = std::move(t);
        b.nodes = std::move(s.nodes);
        b.justifications = std::move(s.justifications);
        b.chains = std::move(s.chains);
        blocks.push_back(std::move(b));
    }

    void branch(const std::vector<TraceNode>& raw, Segment s, std::size_t skip, int depth, std::optional<char> marker,
                const std::string& kind, const std::string& lead) {
        std::vector<TraceNode> rest(raw.begin() + static_cast<std::ptrdiff_t>(skip), raw.end());
        auto grouped = condense_runs(rest);
        const TraceNode* last = nullptr;
        for (const auto& g : grouped) {
            if (g.last().branching()) {
                last = &g.last();
                s.nodes.push_back(last->id);
                continue;
            }
            node(s, g);
        }
        flush(s);
        if (last) branching(s, *last);
        emit(s, depth, marker, kind, lead);
        if (!last) return;
        for (std::size_t c = 0; c < last->children.size(); ++c) {
            const Branch& b = last->children[c];
            const std::optional<char> m = b.marker ? b.marker : std::optional<char>("+*-"[depth % 3]);
            if (c > 0 && env && analogy_candidate(last->line.kind)) {
                if (auto rep = detect_analogy(last->children[0], b, *env)) {
                    Segment a;
                    Segment open;
                    opener(open, *last, c);
                    a.sentences = open.sentences;
                    a.sentences.push_back(analogy_text(*rep, cat));
                    std::vector<int> ids;
                    collect(b.nodes, ids);
                    a.nodes = ids;
                    emit(a, depth + 1, m, "analogy", "");
                    continue;
                }
            }
            Segment child;
            const std::size_t used = opener(child, *last, c);
            branch(b.nodes, std::move(child), used, depth + 1, m, "paragraph", "");
        }
    }

    static void collect(const std::vector<TraceNode>& ns, std::vector<int>& out) {
        for (const auto& n : ns) {
            out.push_back(n.id);
            for (const auto& c : n.children) collect(c.nodes, out);
        }
    }
};

}  // namespace

RenderedDocument render_level3(const ProofTrace& trace, const Catalog& cat) {
    RenderedDocument doc;
    doc.level = FormalityLevel::StructureFaithful;
    doc.theorem = trace.theorem;
    Level3 r{cat, trace.env.get(), {}, false};
    Block head;
    head.kind = "theorem";
    head.text = fill(cat.phrase("l3_theorem"), {{"statement", print(trace.statement)}});
    r.blocks.push_back(std::move(head));
    r.branch(trace.roots, {}, 0, 0, std::nullopt, "proof", cat.phrase("l3_proof"));
    Block& last = r.blocks.back();
    last.text += " " + cat.phrase("l3_qed");
    doc.blocks = std::move(r.blocks);
    return doc;
}

std::vector<EquationalChain> extract_chains(const ProofTrace& trace) {
    std::vector<EquationalChain> out;
    for (const auto& b : render_level3(trace, Catalog::builtin()).blocks) {
        out.insert(out.end(), b.chains.begin(), b.chains.end());
    }
    return out;
}

}  // namespace fpf
