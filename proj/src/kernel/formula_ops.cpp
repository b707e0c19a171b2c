#include "fpf/kernel.hpp"

namespace fpf {

namespace {

bool is_identifier(const Term& t) { return t.is_var() || (t.is_app() && t.args.empty()); }

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
    for (int i = 0;; ++i) {
        std::string candidate = base + std::to_string(i);
        if (!avoid.count(candidate)) return candidate;
    }
}

void collect(const Term& t, std::set<std::string>& out) {
    if (t.is_num()) return;
    out.insert(t.name);
    for (const auto& a : t.args) collect(a, out);
}

void collect(const Formula& f, std::set<std::string>& out) {
    switch (f.kind) {
        case Formula::Kind::False:
            return;
        case Formula::Kind::Atom:
            out.insert(f.name);
            [[fallthrough]];
        case Formula::Kind::Eq:
            for (const auto& t : f.terms) collect(t, out);
            return;
        case Formula::Kind::Forall:
        case Formula::Kind::Exists: {
            for (const auto& p : f.sort.parts) out.insert(p);
            std::set<std::string> inner;
            collect(f.body(), inner);
            inner.erase(f.name);
            out.insert(inner.begin(), inner.end());
            return;
        }
        default:
            for (const auto& s : f.subs) collect(s, out);
    }
}

Sort substitute_sort(const Sort& s, const std::string& var, const Term& value) {
    if (!is_identifier(value)) return s;
    Sort r = s;
    for (auto& p : r.parts) {
        if (p == var) p = value.name;
    }
    return r;
}

}  // namespace

std::set<std::string> free_names(const Term& t) {
    std::set<std::string> out;
    collect(t, out);
    return out;
}

std::set<std::string> free_names(const Formula& f) {
    std::set<std::string> out;
    collect(f, out);
    return out;
}

bool occurs(const std::string& name, const Formula& f) { return free_names(f).count(name) > 0; }

Term substitute(const Term& t, const std::string& var, const Term& value) {
    if (t.is_num()) return t;
    if (t.is_var()) return t.name == var ? value : t;
    Term r = t;
    if (t.name == var && is_identifier(value)) r.name = value.name;
    for (auto& a : r.args) a = substitute(a, var, value);
    return r;
}

Formula substitute(const Formula& f, const std::string& var, const Term& value) {
    Formula r = f;
    switch (f.kind) {
        case Formula::Kind::False:
            return r;
        case Formula::Kind::Atom:
            if (f.name == var && is_identifier(value)) r.name = value.name;
            [[fallthrough]];
        case Formula::Kind::Eq:
            for (auto& t : r.terms) t = substitute(t, var, value);
            return r;
        case Formula::Kind::Forall:
        case Formula::Kind::Exists: {
            r.sort = substitute_sort(f.sort, var, value);
            if (f.name == var) return r;
            std::set<std::string> value_names = free_names(value);
            if (value_names.count(f.name)) {
                std::set<std::string> avoid = value_names;
                auto body_names = free_names(f.body());
                avoid.insert(body_names.begin(), body_names.end());
                avoid.insert(var);
                std::string renamed = fresh_name(f.name, avoid);
                r.name = renamed;
                r.subs[0] = substitute(f.body(), f.name, Term::var(renamed));
            }
            r.subs[0] = substitute(r.subs[0], var, value);
            return r;
        }
        default:
            for (auto& s : r.subs) s = substitute(s, var, value);
            return r;
    }
}

// ---------------------------------------------------------------------------
// equality of states and traces
// ---------------------------------------------------------------------------

bool operator==(const ContextEntry& a, const ContextEntry& b) {
    if (a.name != b.name || a.is_hypothesis != b.is_hypothesis) return false;
    return a.is_hypothesis ? alpha_equal(a.statement, b.statement) : a.sort == b.sort;
}

bool operator==(const Goal& a, const Goal& b) {
    return a.id == b.id && a.context.entries == b.context.entries && alpha_equal(a.target, b.target);
}

bool operator==(const BulletFrame& a, const BulletFrame& b) { return a.marker == b.marker && a.pending == b.pending; }

bool operator==(const ProofState& a, const ProofState& b) {
    return a.focus == b.focus && a.frames == b.frames && a.step == b.step && a.next_goal_id == b.next_goal_id;
}

std::size_t ProofState::open_goals() const {
    std::size_t n = focus.size();
    for (const auto& f : frames) n += f.pending.size();
    return n;
}

const ContextEntry* Context::find(const std::string& n) const {
    for (auto it = entries.rbegin(); it != entries.rend(); ++it) {
        if (it->name == n) return &*it;
    }
    return nullptr;
}

const ContextEntry* Context::hypothesis(const std::string& n) const {
    const ContextEntry* e = find(n);
    return e && e->is_hypothesis ? e : nullptr;
}

const ContextEntry* Context::variable(const std::string& n) const {
    const ContextEntry* e = find(n);
    return e && !e->is_hypothesis ? e : nullptr;
}

std::vector<const ContextEntry*> Context::hypotheses() const {
    std::vector<const ContextEntry*> out;
    for (const auto& e : entries) {
        if (e.is_hypothesis) out.push_back(&e);
    }
    return out;
}

std::optional<Sort> Signature::global_sort(const std::string& n) const {
    if (auto c = constructors.find(n); c != constructors.end()) {
        std::vector<std::string> parts = c->second.arg_sorts;
        parts.push_back(c->second.type);
        return Sort(std::move(parts));
    }
    if (auto f = functions.find(n); f != functions.end()) {
        std::vector<std::string> parts;
        for (const auto& p : f->second.params) parts.push_back(p.sort.result());
        parts.push_back(f->second.result_sort);
        return Sort(std::move(parts));
    }
    return std::nullopt;
}

std::string_view side_name(RedexSide s) {
    switch (s) {
        case RedexSide::Lhs: return "lhs";
        case RedexSide::Rhs: return "rhs";
        case RedexSide::Whole: return "whole";
    }
    return "whole";
}

const Goal& TraceNode::goal_before() const {
    for (const auto& g : before.focus) {
        if (g.id == goal_id) return g;
    }
    return before.focus.front();
}

std::size_t ProofTrace::tactic_count() const {
    std::size_t n = 0;
    for (const auto& s : steps) {
        if (!s.bullet_event) ++n;
    }
    return n;
}

namespace {

bool same_line(const TacticLine& a, const TacticLine& b) {
    return a.kind == b.kind && a.args == b.args && a.reverse == b.reverse && a.target == b.target &&
           a.bullet == b.bullet && a.span == b.span;
}

bool same_node(const TraceNode& a, const TraceNode& b) {
    if (a.id != b.id || !same_line(a.line, b.line) || a.bullet_event != b.bullet_event) return false;
    if (!(a.before == b.before) || !(a.after == b.after) || a.goal_id != b.goal_id || a.produced != b.produced) {
        return false;
    }
    if (a.rewrite.has_value() != b.rewrite.has_value()) return false;
    if (a.rewrite && (a.rewrite->label != b.rewrite->label || a.rewrite->side != b.rewrite->side)) return false;
    if (a.children.size() != b.children.size()) return false;
    for (std::size_t i = 0; i < a.children.size(); ++i) {
        const auto& ca = a.children[i];
        const auto& cb = b.children[i];
        if (ca.marker != cb.marker || ca.nodes.size() != cb.nodes.size()) return false;
        for (std::size_t j = 0; j < ca.nodes.size(); ++j) {
            if (!same_node(ca.nodes[j], cb.nodes[j])) return false;
        }
    }
    return true;
}

}  // namespace

bool same_trace(const ProofTrace& a, const ProofTrace& b) {
    if (a.theorem != b.theorem || !alpha_equal(a.statement, b.statement) || !(a.initial == b.initial)) return false;
    if (a.steps.size() != b.steps.size() || a.roots.size() != b.roots.size()) return false;
    for (std::size_t i = 0; i < a.steps.size(); ++i) {
        if (!same_node(a.steps[i], b.steps[i])) return false;
    }
    for (std::size_t i = 0; i < a.roots.size(); ++i) {
        if (!same_node(a.roots[i], b.roots[i])) return false;
    }
    return true;
}

}  // namespace fpf
