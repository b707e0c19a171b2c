#include <algorithm>

#include "fpf/interface.hpp"

namespace fpf {

Session Session::load(std::string source) {
    Session s;
    s.script_ = parse_script(source);
    s.source_ = std::move(source);
    // like the batch checker, unknown modules are refused before anything runs
    for (const auto& d : s.script_.declarations) {
        if (d.kind != Declaration::Kind::Require) continue;
        const auto& mods = stdlib_modules();
        if (std::find(mods.begin(), mods.end(), d.name) == mods.end()) {
            throw Error(ErrorCode::UnresolvedName, d.span, "unknown library module " + d.name,
                        {"", "", "", d.name, "a library module"});
        }
    }
    for (std::size_t i = 0; i < s.script_.declarations.size(); ++i) {
        const Declaration& d = s.script_.declarations[i];
        auto add = [&](SessionItem::Kind k, std::size_t line, Span span) {
            s.items_.push_back({k, i, line, span, span.line, span.line});
        };
        if (d.kind != Declaration::Kind::Theorem) {
            add(SessionItem::Kind::Declaration, 0, d.span);
            continue;
        }
        add(SessionItem::Kind::ProofStart, 0, d.span);
        for (std::size_t l = 0; l < d.proof.size(); ++l) add(SessionItem::Kind::Tactic, l, d.proof[l].span);
        add(SessionItem::Kind::Qed, 0, d.qed_span);
    }
    // an item runs until the line before the next one starts
    for (std::size_t k = 0; k < s.items_.size(); ++k) {
        SessionItem& it = s.items_[k];
        if (k + 1 < s.items_.size()) it.last_line = std::max(it.source_line, s.items_[k + 1].source_line - 1);
        else it.last_line = std::max(it.source_line, static_cast<int>(std::count(s.source_.begin(), s.source_.end(), '\n')));
    }
    SessionSnapshot first;
    first.env = shared_stdlib();
    s.snapshots_.push_back(std::move(first));
    return s;
}

const SessionItem& Session::step_forward() {
    if (at_end()) throw Error(ErrorCode::AtEnd, {}, "the whole script is already accepted");
    const SessionItem& it = items_[cursor()];
    const Declaration& d = script_.declarations[it.declaration];
    SessionSnapshot next = current();
    switch (it.kind) {
        case SessionItem::Kind::Declaration: {
            Environment env = *next.env;
            elaborate_declaration(d, env);
            next.env = std::make_shared<const Environment>(std::move(env));
            break;
        }
        case SessionItem::Kind::ProofStart: {
            const Environment& env = *next.env;
            if (env.signature.is_global(d.name) || env.theorems.count(d.name) || env.globals.contains(d.name)) {
                throw Error(ErrorCode::DuplicateName, d.span, d.name + " is already declared",
                            {"", "", "", d.name, "a fresh name"});
            }
            ProofTrace trace;
            trace.theorem = d.name;
            trace.env = next.env;
            try {
                trace.initial = init_state(d.statement, env);
            } catch (Error& e) {
                if (!e.span().valid()) e.set_span(d.span);
                throw;
            }
            trace.statement = trace.initial.focus.front().target;
            next.state = trace.initial;
            next.open = std::move(trace);
            break;
        }
        case SessionItem::Kind::Tactic: {
            ProofTrace& trace = *next.open;
            for (const auto& ev : expand_line(d.proof[it.line])) {
                auto [after, node] = apply_tactic(next.state, ev, *trace.env);
                trace.steps.push_back(std::move(node));
                next.state = std::move(after);
            }
            break;
        }
        case SessionItem::Kind::Qed: {
            if (!next.state.complete()) {
                const std::size_t k = next.state.open_goals();
                throw Error(ErrorCode::IncompleteProof, d.qed_span,
                            "the proof of " + d.name + " is not finished: " + std::to_string(k) + " goal" +
                                (k == 1 ? "" : "s") + " remain" + (k == 1 ? "s" : "") + ".",
                            {"", "", std::to_string(k), d.name, "no open goals"});
            }
            ProofTrace trace = std::move(*next.open);
            next.open.reset();
            trace.roots = build_tree(trace.steps);
            TheoremRecord rec;
            rec.name = d.name;
            rec.statement = trace.statement;
            rec.status = TheoremRecord::Status::ProvedInCorpus;
            rec.trace = std::make_shared<const ProofTrace>(trace);
            Environment env = *next.env;
            env.theorems[d.name] = std::move(rec);
            next.env = std::make_shared<const Environment>(std::move(env));
            next.state = {};
            next.traces.push_back(std::move(trace));
            break;
        }
    }
    const std::size_t at = cursor();
    snapshots_.push_back(std::move(next));
    return items_[at];
}

void Session::step_back() {
    if (cursor() == 0) throw Error(ErrorCode::AtBeginning, {}, "nothing has been accepted yet");
    snapshots_.pop_back();
}

void Session::run_to_end() {
    while (!at_end()) step_forward();
}

int Session::accepted_line() const {
    if (cursor() == 0) return 0;
    return items_[cursor() - 1].last_line;
}

}  // namespace fpf
