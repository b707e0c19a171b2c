#include <map>
#include <regex>

#include "fpf/interface.hpp"

namespace fpf {

namespace {

const std::string kGoalShape = "{tactic} expects the current goal to be {expected}; the goal here is {found} ({subject}).";
const std::string kHypShape = "{tactic} expects {name} to be {expected}; {name} is {found} ({subject}).";

const std::map<ErrorCode, std::string>& templates() {
    static const std::map<ErrorCode, std::string> t = {
        {ErrorCode::LexError, "unexpected {found}; expected {expected}."},
        {ErrorCode::ParseError, "expected {expected}, found {found}."},
        {ErrorCode::UnresolvedName, "{name} is not known here; expected {expected}."},
        {ErrorCode::DuplicateName, "{name} is already declared; expected {expected}."},
        {ErrorCode::ScopeError, "{name} is not in scope; expected {expected}."},
        {ErrorCode::SortMismatch, "{subject} has sort {found}, but {expected} is required."},
        {ErrorCode::NonStructuralRecursion, "the recursion in {name} is not structural: {found}; expected {expected}."},
        {ErrorCode::NonExhaustiveEquations, "the equations of {name} miss {found}; expected {expected}."},
        {ErrorCode::MalformedEquation, "the equation {subject} of {name} is malformed: expected {expected}, found {found}."},
        {ErrorCode::GoalNotImplication, kGoalShape},
        {ErrorCode::GoalNotUniversal, kGoalShape},
        {ErrorCode::GoalNotNegation, kGoalShape},
        {ErrorCode::GoalNotConjunction, kGoalShape},
        {ErrorCode::GoalNotDisjunction, kGoalShape},
        {ErrorCode::GoalNotExistential, kGoalShape},
        {ErrorCode::GoalNotEquation, kGoalShape},
        {ErrorCode::HypNotConjunction, kHypShape},
        {ErrorCode::HypNotDisjunction, kHypShape},
        {ErrorCode::HypNotExistential, kHypShape},
        {ErrorCode::HypNotUniversal, kHypShape},
        {ErrorCode::HypNotImplication, kHypShape},
        {ErrorCode::HypNotFalse, kHypShape},
        {ErrorCode::HypNotNegation, kHypShape},
        {ErrorCode::NotAnEquation, "{tactic} expects {name} to be {expected}; {name} is {found} ({subject})."},
        {ErrorCode::PremiseMismatch, "{tactic} expects {expected}; {name} is {subject}."},
        {ErrorCode::UnknownName, "{name} is not {expected} here."},
        {ErrorCode::NameCollision, "{name} is already used; {tactic} needs {expected}."},
        {ErrorCode::WrongArgumentCount, "{tactic} expects {expected} argument(s), found {found}."},
        {ErrorCode::NotInductive, "{name} is {found}, not {expected}."},
        {ErrorCode::HypDependsOnVariable, "{name} mentions {subject}; {tactic} expects {expected}."},
        {ErrorCode::NotAFunction, "{name} is {found}, not {expected}."},
        {ErrorCode::NoMatchingAssumption, "no hypothesis matches the goal {subject}."},
        {ErrorCode::NotReflexive, "the two sides of {subject} do not compute to the same value."},
        {ErrorCode::RewriteRedexNotFound, "the pattern {expected} does not occur in {subject}."},
        {ErrorCode::UnfoldNotApplicable, "{tactic} cannot unfold {name} in {subject}; expected {expected}."},
        {ErrorCode::BulletWrongMarker, "the next subgoal has to be focused with {expected}, not {found}."},
        {ErrorCode::BulletUnfinished, "the current subgoal is not finished yet, so {found} cannot focus another one."},
        {ErrorCode::BulletExpected, "the next subgoal has to be focused with {expected} first."},
        {ErrorCode::NoMoreSubgoals, "there are no more subgoals to focus; {found} was given."},
        {ErrorCode::NoGoals, "there are no goals left, so {tactic} has nothing to work on."},
        {ErrorCode::IncompleteProof, "the proof of {name} is not finished; open goals: {found}."},
        {ErrorCode::AtBeginning, "nothing has been accepted yet."},
        {ErrorCode::AtEnd, "the whole script is already accepted."},
        {ErrorCode::ProtocolError, "malformed request: expected {expected}, found {found}."},
        {ErrorCode::IoError, "cannot read {name}: {found}."},
    };
    return t;
}

}  // namespace

const std::string& error_template(ErrorCode code) {
    static const std::string none;
    auto it = templates().find(code);
    return it == templates().end() ? none : it->second;
}

std::string student_message(const Error& e) {
    const std::string& tmpl = error_template(e.code());
    const std::string own = e.what();
    if (tmpl.empty()) return own;
    const ErrorDetail& d = e.detail();
    const std::map<std::string, std::string> v = {
        {"tactic", d.tactic}, {"subject", d.subject}, {"found", d.found}, {"name", d.name}, {"expected", d.expected}};
    std::string out;
    static const std::regex ph(R"(\{([a-z]+)\})");
    std::size_t last = 0;
    for (auto it = std::sregex_iterator(tmpl.begin(), tmpl.end(), ph); it != std::sregex_iterator(); ++it) {
        auto f = v.find((*it)[1]);
        if (f == v.end() || f->second.empty()) return own;
        out += tmpl.substr(last, it->position() - last) + f->second;
        last = it->position() + it->length();
    }
    out += tmpl.substr(last);
    return out;
}

ErrorReport report(const Error& e) { return {e.code(), e.span(), student_message(e)}; }

}  // namespace fpf
