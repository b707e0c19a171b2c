#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fpf {

/// 1-based source position. Columns count code points, not bytes.
struct Span {
    int line = 0;
    int column = 0;

    bool valid() const { return line > 0 && column > 0; }
    friend bool operator==(const Span&, const Span&) = default;
};

/// Stable error codes. The numeric values are part of the wire protocol and
/// must not be reordered; append new codes at the end of their group.
enum class ErrorCode {
    // syntax
    LexError = 100,
    ParseError,
    UnresolvedName,
    DuplicateName,
    ScopeError,
    SortMismatch,
    // declarations
    NonStructuralRecursion = 200,
    NonExhaustiveEquations,
    MalformedEquation,
    // tactic shape checks
    GoalNotImplication = 300,
    GoalNotUniversal,
    GoalNotNegation,
    GoalNotConjunction,
    GoalNotDisjunction,
    GoalNotExistential,
    GoalNotEquation,
    HypNotConjunction,
    HypNotDisjunction,
    HypNotExistential,
    HypNotUniversal,
    HypNotImplication,
    HypNotFalse,
    HypNotNegation,
    NotAnEquation,
    PremiseMismatch,
    // names and arguments
    UnknownName = 400,
    NameCollision,
    WrongArgumentCount,
    NotInductive,
    HypDependsOnVariable,
    NotAFunction,
    // closers and rewriting
    NoMatchingAssumption = 500,
    NotReflexive,
    RewriteRedexNotFound,
    UnfoldNotApplicable,
    // bullets and goals
    BulletWrongMarker = 600,
    BulletUnfinished,
    BulletExpected,
    NoMoreSubgoals,
    NoGoals,
    IncompleteProof,
    // session / protocol
    AtBeginning = 700,
    AtEnd,
    ProtocolError,
    IoError,
};

enum class ErrorCategory { Syntax, Proof, Session };

std::string_view code_name(ErrorCode code);
ErrorCategory category(ErrorCode code);

/// Structured detail attached to an error so the interface layer can phrase a
/// student-facing message without re-deriving anything.
struct ErrorDetail {
    std::string tactic;    // tactic keyword, when raised by a tactic
    std::string subject;   // offending formula/term, pretty-printed
    std::string found;     // short description of what was found ("an implication")
    std::string name;      // offending identifier
    std::string expected;  // free-form expectation (token set, marker, ...)
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, Span span, std::string message, ErrorDetail detail = {})
        : std::runtime_error(std::move(message)), code_(code), span_(span), detail_(std::move(detail)) {}

    ErrorCode code() const { return code_; }
    Span span() const { return span_; }
    const ErrorDetail& detail() const { return detail_; }
    void set_span(Span s) { span_ = s; }

private:
    ErrorCode code_;
    Span span_;
    ErrorDetail detail_;
};

}  // namespace fpf
