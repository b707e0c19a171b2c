#pragma once

#include <atomic>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fpf/render.hpp"
#include "fpf/stdlib.hpp"

namespace fpf {

// ---------------------------------------------------------------------------
// Errors for students
// ---------------------------------------------------------------------------

/// Message template for a code. Placeholders: {tactic} {subject} {found} {name} {expected}.
const std::string& error_template(ErrorCode code);

/// Fills the code's template from the error detail; falls back to the
/// message given at the raising site when the detail lacks a field.
std::string student_message(const Error& e);

struct ErrorReport {
    ErrorCode code = ErrorCode::ProtocolError;
    Span span;
    std::string message;
};

ErrorReport report(const Error& e);

// ---------------------------------------------------------------------------
// Session
// ---------------------------------------------------------------------------

/// One unit the cursor moves over: a declaration, the opening of a proof,
/// one tactic line (bullet included) or the closing Qed.
struct SessionItem {
    enum class Kind { Declaration, ProofStart, Tactic, Qed };

    Kind kind = Kind::Declaration;
    std::size_t declaration = 0;
    std::size_t line = 0;  // index into the theorem's proof (Tactic)
    Span span;
    int source_line = 0;
    int last_line = 0;  // the item covers source lines [source_line, last_line]
};

struct SessionSnapshot {
    std::shared_ptr<const Environment> env;
    std::optional<ProofTrace> open;  // proof in progress
    ProofState state;
    std::vector<ProofTrace> traces;  // finished theorems
};

class Session {
public:
    /// Parses the script. Throws Error on lexical/parse problems.
    static Session load(std::string source);

    const std::string& source() const { return source_; }
    const ProofScript& script() const { return script_; }
    const std::vector<SessionItem>& items() const { return items_; }
    std::size_t cursor() const { return snapshots_.size() - 1; }
    bool at_end() const { return cursor() == items_.size(); }
    const SessionSnapshot& current() const { return snapshots_.back(); }

    /// Applies the next item. On error the session is unchanged and the error is thrown.
    const SessionItem& step_forward();
    /// Restores the snapshot before the last accepted item. Throws AtBeginning.
    void step_back();
    /// Steps until the end; stops at and rethrows the first error.
    void run_to_end();

    /// Finished traces so far.
    const std::vector<ProofTrace>& traces() const { return current().traces; }
    /// Last source line of the accepted region (0 when nothing is accepted).
    int accepted_line() const;

private:
    std::string source_;
    ProofScript script_;
    std::vector<SessionItem> items_;
    std::vector<SessionSnapshot> snapshots_;
};

// ---------------------------------------------------------------------------
// Protocol
// ---------------------------------------------------------------------------

inline constexpr int kProtocolVersion = 1;

/// Line-oriented request handler. Holds at most one session; every request
/// line yields exactly one response line.
class ProtocolHandler {
public:
    explicit ProtocolHandler(const Catalog& cat = Catalog::builtin()) : cat_(&cat) {}

    /// Request: {"v":1,"id":?,"type":"load"|"step_forward"|"step_back"|"run_to_end"|"render"|"get_state", ...}
    std::string handle(const std::string& request_line);

    const Session* session() const { return session_ ? &*session_ : nullptr; }

private:
    const Catalog* cat_;
    std::optional<Session> session_;
};

/// JSON text of the state view of a session.
std::string state_view_json(const Session& s);

/// Serves the protocol on 127.0.0.1:port (0 picks a free port), one thread per
/// connection. Blocks until `stop` becomes true. `ready` receives the bound port.
/// Throws IoError when the socket cannot be bound.
void serve(int port, const Catalog& cat, const std::function<void(int)>& ready = {},
           const std::atomic<bool>* stop = nullptr);

}  // namespace fpf
