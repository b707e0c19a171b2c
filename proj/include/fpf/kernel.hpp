#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fpf/syntax.hpp"

namespace fpf {

// ---------------------------------------------------------------------------
// Signature
// ---------------------------------------------------------------------------

struct Constructor {
    std::string name;
    std::string type;                    // the inductive type it builds
    std::vector<std::string> arg_sorts;  // base sort names
};

struct InductiveType {
    std::string name;
    std::vector<std::string> constructors;  // in declaration order
    bool is_record = false;
};

/// Defining equation of a fixpoint. `pattern_args` are the lhs arguments; the
/// one at the decreasing position is a constructor applied to variables, all
/// others are variables.
struct DefiningEquation {
    std::vector<Term> pattern_args;
    Term rhs;
};

struct FunctionDef {
    enum class Kind { Definition, Fixpoint };

    Kind kind = Kind::Definition;
    std::string name;
    std::vector<Binder> params;
    std::string result_sort;
    Term body;                              // Definition
    std::size_t decreasing = 0;             // Fixpoint
    std::vector<DefiningEquation> equations;// Fixpoint, in constructor order
};

struct Signature {
    std::map<std::string, InductiveType> types;
    std::map<std::string, Constructor> constructors;
    std::map<std::string, FunctionDef> functions;

    bool is_global(const std::string& n) const {
        return constructors.count(n) || functions.count(n) || types.count(n);
    }
    bool is_base_sort(const std::string& n) const { return types.count(n) > 0; }
    /// Sort of a global constructor/function as an arrow sort.
    std::optional<Sort> global_sort(const std::string& n) const;
};

// ---------------------------------------------------------------------------
// Proof state
// ---------------------------------------------------------------------------

/// One entry above the line: either a sorted variable or a named hypothesis.
struct ContextEntry {
    std::string name;
    bool is_hypothesis = false;
    Sort sort;          // variables
    Formula statement;  // hypotheses
};

struct Context {
    std::vector<ContextEntry> entries;

    const ContextEntry* find(const std::string& n) const;
    const ContextEntry* hypothesis(const std::string& n) const;
    const ContextEntry* variable(const std::string& n) const;
    bool contains(const std::string& n) const { return find(n) != nullptr; }
    std::vector<const ContextEntry*> hypotheses() const;
};

struct Goal {
    int id = 0;
    Context context;
    Formula target;
};

/// An open bullet level. Siblings not yet focused wait in `pending`.
struct BulletFrame {
    char marker = '+';
    std::vector<Goal> pending;
};

struct ProofState {
    std::vector<Goal> focus;
    std::vector<BulletFrame> frames;
    int step = 0;
    int next_goal_id = 1;

    bool complete() const { return focus.empty() && frames.empty(); }
    std::size_t open_goals() const;
    const Goal* current() const { return focus.empty() ? nullptr : &focus.front(); }
};

bool operator==(const ContextEntry& a, const ContextEntry& b);
bool operator==(const Goal& a, const Goal& b);
bool operator==(const BulletFrame& a, const BulletFrame& b);
bool operator==(const ProofState& a, const ProofState& b);

// ---------------------------------------------------------------------------
// Theorems
// ---------------------------------------------------------------------------

struct ProofTrace;

struct TheoremRecord {
    enum class Status { Axiomatized, ProvedInCorpus };

    std::string name;
    Formula statement;
    Status status = Status::Axiomatized;
    std::shared_ptr<const ProofTrace> trace;
};

using TheoremDB = std::map<std::string, TheoremRecord>;

/// Signature plus theorem catalog; immutable once built and shared by traces.
struct Environment {
    Signature signature;
    TheoremDB theorems;
    Context globals;  // `Variable` declarations
};

// ---------------------------------------------------------------------------
// Trace
// ---------------------------------------------------------------------------

enum class RedexSide { Lhs, Rhs, Whole };
std::string_view side_name(RedexSide s);

struct RewriteInfo {
    std::string justification;  // hypothesis or theorem name
    std::string label;          // hint shown in chains: theorem name or hypothesis statement
    bool from_hypothesis = false;
    bool reverse = false;
    RedexSide side = RedexSide::Whole;
    std::optional<std::string> in_hypothesis;
    Formula equation;                  // the instantiated equation l = r
    std::vector<Formula> side_conditions;
    Term before;  // side term before/after the step (Whole: unused)
    Term after;
};

struct TraceNode;

struct Branch {
    std::optional<char> marker;
    std::vector<TraceNode> nodes;
};

struct TraceNode {
    int id = 0;  // index into ProofTrace::steps
    TacticLine line;
    bool bullet_event = false;
    ProofState before;
    ProofState after;
    int goal_id = 0;             // goal the tactic acted on (0 for bullet events)
    std::vector<int> produced;   // goals created by the tactic
    std::optional<RewriteInfo> rewrite;
    std::string used_hypothesis; // assumption: the hypothesis that closed the goal
    std::vector<Branch> children;

    bool branching() const { return !children.empty(); }
    const Goal& goal_before() const;
};

struct ProofTrace {
    std::string theorem;
    Formula statement;
    ProofState initial;
    std::vector<TraceNode> steps;  // script order, including bullet events
    std::vector<TraceNode> roots;  // tactic nodes as a tree
    std::shared_ptr<const Environment> env;

    std::size_t tactic_count() const;
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// Builds the initial state for a closed statement. Throws ScopeError.
ProofState init_state(const Formula& theorem, const Environment& env);

/// Applies one event: a bullet (line.kind == Bullet) or a tactic. Bullets
/// attached to a tactic line must be split off with `expand_line` first.
std::pair<ProofState, TraceNode> apply_tactic(const ProofState& state, const TacticLine& line,
                                              const Environment& env);

/// Splits `+ tac.` into the bullet event and the tactic itself.
std::vector<TacticLine> expand_line(const TacticLine& line);

Term normalize(const Term& t, const Signature& sig);
Formula normalize(const Formula& f, const Signature& sig);
bool convertible(const Formula& a, const Formula& b, const Signature& sig);

/// Throws NonStructuralRecursion / NonExhaustiveEquations.
void guard_check(const FunctionDef& fix, const Signature& sig);

/// Elaborates non-theorem declarations into `env` and checks every theorem.
/// Returns one trace per theorem in file order; proven theorems are added to
/// `env.theorems` so later proofs may use them.
std::vector<ProofTrace> check_script(const ProofScript& script, Environment& env);
/// Convenience overload that copies the base environment.
std::vector<ProofTrace> check_script(const ProofScript& script, const Environment& base);

/// Adds one non-theorem declaration to the environment.
void elaborate_declaration(const Declaration& d, Environment& env);

/// Resolves identifiers of a user formula (globals become App) and checks scope
/// and sorts against `ctx`. Throws ScopeError / SortMismatch.
Formula resolve(const Formula& f, const Context& ctx, const Environment& env, Span span = {});
Term resolve(const Term& t, const Context& ctx, const Environment& env, Span span = {});
/// Sort of an already resolved term.
Sort sort_of(const Term& t, const Context& ctx, const Environment& env, Span span = {});

/// Rebuilds the tactic tree from flat steps.
std::vector<TraceNode> build_tree(const std::vector<TraceNode>& steps);

/// Re-applies every step from the initial state and compares after-states.
bool replay(const ProofTrace& trace);

/// Structural trace equality (lines, states, metadata; ignores env).
bool same_trace(const ProofTrace& a, const ProofTrace& b);

// Formula utilities shared with the renderer.
Formula substitute(const Formula& f, const std::string& var, const Term& value);
Term substitute(const Term& t, const std::string& var, const Term& value);
std::set<std::string> free_names(const Formula& f);
std::set<std::string> free_names(const Term& t);
bool occurs(const std::string& name, const Formula& f);

}  // namespace fpf
