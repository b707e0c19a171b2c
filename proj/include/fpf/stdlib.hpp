#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "fpf/kernel.hpp"

namespace fpf {

/// Module names in load order.
const std::vector<std::string>& stdlib_modules();

/// Source text of a module. Reads `$FPF_STDLIB/<module>.fpf` when the variable
/// is set, the built-in copy otherwise. Throws IoError.
std::string stdlib_source(const std::string& module);

/// Elaborates all modules into a fresh environment.
Environment load_stdlib();

/// Process-wide copy, loaded on first use.
std::shared_ptr<const Environment> shared_stdlib();

/// Elaborates a script on top of the library and returns its traces.
/// Unknown `Require` modules raise UnresolvedName.
std::vector<ProofTrace> check_with_stdlib(const ProofScript& script);

/// Value of a closed term in the standard model. Numbers are plain integers,
/// everything else is a constructor tree.
struct Value {
    bool is_nat = true;
    std::uint64_t nat = 0;
    std::string ctor;
    std::vector<Value> args;

    static Value number(std::uint64_t n) { return {true, n, {}, {}}; }
    static Value data(std::string c, std::vector<Value> as = {}) { return {false, 0, std::move(c), std::move(as)}; }

    friend bool operator==(const Value&, const Value&) = default;
};

std::string print(const Value& v);

/// Evaluates with a hand-written interpreter that is independent of the
/// kernel's normalizer. Throws ScopeError on variables or unknown symbols.
Value eval_closed(const Term& t);

}  // namespace fpf
