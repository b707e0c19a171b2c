#pragma once

#include <map>

#include "fpf/kernel.hpp"

namespace fpf::detail {

using Bindings = std::map<std::string, Term>;

Term substitute_all(const Term& t, const Bindings& b);

/// Expands the outermost reducible occurrences of `fn` by exactly one layer.
/// Returns nullopt when nothing was reducible.
std::optional<Term> unfold_once(const Term& t, const FunctionDef& fn, const Signature& sig);
std::optional<Formula> unfold_once(const Formula& f, const FunctionDef& fn, const Signature& sig);

/// Numeral-aware view of a constructor-headed term: Num k is seen as Suc (k-1).
std::optional<Term> constructor_view(const Term& t, const Signature& sig);

}  // namespace fpf::detail
