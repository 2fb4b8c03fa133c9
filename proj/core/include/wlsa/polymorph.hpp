#pragma once

#include <map>
#include <optional>
#include <vector>

#include "wlsa/structure.hpp"

namespace wlsa {

// A totally symmetric n-ary operation on a structure's universe, stored as a
// table over size-n multisets (sorted tuples).
struct SymmetricOperation {
  int arity = 0;
  std::map<std::vector<int>, int> table;  // sorted multiset -> value

  int apply(std::vector<int> args) const;  // sorts, then looks up
};

// Universe B^n with relations holding componentwise.
Structure power_structure(const Structure& b, int n, long max_universe = 20000);

// Exhaustive search over multiset tables for one whose induced map is a
// homomorphism from the n-th power, or nothing.
std::optional<SymmetricOperation> symmetric_polymorphism(const Structure& b, int n,
                                                         long max_tables = 100000000);

// Re-check a claimed operation against the power structure.
bool verify_polymorphism(const Structure& b, const SymmetricOperation& op);

}  // namespace wlsa
