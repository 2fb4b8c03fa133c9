#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "wlsa/structure.hpp"

namespace wlsa {

using Int = mpz_class;

struct RootedFtree {
  Structure tree;
  int root = 0;  // element index
};

// true iff the factor graph is connected with |edges| = |nodes| - 1
bool is_ftree(const Structure& t);

// exact homomorphism count via the rooted factor-tree recursion
Int count_hom_ftree(const Structure& t, const Structure& a);

// homomorphisms with h(root) = target
Int count_hom_rooted(const Structure& t, int root, const Structure& a, int target);

// exhaustive count; requires |A|^|Q| <= 1e8
Int count_hom_bruteforce(const Structure& q, const Structure& a);

// backtracking search; same size guard as the brute-force counter
std::optional<std::vector<int>> exists_hom(const Structure& a, const Structure& b);

// element bijection preserving the constraint sets, or failure
bool isomorphic(const Structure& a, const Structure& b);

// all ftrees with at most max_constraints constraints, one per iso class;
// includes the lone vertex
std::vector<Structure> enumerate_ftrees(const Signature& sig, int max_constraints);

}  // namespace wlsa
