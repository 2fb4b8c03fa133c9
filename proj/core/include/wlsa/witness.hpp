#pragma once

#include <utility>
#include <vector>

#include "wlsa/equitable.hpp"
#include "wlsa/rational.hpp"
#include "wlsa/structure.hpp"

namespace wlsa {

inline constexpr long kDefaultMaxM = 4;

struct ChainStep {
  enum class Kind { Hom, Wl1 };
  Kind kind;
  Structure from;
  Structure to;
  std::vector<int> hom;       // Hom: per from-element, image index in to
  CommonEquitableWitness wl;  // Wl1: shared equitable partition evidence
};

ChainStep hom_step(Structure from, Structure to, std::vector<int> hom);
ChainStep wl1_step(Structure from, Structure to, CommonEquitableWitness wl);

// The constructive decomposition of a feasible level-1 solution into
// a -> x1, x1/x2 sharing an equitable partition, x2 -> b.
struct Decomposition {
  Structure x1;
  Structure x2;
  std::vector<int> h1;  // a-element -> x1-element
  std::vector<int> h2;  // x2-element -> b-element
  CommonEquitableWitness w;
  long m = 1;         // common denominator of the solution
  long y_size = 0;    // copy-indexed tuple count; universes have n(a) * y_size members
};

// solution indexes the variables of build_sa_system(a, b, 1); it is
// re-verified before anything is built. m is the lcm of the solution's
// denominators and every constraint class has m! members, so the cap matters.
Decomposition decompose_sa1(const Structure& a, const Structure& b,
                            const std::vector<Rat>& solution, long max_m = kDefaultMaxM);

std::vector<ChainStep> decomposition_chain(const Structure& a, const Structure& b,
                                           const Decomposition& d);

// Re-verifies every step: hom maps constraint-by-constraint, shared partitions
// through the parameter tables with the class-size balance. Endpoint mismatch
// between consecutive steps throws; bad evidence returns false.
bool verify_chain(const std::vector<ChainStep>& chain);

// Left-stochastic (X, Y) composed along the chain; together with the endpoint
// structures they satisfy the fractional-homomorphism inequalities.
std::pair<RatMatrix, RatMatrix> chain_matrices(const std::vector<ChainStep>& chain);

}  // namespace wlsa
