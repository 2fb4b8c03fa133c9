#pragma once

#include <optional>
#include <vector>

#include "wlsa/structure.hpp"

namespace wlsa {

// A matrix entry (S,R): the symbol together with the set of positions at which
// the element occurs in the tuple. Positions are 1-based and sorted.
struct Label {
  int symbol = -1;
  std::vector<int> positions;

  friend bool operator==(const Label&, const Label&) = default;
  friend auto operator<=>(const Label&, const Label&) = default;
};

struct Colouring {
  std::vector<int> element_colour;     // per element, dense codes 0..p-1
  std::vector<int> constraint_colour;  // per constraint, dense codes p..p+q-1
  int rounds = 0;                      // iterations until the partition stopped changing
  int element_classes = 0;
  int total_classes = 0;
};

std::optional<Label> matrix_label(const Structure& s, int element, int constraint);

// Runs the iterated-degree refinement on the disjoint union of the inputs and
// reports per-structure colourings with shared codes. Seeds are the two
// distinct round-0 symbols; the stable partition does not depend on them.
// If history is non-null it receives, per round, the joint colour vector
// (all elements of all inputs, then all constraints).
std::vector<Colouring> joint_refine(const std::vector<Structure>& structures,
                                    int seed_element = 0, int seed_constraint = 1,
                                    std::vector<std::vector<int>>* history = nullptr);

bool same_iterated_degree_sequence(const Structure& a, const Structure& b);

}  // namespace wlsa
