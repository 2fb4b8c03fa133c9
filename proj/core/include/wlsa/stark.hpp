#pragma once

#include <optional>
#include <vector>

#include "wlsa/structure.hpp"

namespace wlsa {

inline constexpr long kDefaultMaxUniverse = 5000;

// Tree decomposition of a structure: bags of element ids on a tree.
struct TreeDecomposition {
  std::vector<std::vector<int>> bags;      // per node, sorted element ids
  std::vector<std::pair<int, int>> edges;  // undirected tree edges

  int width() const;
};

// The signature of star structures for a base signature and a given k:
// symbols tup@j@S... , tup@j@I... , R@S... , R@I... with positions 1-based.
Signature star_signature(const Signature& base, int k);

// Universe: all tuples of length <= k over the universe plus all constraints.
// Relations: diagonal tuple sets, tuple projections, diagonal constraint
// membership and constraint projections.
Structure star_structure(const Structure& a, int k, long max_universe = kDefaultMaxUniverse);

// Equivalence at level k, decided on the star structures by joint refinement
// with the per-class size balance.
bool wlk_equivalent(const Structure& a, const Structure& b, int k,
                    long max_universe = kDefaultMaxUniverse);

bool verify_tree_decomposition(const Structure& q, const TreeDecomposition& td);

// Minimum-width decomposition by elimination-order subset DP (universe <= 10),
// normalized so adjacent bags are subset-comparable and every constraint has
// a node whose bag equals its element set. Returns nothing when the minimum
// width exceeds width_limit.
std::optional<TreeDecomposition> exact_tree_decomposition(const Structure& q, int width_limit);

// A width-<k normalized decomposition of a connected q becomes an ftree over
// the star signature with the same hom counts into any star structure.
Structure ftree_from_tw_structure(const Structure& q, const TreeDecomposition& td, int k);

// Inverse direction: an ftree over a star signature becomes a base-signature
// structure of treewidth < k with the same hom counts.
Structure tw_structure_from_ftree(const Structure& t, int k);

}  // namespace wlsa
