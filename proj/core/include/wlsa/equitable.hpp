#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "wlsa/matrix.hpp"
#include "wlsa/refine.hpp"
#include "wlsa/structure.hpp"

namespace wlsa {

struct Partition {
  std::vector<int> element_class;     // per element, 0..p-1
  std::vector<int> constraint_class;  // per constraint, 0..q-1
  int p = 0;
  int q = 0;
};

struct ParameterTable {
  // c[(i,j,l)]: labelled incidences from any member of P_i into Q_j
  std::map<std::tuple<int, int, Label>, long> c;
  // d[(j,i,l)]: labelled incidences from any member of Q_j into P_i
  std::map<std::tuple<int, int, Label>, long> d;
};

struct EquitableViolation {
  bool element_side = true;  // true: (P1) failed on an element class
  int class_index = 0;
  int member_a = 0;  // reference member
  int member_b = 0;  // first member with a differing count
  int other_class = 0;
  Label label;
  std::string message;
};

struct CommonEquitableWitness {
  Partition part_a;
  Partition part_b;
  std::vector<int> element_sizes;     // per class, one side (sides match)
  std::vector<int> constraint_sizes;  // per class, one side
  ParameterTable parameters;
};

Partition partition_from_colouring(const Structure& s, const Colouring& col);

std::variant<ParameterTable, EquitableViolation> verify_equitable(const Structure& s,
                                                                  const Partition& part);

std::optional<CommonEquitableWitness> common_equitable_partition(const Structure& a,
                                                                 const Structure& b);

// Doubly stochastic (X, Y) built from a common equitable partition; X is
// indexed B-elements by A-elements, Y is B-constraints by A-constraints.
std::pair<RatMatrix, RatMatrix> fractional_iso_witness(const Structure& a, const Structure& b,
                                                       const CommonEquitableWitness& w);

// 0/1 incidence matrix M^l of s: rows elements, columns constraints.
RatMatrix incidence_matrix(const Structure& s, const Label& l);

// Every label (S,R) with non-empty S occurring as an entry of either matrix.
std::vector<Label> occurring_labels(const Structure& a, const Structure& b);

enum class IdentityKind { FracIso, FracHom, GraphAdjacency };

bool verify_matrix_identities(IdentityKind kind, const Structure& a, const Structure& b,
                              const RatMatrix& X, const RatMatrix& Y);

}  // namespace wlsa
