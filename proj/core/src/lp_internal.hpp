#pragma once

#include <map>
#include <vector>

#include "wlsa/linear_system.hpp"

namespace wlsa::detail {

struct SxRow {
  std::map<int, Rat> coef;
  Rel rel = Rel::Eq;
  Rat rhs = 0;
};

struct SxResult {
  bool feasible = false;
  std::vector<Rat> x;  // per variable
  std::vector<Rat> y;  // per row (Farkas duals) when infeasible
};

// Phase-1 bounded-variable simplex over exact rationals.
SxResult phase1_simplex(const std::vector<VarBounds>& bounds, const std::vector<SxRow>& rows);

// Fast path: a floating-point phase-1 run proposes the final basis, which is
// then re-solved exactly; falls back to the exact simplex when the proposal
// does not verify.
SxResult solve_rows(const std::vector<VarBounds>& bounds, const std::vector<SxRow>& rows);

}  // namespace wlsa::detail
