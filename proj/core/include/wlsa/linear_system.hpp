#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wlsa/errors.hpp"
#include "wlsa/rational.hpp"

namespace wlsa {

enum class Rel { Le, Eq, Ge };

struct LinRow {
  std::map<int, Rat> coef;
  Rel rel = Rel::Eq;
  Rat rhs = 0;
};

struct VarBounds {
  std::optional<Rat> lo;
  std::optional<Rat> hi;
};

class LinearSystem {
 public:
  // default bounds [0,1]
  int add_variable(const std::string& name) { return add_variable(name, Rat(0), Rat(1)); }
  int add_variable(const std::string& name, std::optional<Rat> lo, std::optional<Rat> hi);

  void add_row(std::map<int, Rat> coef, Rel rel, Rat rhs);

  int num_vars() const { return static_cast<int>(bounds_.size()); }
  int num_rows() const { return static_cast<int>(rows_.size()); }
  const std::string& var_name(int v) const { return names_.at(v); }
  int var_index(const std::string& name) const;
  const VarBounds& bounds(int v) const { return bounds_.at(v); }
  const LinRow& row(int i) const { return rows_.at(i); }
  const std::vector<LinRow>& rows() const { return rows_; }

 private:
  std::vector<std::string> names_;
  std::map<std::string, int> by_name_;
  std::vector<VarBounds> bounds_;
  std::vector<LinRow> rows_;
};

struct LpResult {
  bool feasible = false;
  std::vector<Rat> point;        // per variable when feasible
  std::vector<Rat> certificate;  // per row when infeasible (Farkas multipliers)
};

// Exact feasibility test. Feasible answers carry a point that satisfies every
// row and bound; infeasible answers carry multipliers y (y_i >= 0 on >= rows,
// y_i <= 0 on <= rows, free on equalities) whose combination is violated by
// the whole variable box. Both are re-verified before returning.
LpResult lp_feasibility(const LinearSystem& sys);

bool verify_point(const LinearSystem& sys, const std::vector<Rat>& point);
bool verify_certificate(const LinearSystem& sys, const std::vector<Rat>& cert);

}  // namespace wlsa
