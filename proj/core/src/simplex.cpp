#include <optional>
#include <stdexcept>

#include "lp_internal.hpp"

namespace wlsa::detail {

namespace {

enum class VStat { Basic, AtLower, AtUpper, FreeZero };

struct Col {
  std::optional<Rat> lo, hi;
  VStat stat = VStat::AtLower;
  bool artificial = false;
};

}  // namespace

SxResult phase1_simplex(const std::vector<VarBounds>& bounds, const std::vector<SxRow>& rows) {
  const int n = static_cast<int>(bounds.size());
  const int m = static_cast<int>(rows.size());
  const int N = n + 2 * m;  // structural, slacks, artificials

  std::vector<Col> col(N);
  std::vector<Rat> value(N, Rat(0));  // current value of nonbasic vars
  for (int j = 0; j < n; ++j) {
    col[j].lo = bounds[j].lo;
    col[j].hi = bounds[j].hi;
    if (col[j].lo) {
      col[j].stat = VStat::AtLower;
      value[j] = *col[j].lo;
    } else if (col[j].hi) {
      col[j].stat = VStat::AtUpper;
      value[j] = *col[j].hi;
    } else {
      col[j].stat = VStat::FreeZero;
    }
  }
  for (int i = 0; i < m; ++i) {
    Col& s = col[n + i];
    switch (rows[i].rel) {
      case Rel::Le:
        s.lo = Rat(0);
        s.stat = VStat::AtLower;
        break;
      case Rel::Ge:
        s.hi = Rat(0);
        s.stat = VStat::AtUpper;
        break;
      case Rel::Eq:
        s.lo = Rat(0);
        s.hi = Rat(0);
        s.stat = VStat::AtLower;
        break;
    }
  }

  // residuals at the starting point decide the artificial signs
  std::vector<Rat> sigma(m, Rat(1));
  std::vector<Rat> beta(m, Rat(0));
  std::vector<int> basis(m);
  std::vector<std::vector<Rat>> T(m, std::vector<Rat>(N, Rat(0)));
  for (int i = 0; i < m; ++i) {
    Rat r = rows[i].rhs;
    for (const auto& [v, a] : rows[i].coef) r -= a * value[v];
    if (r < 0) sigma[i] = -1;
    beta[i] = r * sigma[i];
    basis[i] = n + m + i;
    col[n + m + i].lo = Rat(0);
    col[n + m + i].artificial = true;
    col[n + m + i].stat = VStat::Basic;
    for (const auto& [v, a] : rows[i].coef) T[i][v] = a * sigma[i];
    T[i][n + i] = sigma[i];          // slack
    T[i][n + m + i] = Rat(1);        // artificial: sigma_i * sigma_i
  }

  std::vector<char> in_basis(N, 0);
  for (int i = 0; i < m; ++i) in_basis[basis[i]] = 1;

  const long bland_after = 3L * (m + N);
  long iter = 0;

  auto var_value = [&](int j) -> Rat {
    switch (col[j].stat) {
      case VStat::AtLower:
        return *col[j].lo;
      case VStat::AtUpper:
        return *col[j].hi;
      case VStat::FreeZero:
        return Rat(0);
      case VStat::Basic:
        break;
    }
    for (int i = 0; i < m; ++i)
      if (basis[i] == j) return beta[i];
    throw std::logic_error("simplex: basic var without row");
  };

  while (true) {
    Rat obj = 0;
    for (int i = 0; i < m; ++i)
      if (col[basis[i]].artificial) obj += beta[i];
    if (obj == 0) break;

    // reduced costs d_j = c_j - cB^T T[.,j]
    std::vector<Rat> cbT(N, Rat(0));
    for (int i = 0; i < m; ++i)
      if (col[basis[i]].artificial)
        for (int j = 0; j < N; ++j)
          if (T[i][j] != 0) cbT[j] += T[i][j];

    bool bland = iter > bland_after;
    int enter = -1, dir = 0;
    Rat best = 0;
    for (int j = 0; j < N; ++j) {
      if (in_basis[j]) continue;
      if (col[j].artificial) continue;  // retired artificials stay out
      if (col[j].lo && col[j].hi && *col[j].lo == *col[j].hi) continue;
      Rat d = (col[j].artificial ? Rat(1) : Rat(0)) - cbT[j];
      int dj = 0;
      if (col[j].stat == VStat::AtLower && d < 0)
        dj = 1;
      else if (col[j].stat == VStat::AtUpper && d > 0)
        dj = -1;
      else if (col[j].stat == VStat::FreeZero && d != 0)
        dj = d < 0 ? 1 : -1;
      if (dj == 0) continue;
      Rat score = d < 0 ? -d : d;
      if (bland) {
        enter = j;
        dir = dj;
        break;
      }
      if (enter == -1 || score > best) {
        enter = j;
        dir = dj;
        best = score;
      }
    }
    if (enter == -1) break;  // dual feasible, objective positive: infeasible
    ++iter;

    // ratio test
    std::optional<Rat> limit;  // max step
    int leave_row = -1;
    bool flip = false;
    if (col[enter].lo && col[enter].hi) {
      limit = *col[enter].hi - *col[enter].lo;
      flip = true;
    }
    for (int i = 0; i < m; ++i) {
      Rat s = T[i][enter] * dir;
      if (s == 0) continue;
      const Col& bc = col[basis[i]];
      std::optional<Rat> cap;
      if (s > 0) {
        if (bc.lo) cap = (beta[i] - *bc.lo) / s;
      } else {
        if (bc.hi) cap = (*bc.hi - beta[i]) / (-s);
      }
      if (!cap) continue;
      if (!limit || *cap < *limit ||
          (*cap == *limit && leave_row >= 0 && basis[i] < basis[leave_row])) {
        if (!limit || *cap < *limit) flip = false;
        limit = cap;
        if (!flip) leave_row = i;
      }
    }
    if (!limit) throw std::logic_error("simplex: unbounded phase-1 direction");
    Rat step = *limit;

    if (flip || leave_row < 0) {
      // entering variable moves across to its other bound
      for (int i = 0; i < m; ++i) beta[i] -= T[i][enter] * dir * step;
      col[enter].stat = (dir > 0) ? VStat::AtUpper : VStat::AtLower;
      continue;
    }

    Rat enter_val = var_value(enter) + Rat(dir) * step;
    int leaving = basis[leave_row];
    Rat leave_val = beta[leave_row] - T[leave_row][enter] * dir * step;
    for (int i = 0; i < m; ++i)
      if (i != leave_row) beta[i] -= T[i][enter] * dir * step;

    // pivot
    Rat piv = T[leave_row][enter];
    for (int j = 0; j < N; ++j)
      if (T[leave_row][j] != 0) T[leave_row][j] /= piv;
    for (int i = 0; i < m; ++i) {
      if (i == leave_row) continue;
      Rat f = T[i][enter];
      if (f == 0) continue;
      for (int j = 0; j < N; ++j)
        if (T[leave_row][j] != 0) T[i][j] -= f * T[leave_row][j];
    }
    basis[leave_row] = enter;
    beta[leave_row] = enter_val;
    in_basis[enter] = 1;
    in_basis[leaving] = 0;
    col[enter].stat = VStat::Basic;
    if (col[leaving].lo && leave_val == *col[leaving].lo)
      col[leaving].stat = VStat::AtLower;
    else if (col[leaving].hi && leave_val == *col[leaving].hi)
      col[leaving].stat = VStat::AtUpper;
    else
      throw std::logic_error("simplex: leaving variable missed its bound");
  }

  SxResult res;
  Rat obj = 0;
  for (int i = 0; i < m; ++i)
    if (col[basis[i]].artificial) obj += beta[i];
  if (obj == 0) {
    res.feasible = true;
    res.x.assign(n, Rat(0));
    std::vector<Rat> vals(N, Rat(0));
    for (int j = 0; j < N; ++j)
      if (!in_basis[j]) vals[j] = var_value(j);
    for (int i = 0; i < m; ++i) vals[basis[i]] = beta[i];
    for (int j = 0; j < n; ++j) res.x[j] = vals[j];
  } else {
    res.feasible = false;
    res.y.assign(m, Rat(0));
    for (int i = 0; i < m; ++i) {
      Rat acc = 0;
      for (int k = 0; k < m; ++k)
        if (col[basis[k]].artificial) acc += T[k][n + m + i];
      res.y[i] = acc * sigma[i];
    }
  }
  return res;
}

}  // namespace wlsa::detail
