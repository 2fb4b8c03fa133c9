// Float-guided exact LP feasibility: a double-precision phase-1 simplex
// proposes a final basis, the basis system is re-solved in exact rationals,
// and the result is verified. Any mismatch falls back to the exact simplex.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <optional>
#include <vector>

#include "lp_internal.hpp"

namespace wlsa::detail {

namespace {

enum FStat { FBasic = 0, FLower = 1, FUpper = 2, FFree = 3 };

struct FloatOutcome {
  bool ok = false;
  bool feasible = false;
  std::vector<int> basis;  // row -> column index
  std::vector<int> stat;   // per column
  std::vector<int> sigma;  // per row, +1 or -1
};

double to_d(const Rat& r) { return mpq_get_d(r.get_mpq_t()); }

// Tableau columns: n structurals then m slacks. Artificials (column ids
// n+m+i) are basic-only bookkeeping: they never re-enter, so their tableau
// columns are not stored. The phase-1 objective row is kept incrementally.
FloatOutcome float_phase1(const std::vector<VarBounds>& bounds, const std::vector<SxRow>& rows) {
  const int n = static_cast<int>(bounds.size());
  const int m = static_cast<int>(rows.size());
  const int N = n + m;
  const double eps_piv = 1e-8, eps_d = 1e-7, harris = 1e-7;

  FloatOutcome out;
  std::vector<char> has_lo(N, 0), has_hi(N, 0);
  std::vector<double> lo(N, 0), hi(N, 0), value(N, 0);
  std::vector<int> stat(N, FLower);
  for (int j = 0; j < n; ++j) {
    if (bounds[j].lo) {
      has_lo[j] = 1;
      lo[j] = to_d(*bounds[j].lo);
    }
    if (bounds[j].hi) {
      has_hi[j] = 1;
      hi[j] = to_d(*bounds[j].hi);
    }
    if (has_lo[j]) {
      stat[j] = FLower;
      value[j] = lo[j];
    } else if (has_hi[j]) {
      stat[j] = FUpper;
      value[j] = hi[j];
    } else {
      stat[j] = FFree;
    }
  }
  for (int i = 0; i < m; ++i) {
    int s = n + i;
    switch (rows[i].rel) {
      case Rel::Le:
        has_lo[s] = 1;
        break;
      case Rel::Ge:
        has_hi[s] = 1;
        stat[s] = FUpper;
        break;
      case Rel::Eq:
        has_lo[s] = has_hi[s] = 1;
        break;
    }
  }

  std::vector<int> sigma(m, 1);
  std::vector<double> beta(m, 0);
  std::vector<int> basis(m);
  std::vector<std::vector<double>> T(m, std::vector<double>(N, 0));
  std::vector<double> zrow(N, 0);  // c_j - c_B^T T[.,j] with c = 1 on artificials
  double scale = 1;
  for (int i = 0; i < m; ++i) {
    double r = to_d(rows[i].rhs);
    for (const auto& [v, a] : rows[i].coef) r -= to_d(a) * value[v];
    if (r < 0) sigma[i] = -1;
    beta[i] = r * sigma[i];
    scale = std::max(scale, beta[i]);
    basis[i] = n + m + i;
    stat.push_back(FBasic);  // artificial ids live past N
    for (const auto& [v, a] : rows[i].coef) T[i][v] = to_d(a) * sigma[i];
    T[i][n + i] = sigma[i];
    for (int j = 0; j < N; ++j) zrow[j] -= T[i][j];
  }
  stat.resize(N + m, FBasic);
  const double eps_obj = 1e-7 * scale;

  std::vector<char> in_basis(N, 0);

  const long max_iter = 100L * (m + N) + 20000;
  const long bland_after = 5L * (m + N) + 2000;
  long iter = 0;

  auto var_value = [&](int j) -> double {
    if (stat[j] == FLower) return lo[j];
    if (stat[j] == FUpper) return hi[j];
    return 0;
  };
  auto objective = [&]() {
    double o = 0;
    for (int i = 0; i < m; ++i)
      if (basis[i] >= N) o += beta[i];
    return o;
  };

  while (true) {
    if (iter > max_iter) {
      if (std::getenv("WLSA_LP_DEBUG"))
        std::fprintf(stderr, "lp: float m=%d gave up after %ld iters\n", m, iter);
      return out;  // give up, fall back to exact
    }
    if (objective() < eps_obj) break;

    bool bland = iter > bland_after;
    int enter = -1, dir = 0;
    double best = 0;
    for (int j = 0; j < N; ++j) {
      if (in_basis[j]) continue;
      if (has_lo[j] && has_hi[j] && lo[j] == hi[j]) continue;
      double d = zrow[j];
      int dj = 0;
      if (stat[j] == FLower && d < -eps_d)
        dj = 1;
      else if (stat[j] == FUpper && d > eps_d)
        dj = -1;
      else if (stat[j] == FFree && std::abs(d) > eps_d)
        dj = d < 0 ? 1 : -1;
      if (dj == 0) continue;
      double score = std::abs(d);
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
    if (enter == -1) break;  // claims infeasible
    ++iter;

    // two-pass Harris ratio test: find the tightest cap, then among rows
    // within the tolerance window pick the largest pivot magnitude
    double flip_range = -1;
    if (has_lo[enter] && has_hi[enter]) flip_range = hi[enter] - lo[enter];
    double limit = -1;
    bool have_limit = false;
    for (int i = 0; i < m; ++i) {
      double s = T[i][enter] * dir;
      if (std::abs(s) < eps_piv) continue;
      int bj = basis[i];
      double cap;
      if (s > 0) {
        if (bj >= N) {  // artificial, lower bound 0
          cap = beta[i] / s;
        } else if (has_lo[bj])
          cap = (beta[i] - lo[bj]) / s;
        else
          continue;
      } else {
        if (bj >= N)
          continue;  // artificials have no upper bound
        else if (has_hi[bj])
          cap = (hi[bj] - beta[i]) / (-s);
        else
          continue;
      }
      if (cap < 0) cap = 0;
      if (!have_limit || cap < limit) {
        have_limit = true;
        limit = cap;
      }
    }
    if (!have_limit && flip_range < 0) return out;  // unbounded: should not happen

    if (!have_limit || (flip_range >= 0 && flip_range < limit)) {
      for (int i = 0; i < m; ++i) beta[i] -= T[i][enter] * dir * flip_range;
      stat[enter] = (dir > 0) ? FUpper : FLower;
      continue;
    }

    int leave_row = -1;
    double best_piv = 0;
    for (int i = 0; i < m; ++i) {
      double s = T[i][enter] * dir;
      if (std::abs(s) < eps_piv) continue;
      int bj = basis[i];
      double cap;
      if (s > 0) {
        if (bj >= N)
          cap = beta[i] / s;
        else if (has_lo[bj])
          cap = (beta[i] - lo[bj]) / s;
        else
          continue;
      } else {
        if (bj >= N)
          continue;
        else if (has_hi[bj])
          cap = (hi[bj] - beta[i]) / (-s);
        else
          continue;
      }
      if (cap < 0) cap = 0;
      if (cap <= limit + harris && std::abs(s) > best_piv) {
        best_piv = std::abs(s);
        leave_row = i;
      }
    }
    if (leave_row < 0) return out;

    double enter_val = var_value(enter) + dir * limit;
    int leaving = basis[leave_row];
    double leave_val = beta[leave_row] - T[leave_row][enter] * dir * limit;
    for (int i = 0; i < m; ++i)
      if (i != leave_row) beta[i] -= T[i][enter] * dir * limit;

    double piv = T[leave_row][enter];
    for (int j = 0; j < N; ++j) T[leave_row][j] /= piv;
    double zf = zrow[enter];
    if (zf != 0)
      for (int j = 0; j < N; ++j) zrow[j] -= zf * T[leave_row][j];
    for (int i = 0; i < m; ++i) {
      if (i == leave_row) continue;
      double f = T[i][enter];
      if (f == 0) continue;
      for (int j = 0; j < N; ++j)
        if (T[leave_row][j] != 0) T[i][j] -= f * T[leave_row][j];
    }
    basis[leave_row] = enter;
    beta[leave_row] = enter_val;
    in_basis[enter] = 1;
    stat[enter] = FBasic;
    if (leaving >= N) {
      stat[leaving] = FLower;  // artificial retires at zero
    } else {
      in_basis[leaving] = 0;
      if (has_lo[leaving] && has_hi[leaving])
        stat[leaving] = std::abs(leave_val - lo[leaving]) <= std::abs(leave_val - hi[leaving])
                            ? FLower
                            : FUpper;
      else if (has_lo[leaving])
        stat[leaving] = FLower;
      else if (has_hi[leaving])
        stat[leaving] = FUpper;
      else
        stat[leaving] = FFree;
    }
  }

  if (std::getenv("WLSA_LP_DEBUG"))
    std::fprintf(stderr, "lp: float m=%d iters=%ld obj=%g\n", m, iter, objective());
  out.ok = true;
  out.feasible = objective() < eps_obj;
  out.basis = std::move(basis);
  out.stat = std::move(stat);
  out.sigma = std::move(sigma);
  return out;
}

// Gauss-Jordan with sparse rows and greedy min-fill-ish pivoting.
// Solves M x = rhs for square M given row-major; nullopt when singular.
std::optional<std::vector<Rat>> solve_square(int m, std::vector<std::map<int, Rat>> R,
                                             std::vector<Rat> rhs) {
  std::vector<int> pivot_col(m, -1);
  std::vector<char> row_done(m, 0), col_done(m, 0);
  for (int step = 0; step < m; ++step) {
    std::vector<int> colcnt(m, 0);
    for (int r = 0; r < m; ++r)
      if (!row_done[r])
        for (const auto& [c, v] : R[r])
          if (!col_done[c]) ++colcnt[c];
    int bc = -1;
    for (int c = 0; c < m; ++c)
      if (!col_done[c] && colcnt[c] > 0 && (bc == -1 || colcnt[c] < colcnt[bc])) bc = c;
    if (bc == -1) return std::nullopt;
    int br = -1;
    size_t bn = 0;
    for (int r = 0; r < m; ++r)
      if (!row_done[r] && R[r].count(bc) && (br == -1 || R[r].size() < bn)) {
        br = r;
        bn = R[r].size();
      }
    Rat p = R[br][bc];
    for (auto& [c, v] : R[br]) v /= p;
    rhs[br] /= p;
    for (int r = 0; r < m; ++r) {
      if (r == br) continue;
      auto it = R[r].find(bc);
      if (it == R[r].end()) continue;
      Rat f = it->second;
      for (const auto& [c, v] : R[br]) {
        auto jt = R[r].find(c);
        if (jt == R[r].end()) {
          Rat nv = -f * v;
          if (nv != 0) R[r][c] = std::move(nv);
        } else {
          jt->second -= f * v;
          if (jt->second == 0) R[r].erase(jt);
        }
      }
      rhs[r] -= f * rhs[br];
    }
    row_done[br] = 1;
    col_done[bc] = 1;
    pivot_col[br] = bc;
  }
  std::vector<Rat> x(m, Rat(0));
  for (int r = 0; r < m; ++r) x[pivot_col[r]] = rhs[r];
  return x;
}

bool reconstruct(const std::vector<VarBounds>& bounds, const std::vector<SxRow>& rows,
                 const FloatOutcome& fo, SxResult& res) {
  const int n = static_cast<int>(bounds.size());
  const int m = static_cast<int>(rows.size());

  // basis matrix of the sigma-scaled equality system, row-major
  std::vector<std::map<int, Rat>> B(m);
  std::map<int, int> slot_of;
  for (int k = 0; k < m; ++k) slot_of[fo.basis[k]] = k;
  for (int k = 0; k < m; ++k) {
    int j = fo.basis[k];
    if (j >= n + m) {
      B[j - n - m][k] = 1;  // artificial column is e_i
    } else if (j >= n) {
      int i = j - n;
      B[i][k] = Rat(fo.sigma[i]);
    }
  }
  for (int i = 0; i < m; ++i)
    for (const auto& [v, a] : rows[i].coef) {
      auto it = slot_of.find(v);
      if (it != slot_of.end()) {
        Rat e = a * fo.sigma[i];
        if (e != 0) B[i][it->second] = std::move(e);
      }
    }

  if (fo.feasible) {
    std::vector<Rat> v(n, Rat(0));
    for (int j = 0; j < n; ++j) {
      if (fo.stat[j] == FBasic) continue;
      if (fo.stat[j] == FLower) {
        if (!bounds[j].lo) return false;
        v[j] = *bounds[j].lo;
      } else if (fo.stat[j] == FUpper) {
        if (!bounds[j].hi) return false;
        v[j] = *bounds[j].hi;
      }
    }
    std::vector<Rat> rhs(m, Rat(0));
    for (int i = 0; i < m; ++i) {
      Rat r = rows[i].rhs;
      for (const auto& [j, a] : rows[i].coef)
        if (!slot_of.count(j)) r -= a * v[j];
      rhs[i] = r * fo.sigma[i];
    }
    auto xb = solve_square(m, B, std::move(rhs));
    if (!xb) return false;
    std::vector<Rat> x = v;
    for (int j = 0; j < n; ++j) {
      auto it = slot_of.find(j);
      if (it != slot_of.end()) x[j] = (*xb)[it->second];
    }
    for (int j = 0; j < n; ++j) {
      if (bounds[j].lo && x[j] < *bounds[j].lo) return false;
      if (bounds[j].hi && x[j] > *bounds[j].hi) return false;
    }
    for (const SxRow& r : rows) {
      Rat lhs = 0;
      for (const auto& [j, a] : r.coef) lhs += a * x[j];
      if (r.rel == Rel::Le && lhs > r.rhs) return false;
      if (r.rel == Rel::Ge && lhs < r.rhs) return false;
      if (r.rel == Rel::Eq && lhs != r.rhs) return false;
    }
    res.feasible = true;
    res.x = std::move(x);
    return true;
  }

  // infeasible claim: duals from B^T ybar = c_B, then y_i = ybar_i * sigma_i
  std::vector<std::map<int, Rat>> Bt(m);
  for (int i = 0; i < m; ++i)
    for (const auto& [k, val] : B[i]) Bt[k][i] = val;
  std::vector<Rat> cb(m, Rat(0));
  bool any = false;
  for (int k = 0; k < m; ++k)
    if (fo.basis[k] >= n + m) {
      cb[k] = 1;
      any = true;
    }
  if (!any) return false;
  auto ybar = solve_square(m, std::move(Bt), std::move(cb));
  if (!ybar) return false;
  std::vector<Rat> y(m);
  for (int i = 0; i < m; ++i) y[i] = (*ybar)[i] * fo.sigma[i];

  Rat ytb = 0;
  std::map<int, Rat> z;
  for (int i = 0; i < m; ++i) {
    if (y[i] == 0) continue;
    if (rows[i].rel == Rel::Le && y[i] > 0) return false;
    if (rows[i].rel == Rel::Ge && y[i] < 0) return false;
    ytb += y[i] * rows[i].rhs;
    for (const auto& [j, a] : rows[i].coef) z[j] += y[i] * a;
  }
  Rat V = 0;
  for (const auto& [j, zj] : z) {
    if (zj == 0) continue;
    if (zj > 0) {
      if (!bounds[j].hi) return false;
      V += zj * *bounds[j].hi;
    } else {
      if (!bounds[j].lo) return false;
      V += zj * *bounds[j].lo;
    }
  }
  if (!(V < ytb)) return false;
  res.feasible = false;
  res.y = std::move(y);
  return true;
}

}  // namespace

SxResult solve_rows(const std::vector<VarBounds>& bounds, const std::vector<SxRow>& rows) {
  if (rows.size() <= 20 || std::getenv("WLSA_LP_EXACT")) return phase1_simplex(bounds, rows);
  FloatOutcome fo = float_phase1(bounds, rows);
  if (fo.ok) {
    SxResult res;
    if (reconstruct(bounds, rows, fo, res)) return res;
  }
  if (std::getenv("WLSA_LP_DEBUG"))
    std::fprintf(stderr, "lp: float basis rejected, exact fallback on %zu rows\n", rows.size());
  return phase1_simplex(bounds, rows);
}

}  // namespace wlsa::detail
