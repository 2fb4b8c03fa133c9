#include "wlsa/linear_system.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <set>
#include <stdexcept>

#include "lp_internal.hpp"

namespace wlsa {

int LinearSystem::add_variable(const std::string& name, std::optional<Rat> lo,
                               std::optional<Rat> hi) {
  if (by_name_.count(name)) throw ValidationError("duplicate variable name: " + name);
  // callers may hand over raw two-argument mpq values; normalize before any comparison
  if (lo) lo->canonicalize();
  if (hi) hi->canonicalize();
  if (lo && hi && *lo > *hi) throw ValidationError("empty bound interval for " + name);
  int idx = num_vars();
  by_name_[name] = idx;
  names_.push_back(name);
  bounds_.push_back({std::move(lo), std::move(hi)});
  return idx;
}

void LinearSystem::add_row(std::map<int, Rat> coef, Rel rel, Rat rhs) {
  rhs.canonicalize();
  for (auto it = coef.begin(); it != coef.end();) {
    if (it->first < 0 || it->first >= num_vars())
      throw ValidationError("row references undeclared variable");
    it->second.canonicalize();
    if (it->second == 0)
      it = coef.erase(it);
    else
      ++it;
  }
  rows_.push_back({std::move(coef), rel, std::move(rhs)});
}

int LinearSystem::var_index(const std::string& name) const {
  auto it = by_name_.find(name);
  return it == by_name_.end() ? -1 : it->second;
}

bool verify_point(const LinearSystem& sys, const std::vector<Rat>& raw_point) {
  if (static_cast<int>(raw_point.size()) != sys.num_vars()) return false;
  // external points may carry non-canonical mpq values, which break equality
  std::vector<Rat> point = raw_point;
  for (Rat& r : point) r.canonicalize();
  for (int v = 0; v < sys.num_vars(); ++v) {
    const VarBounds& b = sys.bounds(v);
    if (b.lo && point[v] < *b.lo) return false;
    if (b.hi && point[v] > *b.hi) return false;
  }
  for (const LinRow& r : sys.rows()) {
    Rat lhs = 0;
    for (const auto& [v, a] : r.coef) lhs += a * point[v];
    switch (r.rel) {
      case Rel::Le:
        if (lhs > r.rhs) return false;
        break;
      case Rel::Ge:
        if (lhs < r.rhs) return false;
        break;
      case Rel::Eq:
        if (lhs != r.rhs) return false;
        break;
    }
  }
  return true;
}

bool verify_certificate(const LinearSystem& sys, const std::vector<Rat>& raw_cert) {
  if (static_cast<int>(raw_cert.size()) != sys.num_rows()) return false;
  std::vector<Rat> cert = raw_cert;
  for (Rat& r : cert) r.canonicalize();
  std::map<int, Rat> z;
  Rat yb = 0;
  for (int i = 0; i < sys.num_rows(); ++i) {
    const Rat& y = cert[i];
    if (y == 0) continue;
    const LinRow& r = sys.row(i);
    if (r.rel == Rel::Le && y > 0) return false;
    if (r.rel == Rel::Ge && y < 0) return false;
    for (const auto& [v, a] : r.coef) z[v] += y * a;
    yb += y * r.rhs;
  }
  // max of z.x over the variable box must fall short of yb
  Rat V = 0;
  for (const auto& [v, zv] : z) {
    if (zv == 0) continue;
    const VarBounds& b = sys.bounds(v);
    std::optional<Rat> best;
    if (zv > 0) {
      if (!b.hi) return false;  // unbounded above: no contradiction
      best = zv * *b.hi;
    } else {
      if (!b.lo) return false;
      best = zv * *b.lo;
    }
    V += *best;
  }
  return V < yb;
}

namespace {

struct PRow {
  std::map<int, Rat> coef;
  Rel rel = Rel::Eq;
  Rat rhs = 0;
  bool alive = true;
};

struct JEntry {  // rows[target] += lambda * rows[src] was applied
  int target;
  int src;
  Rat lambda;
};

struct PivotRec {  // a * var + rest = rhs held when var was eliminated
  int var;
  Rat a;
  std::map<int, Rat> rest;
  Rat rhs;
};

struct Interval {
  std::optional<Rat> lo, hi;  // absent = infinite
};

Interval row_interval(const std::map<int, Rat>& coef, const std::vector<VarBounds>& bounds) {
  Interval iv;
  iv.lo = Rat(0);
  iv.hi = Rat(0);
  for (const auto& [v, a] : coef) {
    const VarBounds& b = bounds[v];
    const std::optional<Rat>& down = a > 0 ? b.lo : b.hi;
    const std::optional<Rat>& up = a > 0 ? b.hi : b.lo;
    if (iv.lo) {
      if (down)
        *iv.lo += a * *down;
      else
        iv.lo.reset();
    }
    if (iv.hi) {
      if (up)
        *iv.hi += a * *up;
      else
        iv.hi.reset();
    }
  }
  return iv;
}

class Solver {
 public:
  explicit Solver(const LinearSystem& sys) : sys_(sys) {
    nv_ = sys.num_vars();
    for (int v = 0; v < nv_; ++v) bounds_.push_back(sys.bounds(v));
    var_alive_.assign(nv_, true);
    occurs_.resize(nv_);
    for (int i = 0; i < sys.num_rows(); ++i) {
      rows_.push_back({sys.row(i).coef, sys.row(i).rel, sys.row(i).rhs, true});
      for (const auto& [v, a] : rows_.back().coef) occurs_[v].insert(i);
    }
  }

  LpResult run() {
    const bool dbg = std::getenv("WLSA_LP_DEBUG") != nullptr;
    for (int i = 0; i < static_cast<int>(rows_.size()); ++i) {
      if (auto res = inspect(i)) return *res;
    }
    long npiv = 0;
    while (true) {
      int p = pick_equality();
      if (p < 0) break;
      ++npiv;
      if (auto res = pivot(p)) return *res;
    }
    dedup();
    if (dbg) {
      long alive = 0, nnz = 0;
      for (const auto& r : rows_)
        if (r.alive) {
          ++alive;
          nnz += static_cast<long>(r.coef.size());
        }
      long vars = std::count(var_alive_.begin(), var_alive_.end(), 1);
      std::fprintf(stderr, "lp: pivots=%ld residual rows=%ld vars=%ld nnz=%ld\n", npiv, alive,
                   vars, nnz);
    }
    return solve_residual();
  }

 private:
  const LinearSystem& sys_;
  int nv_ = 0;
  std::vector<VarBounds> bounds_;
  std::vector<PRow> rows_;
  std::vector<std::set<int>> occurs_;
  std::vector<char> var_alive_;
  std::set<std::pair<int, int>> eq_queue_;  // (nnz, row) of alive equality rows
  std::vector<JEntry> journal_;
  std::vector<PivotRec> pivots_;

  void kill_row(int i) {
    if (!rows_[i].alive) return;
    rows_[i].alive = false;
    eq_queue_.erase({static_cast<int>(rows_[i].coef.size()), i});
    for (const auto& [v, a] : rows_[i].coef) occurs_[v].erase(i);
  }

  // classify a row after creation or modification; may detect infeasibility
  std::optional<LpResult> inspect(int i) {
    PRow& r = rows_[i];
    if (!r.alive) return std::nullopt;
    eq_queue_.erase({static_cast<int>(r.coef.size()), i});
    if (r.coef.empty()) {
      bool ok = (r.rel == Rel::Le && Rat(0) <= r.rhs) || (r.rel == Rel::Ge && Rat(0) >= r.rhs) ||
                (r.rel == Rel::Eq && r.rhs == 0);
      if (ok) {
        kill_row(i);
        return std::nullopt;
      }
      std::vector<Rat> y(rows_.size(), Rat(0));
      if (r.rel == Rel::Le)
        y[i] = -1;  // 0 <= rhs fails, so rhs < 0 and -rhs > 0
      else if (r.rel == Rel::Ge)
        y[i] = 1;
      else
        y[i] = r.rhs > 0 ? 1 : -1;
      return lift_certificate(std::move(y));
    }
    Interval iv = row_interval(r.coef, bounds_);
    bool vacuous = false;
    switch (r.rel) {
      case Rel::Le:
        vacuous = iv.hi && *iv.hi <= r.rhs;
        break;
      case Rel::Ge:
        vacuous = iv.lo && *iv.lo >= r.rhs;
        break;
      case Rel::Eq:
        vacuous = iv.lo && iv.hi && *iv.lo == r.rhs && *iv.hi == r.rhs;
        break;
    }
    if (vacuous) {
      kill_row(i);
      return std::nullopt;
    }
    if (r.rel == Rel::Eq) eq_queue_.insert({static_cast<int>(r.coef.size()), i});
    return std::nullopt;
  }

  int pick_equality() {
    if (eq_queue_.empty()) return -1;
    return eq_queue_.begin()->second;
  }

  // choose the pivot variable of row p: fewest other occurrences
  int pick_var(const PRow& r) const {
    int best = -1;
    size_t best_cnt = 0;
    for (const auto& [v, a] : r.coef) {
      size_t cnt = occurs_[v].size();
      if (best < 0 || cnt < best_cnt) {
        best = v;
        best_cnt = cnt;
      }
    }
    return best;
  }

  void add_multiple(int target, int p, const Rat& lambda) {
    PRow& t = rows_[target];
    const PRow& src = rows_[p];
    eq_queue_.erase({static_cast<int>(t.coef.size()), target});
    for (const auto& [v, a] : src.coef) {
      auto it = t.coef.find(v);
      if (it == t.coef.end()) {
        Rat nv = lambda * a;
        if (nv != 0) {
          t.coef[v] = nv;
          occurs_[v].insert(target);
        }
      } else {
        it->second += lambda * a;
        if (it->second == 0) {
          t.coef.erase(it);
          occurs_[v].erase(target);
        }
      }
    }
    t.rhs += lambda * src.rhs;
    journal_.push_back({target, p, lambda});
  }

  std::optional<LpResult> pivot(int p) {
    PRow& row = rows_[p];
    int x = pick_var(row);
    Rat a = row.coef.at(x);

    if (row.coef.size() == 1) {
      // fixes x outright
      Rat v = row.rhs / a;
      const VarBounds& b = bounds_[x];
      if ((b.lo && v < *b.lo) || (b.hi && v > *b.hi)) {
        std::vector<Rat> y(rows_.size(), Rat(0));
        y[p] = (b.hi && v > *b.hi) ? Rat(1) / a : Rat(-1) / a;
        return lift_certificate(std::move(y));
      }
    }

    PivotRec rec;
    rec.var = x;
    rec.a = a;
    rec.rest = row.coef;
    rec.rest.erase(x);
    rec.rhs = row.rhs;
    pivots_.push_back(rec);

    std::vector<int> touched(occurs_[x].begin(), occurs_[x].end());
    for (int i : touched) {
      if (i == p || !rows_[i].alive) continue;
      Rat lambda = -rows_[i].coef.at(x) / a;
      add_multiple(i, p, lambda);
    }

    // replace x's bounds by synthetic rows over the substitution expression
    // x = (rhs - rest) / a, skipped when the box already implies them
    if (!rec.rest.empty()) {
      Interval iv = row_interval(rec.rest, bounds_);
      Interval xi;  // interval of x's expression
      if (rec.a > 0) {
        if (iv.hi) xi.lo = (rec.rhs - *iv.hi) / rec.a;
        if (iv.lo) xi.hi = (rec.rhs - *iv.lo) / rec.a;
      } else {
        if (iv.lo) xi.lo = (rec.rhs - *iv.lo) / rec.a;
        if (iv.hi) xi.hi = (rec.rhs - *iv.hi) / rec.a;
      }
      const VarBounds& b = bounds_[x];
      Rat mu = Rat(-1) / rec.a;
      if (b.lo && !(xi.lo && *xi.lo >= *b.lo)) {
        if (auto res = add_synthetic(p, mu, Rel::Ge, *b.lo)) return res;
      }
      if (b.hi && !(xi.hi && *xi.hi <= *b.hi)) {
        if (auto res = add_synthetic(p, mu, Rel::Le, *b.hi)) return res;
      }
    } else {
      // fixed within bounds: nothing to carry
    }

    kill_row(p);
    var_alive_[x] = false;
    occurs_[x].clear();
    for (int i : touched)
      if (i != p)
        if (auto res = inspect(i)) return res;
    return std::nullopt;
  }

  // synthetic row: (bound row of the pivot variable) + mu * pivot row
  std::optional<LpResult> add_synthetic(int p, const Rat& mu, Rel rel, const Rat& bound) {
    PRow s;
    s.rel = rel;
    s.rhs = bound + mu * rows_[p].rhs;
    for (const auto& [v, a] : rows_[p].coef) {
      Rat c = mu * a;
      if (c != 0) s.coef[v] = c;
    }
    s.coef.erase(pivots_.back().var);  // coefficient cancels exactly
    int id = static_cast<int>(rows_.size());
    rows_.push_back(std::move(s));
    for (const auto& [v, a] : rows_[id].coef) occurs_[v].insert(id);
    journal_.push_back({id, p, mu});
    return inspect(id);
  }

  // drops rows implied by an identical (up to positive scale) surviving row
  void dedup() {
    // key: relation + coefficients scaled so the first one is +/-1
    std::map<std::tuple<int, std::vector<std::pair<int, Rat>>>, std::pair<int, Rat>> seen;
    for (int i = 0; i < static_cast<int>(rows_.size()); ++i) {
      if (!rows_[i].alive) continue;
      Rat s = abs(rows_[i].coef.begin()->second);
      std::vector<std::pair<int, Rat>> key;
      for (const auto& [v, a] : rows_[i].coef) key.emplace_back(v, a / s);
      Rat nrhs = rows_[i].rhs / s;
      auto k = std::make_tuple(static_cast<int>(rows_[i].rel), std::move(key));
      auto it = seen.find(k);
      if (it == seen.end()) {
        seen.emplace(std::move(k), std::make_pair(i, nrhs));
        continue;
      }
      bool keep_new = false;
      switch (rows_[i].rel) {
        case Rel::Le:
          keep_new = nrhs < it->second.second;
          break;
        case Rel::Ge:
          keep_new = nrhs > it->second.second;
          break;
        case Rel::Eq:
          keep_new = false;
          if (nrhs != it->second.second) continue;  // contradictory pair, leave both
          break;
      }
      if (keep_new) {
        kill_row(it->second.first);
        it->second = {i, nrhs};
      } else {
        kill_row(i);
      }
    }
  }

  LpResult solve_residual() {
    std::vector<int> vmap(nv_, -1), vlist;
    for (int v = 0; v < nv_; ++v)
      if (var_alive_[v]) {
        vmap[v] = static_cast<int>(vlist.size());
        vlist.push_back(v);
      }
    std::vector<VarBounds> sb;
    for (int v : vlist) sb.push_back(bounds_[v]);
    std::vector<detail::SxRow> srows;
    std::vector<int> rmap;
    for (int i = 0; i < static_cast<int>(rows_.size()); ++i) {
      if (!rows_[i].alive) continue;
      detail::SxRow sr;
      sr.rel = rows_[i].rel;
      sr.rhs = rows_[i].rhs;
      for (const auto& [v, a] : rows_[i].coef) sr.coef[vmap[v]] = a;
      srows.push_back(std::move(sr));
      rmap.push_back(i);
    }

    // lazy activation: solve over the violated rows only, growing the active
    // set until the point satisfies everything (inactive rows keep multiplier 0)
    const bool dbg = std::getenv("WLSA_LP_DEBUG") != nullptr;
    std::vector<char> active(srows.size(), 0);
    std::vector<int> act_ids;
    std::vector<Rat> cand(sb.size(), Rat(0));
    for (size_t v = 0; v < sb.size(); ++v) {
      if (sb[v].lo)
        cand[v] = *sb[v].lo;
      else if (sb[v].hi)
        cand[v] = *sb[v].hi;
    }
    detail::SxResult sx;
    while (true) {
      // collect violated rows, most violated first
      std::vector<std::pair<Rat, int>> viol;
      for (size_t i = 0; i < srows.size(); ++i) {
        if (active[i]) continue;
        Rat lhs = 0;
        for (const auto& [v, a] : srows[i].coef) lhs += a * cand[v];
        Rat gap = 0;
        switch (srows[i].rel) {
          case Rel::Le:
            if (lhs > srows[i].rhs) gap = lhs - srows[i].rhs;
            break;
          case Rel::Ge:
            if (lhs < srows[i].rhs) gap = srows[i].rhs - lhs;
            break;
          case Rel::Eq:
            gap = abs(lhs - srows[i].rhs);
            break;
        }
        if (gap > 0) viol.emplace_back(gap, static_cast<int>(i));
      }
      if (viol.empty()) {
        sx.feasible = true;
        sx.x = cand;
        break;
      }
      std::sort(viol.begin(), viol.end(),
                [](const auto& a, const auto& b) { return a.first > b.first; });
      for (auto& [gap, id] : viol) {
        active[id] = 1;
        act_ids.push_back(id);
      }
      std::vector<detail::SxRow> sub;
      for (int id : act_ids) sub.push_back(srows[id]);
      if (dbg) std::fprintf(stderr, "lp: simplex on %zu active rows\n", sub.size());
      sx = detail::solve_rows(sb, sub);
      if (!sx.feasible) break;
      cand = sx.x;
    }

    if (!sx.feasible) {
      std::vector<Rat> y(rows_.size(), Rat(0));
      for (size_t k = 0; k < act_ids.size(); ++k) y[rmap[act_ids[k]]] = sx.y[k];
      return *lift_certificate(std::move(y));
    }

    LpResult out;
    out.feasible = true;
    out.point.assign(nv_, Rat(0));
    std::vector<char> have(nv_, 0);
    for (size_t k = 0; k < vlist.size(); ++k) {
      out.point[vlist[k]] = sx.x[k];
      have[vlist[k]] = 1;
    }
    for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
      Rat acc = it->rhs;
      for (const auto& [v, a] : it->rest) {
        if (!have[v]) throw std::logic_error("lp: back-substitution order broken");
        acc -= a * out.point[v];
      }
      out.point[it->var] = acc / it->a;
      have[it->var] = 1;
    }
    // free variables never touched by any row keep their box value
    for (int v = 0; v < nv_; ++v)
      if (!have[v]) {
        if (bounds_[v].lo)
          out.point[v] = *bounds_[v].lo;
        else if (bounds_[v].hi)
          out.point[v] = *bounds_[v].hi;
        have[v] = 1;
      }
    if (!verify_point(sys_, out.point)) throw std::logic_error("lp: feasible point failed re-verification");
    return out;
  }

  std::optional<LpResult> lift_certificate(std::vector<Rat> y) {
    y.resize(rows_.size(), Rat(0));
    for (auto it = journal_.rbegin(); it != journal_.rend(); ++it)
      if (y[it->target] != 0) y[it->src] += it->lambda * y[it->target];
    LpResult out;
    out.feasible = false;
    out.certificate.assign(y.begin(), y.begin() + sys_.num_rows());
    if (!verify_certificate(sys_, out.certificate))
      throw std::logic_error("lp: infeasibility certificate failed re-verification");
    return out;
  }
};

}  // namespace

LpResult lp_feasibility(const LinearSystem& sys) {
  Solver s(sys);
  return s.run();
}

}  // namespace wlsa
