#include "wlsa/relax.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "wlsa/equitable.hpp"

namespace wlsa {

namespace {

std::vector<int> tuple_set(const Constraint& c) {
  std::set<int> s(c.tuple.begin(), c.tuple.end());
  return {s.begin(), s.end()};
}

std::string joined_names(const Structure& s, const std::vector<int>& els) {
  std::string out;
  for (size_t i = 0; i < els.size(); ++i) {
    if (i) out += ",";
    out += s.element_name(els[i]);
  }
  return out;
}

// all maps from a domain of the given size into [nb], as image index vectors
void each_map(int domain, int nb, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> img(domain, 0);
  while (true) {
    fn(img);
    int i = domain - 1;
    while (i >= 0 && img[i] == nb - 1) img[i--] = 0;
    if (i < 0) break;
    ++img[i];
  }
}

// subsets of {0..n-1} of size between 1 and kmax, as sorted index vectors
void each_subset(int n, int kmax, const std::function<void(const std::vector<int>&)>& fn) {
  for (int size = 1; size <= std::min(kmax, n); ++size) {
    std::vector<int> idx(size);
    for (int i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      fn(idx);
      int i = size - 1;
      while (i >= 0 && idx[i] == n - size + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
}

long pow_checked(long base, int exp, long cap) {
  long r = 1;
  for (int i = 0; i < exp; ++i) {
    r *= base;
    if (r > cap) return cap + 1;
  }
  return r;
}

void require_same_signature(const Structure& a, const Structure& b, const char* where) {
  if (!(a.signature() == b.signature()))
    throw ValidationError(std::string(where) + ": signature mismatch");
}

// whether b-tuple respects the repetition pattern of a-tuple (some f maps one to the other)
bool pattern_ok(const std::vector<int>& at, const std::vector<int>& bt) {
  for (size_t s = 0; s < at.size(); ++s)
    for (size_t t = s + 1; t < at.size(); ++t)
      if (at[s] == at[t] && bt[s] != bt[t]) return false;
  return true;
}

}  // namespace

std::string sa_set_var_name(const Structure& a, const Structure& b, const std::vector<int>& V,
                            const std::vector<int>& images) {
  return "p[" + joined_names(a, V) + "|" + joined_names(b, images) + "]";
}

std::string sa_con_var_name(const Structure& a, const Structure& b, int constraint,
                            const std::vector<int>& images) {
  return "q[" + a.constraint_name(constraint) + "|" + joined_names(b, images) + "]";
}

std::string x_var_name(const Structure& a, const Structure& b, int bb, int aa) {
  return "X[" + b.element_name(bb) + "," + a.element_name(aa) + "]";
}

std::string y_var_name(const Structure& a, const Structure& b, int cb, int ca) {
  return "Y[" + b.constraint_name(cb) + "," + a.constraint_name(ca) + "]";
}

std::string blp_var_name(const Structure& a, const Structure& b, int aa, int bb) {
  return "x[" + a.element_name(aa) + "," + b.element_name(bb) + "]";
}

namespace {

// shared by build_sa_system and build_sa_prime_system
LinearSystem build_sa_common(const Structure& a, const Structure& b, int k, bool prime,
                             long max_vars) {
  require_same_signature(a, b, "sa");
  if (k < 1) throw ValidationError("sa: k must be positive");
  const int n = a.n(), nb = b.n();
  const int keff = std::min(k, n);

  long count = 0;
  {
    // C(n, s) * nb^s for set variables
    std::vector<long> binom(n + 1, 0);
    binom[0] = 1;
    for (int i = 1; i <= n; ++i)
      for (int j = i; j >= 1; --j) binom[j] += binom[j - 1];
    for (int s = 1; s <= keff; ++s) {
      long p = pow_checked(nb, s, max_vars);
      count += binom[s] * p;
      if (count > max_vars) throw ResourceLimitError("sa: variable cap exceeded");
    }
    for (int c = 0; c < a.m(); ++c) {
      count += pow_checked(nb, static_cast<int>(tuple_set(a.constraint(c)).size()), max_vars);
      if (count > max_vars) throw ResourceLimitError("sa: variable cap exceeded");
    }
  }

  LinearSystem sys;
  // set-assignment variables, then constraint-assignment variables
  std::map<std::pair<std::vector<int>, std::vector<int>>, int> pvar;
  each_subset(n, keff, [&](const std::vector<int>& V) {
    each_map(static_cast<int>(V.size()), nb, [&](const std::vector<int>& img) {
      pvar[{V, img}] = sys.add_variable(sa_set_var_name(a, b, V, img));
    });
  });
  std::vector<std::map<std::vector<int>, int>> qvar(a.m());
  std::vector<std::vector<int>> cset(a.m());
  for (int c = 0; c < a.m(); ++c) {
    cset[c] = tuple_set(a.constraint(c));
    each_map(static_cast<int>(cset[c].size()), nb, [&](const std::vector<int>& img) {
      qvar[c][img] = sys.add_variable(sa_con_var_name(a, b, c, img));
    });
  }

  // normalization over every set of assignments
  each_subset(n, keff, [&](const std::vector<int>& V) {
    std::map<int, Rat> row;
    each_map(static_cast<int>(V.size()), nb, [&](const std::vector<int>& img) {
      row[pvar.at({V, img})] = 1;
    });
    sys.add_row(std::move(row), Rel::Eq, Rat(1));
  });

  if (!prime && keff >= 2) {
    // marginalization between nested sets
    each_subset(n, keff, [&](const std::vector<int>& V) {
      if (V.size() < 2) return;
      each_subset(static_cast<int>(V.size()), static_cast<int>(V.size()) - 1,
                  [&](const std::vector<int>& pos) {
                    std::vector<int> U;
                    for (int p : pos) U.push_back(V[p]);
                    each_map(static_cast<int>(U.size()), nb, [&](const std::vector<int>& fimg) {
                      std::map<int, Rat> row;
                      row[pvar.at({U, fimg})] = -1;
                      each_map(static_cast<int>(V.size()), nb, [&](const std::vector<int>& gimg) {
                        for (size_t t = 0; t < pos.size(); ++t)
                          if (gimg[pos[t]] != fimg[t]) return;
                        row[pvar.at({V, gimg})] += 1;
                      });
                      sys.add_row(std::move(row), Rel::Eq, Rat(0));
                    });
                  });
    });
  }

  // constraint marginals
  for (int c = 0; c < a.m(); ++c) {
    const std::vector<int>& cs = cset[c];
    each_subset(static_cast<int>(cs.size()), std::min<int>(k, static_cast<int>(cs.size())),
                [&](const std::vector<int>& pos) {
                  std::vector<int> U;
                  for (int p : pos) U.push_back(cs[p]);
                  each_map(static_cast<int>(U.size()), nb, [&](const std::vector<int>& fimg) {
                    std::map<int, Rat> row;
                    row[pvar.at({U, fimg})] = -1;
                    each_map(static_cast<int>(cs.size()), nb, [&](const std::vector<int>& gimg) {
                      for (size_t t = 0; t < pos.size(); ++t)
                        if (gimg[pos[t]] != fimg[t]) return;
                      row[qvar[c].at(gimg)] += 1;
                    });
                    // prime: p_U(f) <= sum, i.e. -p + sum >= 0
                    sys.add_row(std::move(row), prime ? Rel::Ge : Rel::Eq, Rat(0));
                  });
                });
  }

  if (prime) {
    for (int c = 0; c < a.m(); ++c) {
      std::map<int, Rat> row;
      for (const auto& [img, v] : qvar[c]) row[v] = 1;
      sys.add_row(std::move(row), Rel::Eq, Rat(1));
    }
  }

  // forbidden images zeroed
  std::set<Constraint> in_b(b.constraints().begin(), b.constraints().end());
  for (int c = 0; c < a.m(); ++c) {
    const Constraint& con = a.constraint(c);
    const std::vector<int>& cs = cset[c];
    each_map(static_cast<int>(cs.size()), nb, [&](const std::vector<int>& img) {
      Constraint target;
      target.symbol = con.symbol;
      for (int e : con.tuple) {
        int pos = static_cast<int>(std::lower_bound(cs.begin(), cs.end(), e) - cs.begin());
        target.tuple.push_back(img[pos]);
      }
      if (!in_b.count(target)) sys.add_row({{qvar[c].at(img), Rat(1)}}, Rel::Eq, Rat(0));
    });
  }
  return sys;
}

}  // namespace

LinearSystem build_sa_system(const Structure& a, const Structure& b, int k, long max_vars) {
  return build_sa_common(a, b, k, false, max_vars);
}

LinearSystem build_sa_prime_system(const Structure& a, const Structure& b, long max_vars) {
  return build_sa_common(a, b, 1, true, max_vars);
}

LinearSystem build_base_polytope(const Structure& a, const Structure& b, long max_vars) {
  require_same_signature(a, b, "blp");
  if (static_cast<long>(a.n()) * b.n() > max_vars)
    throw ResourceLimitError("blp: variable cap exceeded");
  LinearSystem sys;
  std::vector<std::vector<int>> x(a.n(), std::vector<int>(b.n()));
  for (int aa = 0; aa < a.n(); ++aa)
    for (int bb = 0; bb < b.n(); ++bb) x[aa][bb] = sys.add_variable(blp_var_name(a, b, aa, bb));
  for (int aa = 0; aa < a.n(); ++aa) {
    std::map<int, Rat> row;
    for (int bb = 0; bb < b.n(); ++bb) row[x[aa][bb]] = 1;
    sys.add_row(std::move(row), Rel::Eq, Rat(1));
  }
  std::set<Constraint> in_b(b.constraints().begin(), b.constraints().end());
  for (int c = 0; c < a.m(); ++c) {
    const Constraint& con = a.constraint(c);
    std::vector<int> cs = tuple_set(con);
    each_map(static_cast<int>(cs.size()), b.n(), [&](const std::vector<int>& img) {
      Constraint target;
      target.symbol = con.symbol;
      for (int e : con.tuple) {
        int pos = static_cast<int>(std::lower_bound(cs.begin(), cs.end(), e) - cs.begin());
        target.tuple.push_back(img[pos]);
      }
      if (in_b.count(target)) return;
      std::map<int, Rat> row;
      for (size_t t = 0; t < cs.size(); ++t) row[x[cs[t]][img[t]]] = 1;
      sys.add_row(std::move(row), Rel::Le, Rat(static_cast<int>(cs.size()) - 1));
    });
  }
  return sys;
}

LinearSystem build_blp_system(const Structure& a, const Structure& b, long max_vars) {
  require_same_signature(a, b, "blp");
  long nvars = static_cast<long>(a.n()) * b.n();
  std::vector<std::vector<int>> tuples_of(b.signature().symbols.size());
  for (int c = 0; c < b.m(); ++c) tuples_of[b.constraint(c).symbol].push_back(c);
  for (int c = 0; c < a.m(); ++c) nvars += static_cast<long>(tuples_of[a.constraint(c).symbol].size());
  if (nvars > max_vars) throw ResourceLimitError("blp: variable cap exceeded");

  LinearSystem sys;
  std::vector<std::vector<int>> x(a.n(), std::vector<int>(b.n()));
  for (int aa = 0; aa < a.n(); ++aa)
    for (int bb = 0; bb < b.n(); ++bb) x[aa][bb] = sys.add_variable(blp_var_name(a, b, aa, bb));
  for (int aa = 0; aa < a.n(); ++aa) {
    std::map<int, Rat> row;
    for (int bb = 0; bb < b.n(); ++bb) row[x[aa][bb]] = 1;
    sys.add_row(std::move(row), Rel::Eq, Rat(1));
  }
  for (int c = 0; c < a.m(); ++c) {
    const Constraint& con = a.constraint(c);
    const std::vector<int>& targets = tuples_of[con.symbol];
    std::vector<int> lam;
    std::map<int, Rat> norm;
    for (int t : targets) {
      int v = sys.add_variable("l[" + a.constraint_name(c) + "->" + b.constraint_name(t) + "]");
      lam.push_back(v);
      norm[v] = 1;
    }
    sys.add_row(std::move(norm), Rel::Eq, Rat(1));
    // per-position marginal consistency
    for (size_t s = 0; s < con.tuple.size(); ++s)
      for (int bb = 0; bb < b.n(); ++bb) {
        std::map<int, Rat> row;
        row[x[con.tuple[s]][bb]] = -1;
        for (size_t t = 0; t < targets.size(); ++t)
          if (b.constraint(targets[t]).tuple[s] == bb) row[lam[t]] += 1;
        sys.add_row(std::move(row), Rel::Eq, Rat(0));
      }
  }
  return sys;
}

LinearSystem build_frac_iso_system(const Structure& a, const Structure& b, long max_vars) {
  require_same_signature(a, b, "fraciso");
  if (a.n() != b.n())
    throw InfeasibleBySize("fraciso: universes have different sizes");
  if (a.m() != b.m())
    throw InfeasibleBySize("fraciso: constraint sets have different sizes");
  if (static_cast<long>(a.n()) * b.n() + static_cast<long>(a.m()) * b.m() > max_vars)
    throw ResourceLimitError("fraciso: variable cap exceeded");

  LinearSystem sys;
  std::vector<std::vector<int>> X(b.n(), std::vector<int>(a.n()));
  std::vector<std::vector<int>> Y(b.m(), std::vector<int>(a.m()));
  for (int bb = 0; bb < b.n(); ++bb)
    for (int aa = 0; aa < a.n(); ++aa) X[bb][aa] = sys.add_variable(x_var_name(a, b, bb, aa));
  for (int cb = 0; cb < b.m(); ++cb)
    for (int ca = 0; ca < a.m(); ++ca) Y[cb][ca] = sys.add_variable(y_var_name(a, b, cb, ca));

  auto stochastic = [&](const std::vector<std::vector<int>>& M) {
    int rows = static_cast<int>(M.size());
    if (rows == 0) return;
    int cols = static_cast<int>(M[0].size());
    for (int r = 0; r < rows; ++r) {
      std::map<int, Rat> row;
      for (int c = 0; c < cols; ++c) row[M[r][c]] = 1;
      sys.add_row(std::move(row), Rel::Eq, Rat(1));
    }
    for (int c = 0; c < cols; ++c) {
      std::map<int, Rat> row;
      for (int r = 0; r < rows; ++r) row[M[r][c]] = 1;
      sys.add_row(std::move(row), Rel::Eq, Rat(1));
    }
  };
  stochastic(X);
  stochastic(Y);

  for (const Label& l : occurring_labels(a, b)) {
    RatMatrix MA = incidence_matrix(a, l), MB = incidence_matrix(b, l);
    // X MA = MB Y entrywise over (b-element, a-constraint)
    for (int bb = 0; bb < b.n(); ++bb)
      for (int ca = 0; ca < a.m(); ++ca) {
        std::map<int, Rat> row;
        for (int aa = 0; aa < a.n(); ++aa)
          if (MA.get(aa, ca) != 0) row[X[bb][aa]] += MA.get(aa, ca);
        for (int cb = 0; cb < b.m(); ++cb)
          if (MB.get(bb, cb) != 0) row[Y[cb][ca]] -= MB.get(bb, cb);
        if (!row.empty()) sys.add_row(std::move(row), Rel::Eq, Rat(0));
      }
    // MA Y^T = X^T MB entrywise over (a-element, b-constraint)
    for (int aa = 0; aa < a.n(); ++aa)
      for (int cb = 0; cb < b.m(); ++cb) {
        std::map<int, Rat> row;
        for (int ca = 0; ca < a.m(); ++ca)
          if (MA.get(aa, ca) != 0) row[Y[cb][ca]] += MA.get(aa, ca);
        for (int bb = 0; bb < b.n(); ++bb)
          if (MB.get(bb, cb) != 0) row[X[bb][aa]] -= MB.get(bb, cb);
        if (!row.empty()) sys.add_row(std::move(row), Rel::Eq, Rat(0));
      }
  }
  return sys;
}

LinearSystem build_frac_hom_system(const Structure& a, const Structure& b, bool equality,
                                   long max_vars) {
  require_same_signature(a, b, "frachom");
  if (equality && (a.has_loops() || b.has_loops()))
    throw ValidationError("frachom: equality variant needs loop-free structures");
  if (static_cast<long>(a.n()) * b.n() + static_cast<long>(a.m()) * b.m() > max_vars)
    throw ResourceLimitError("frachom: variable cap exceeded");

  LinearSystem sys;
  std::vector<std::vector<int>> X(b.n(), std::vector<int>(a.n()));
  for (int bb = 0; bb < b.n(); ++bb)
    for (int aa = 0; aa < a.n(); ++aa) X[bb][aa] = sys.add_variable(x_var_name(a, b, bb, aa));
  // Y entries exist only where some f can map the a-tuple onto the b-tuple
  std::vector<std::map<int, int>> Y(b.m());  // per b-constraint: a-constraint -> var
  for (int cb = 0; cb < b.m(); ++cb)
    for (int ca = 0; ca < a.m(); ++ca) {
      const Constraint& kb = b.constraint(cb);
      const Constraint& ka = a.constraint(ca);
      if (ka.symbol != kb.symbol) continue;
      if (!pattern_ok(ka.tuple, kb.tuple)) continue;
      Y[cb][ca] = sys.add_variable(y_var_name(a, b, cb, ca));
    }

  for (int aa = 0; aa < a.n(); ++aa) {
    std::map<int, Rat> row;
    for (int bb = 0; bb < b.n(); ++bb) row[X[bb][aa]] = 1;
    sys.add_row(std::move(row), Rel::Eq, Rat(1));
  }
  for (int ca = 0; ca < a.m(); ++ca) {
    std::map<int, Rat> row;
    for (int cb = 0; cb < b.m(); ++cb) {
      auto it = Y[cb].find(ca);
      if (it != Y[cb].end()) row[it->second] = 1;
    }
    sys.add_row(std::move(row), Rel::Eq, Rat(1));
  }

  auto labs_b = occurring_labels(b, b);
  for (const Label& l : occurring_labels(a, a)) {
    RatMatrix MA = incidence_matrix(a, l);
    // collect the b-side labels dominating l
    std::vector<RatMatrix> mbs;
    for (const Label& l2 : labs_b) {
      if (l2.symbol != l.symbol) continue;
      if (equality) {
        if (!(l2 == l)) continue;
      } else if (!std::includes(l2.positions.begin(), l2.positions.end(), l.positions.begin(),
                                l.positions.end())) {
        continue;
      }
      mbs.push_back(incidence_matrix(b, l2));
    }
    for (int bb = 0; bb < b.n(); ++bb)
      for (int ca = 0; ca < a.m(); ++ca) {
        std::map<int, Rat> row;
        for (int aa = 0; aa < a.n(); ++aa)
          if (MA.get(aa, ca) != 0) row[X[bb][aa]] += MA.get(aa, ca);
        for (const RatMatrix& MB : mbs)
          for (int cb = 0; cb < b.m(); ++cb) {
            if (MB.get(bb, cb) == 0) continue;
            auto it = Y[cb].find(ca);
            if (it != Y[cb].end()) row[it->second] -= MB.get(bb, cb);
          }
        if (!row.empty()) sys.add_row(std::move(row), equality ? Rel::Eq : Rel::Le, Rat(0));
      }
  }
  if (equality) {
    // labels occurring only on the b side force zero rows as well
    auto labs_a = occurring_labels(a, a);
    std::set<Label> la(labs_a.begin(), labs_a.end());
    for (const Label& l : labs_b) {
      if (la.count(l)) continue;
      RatMatrix MB = incidence_matrix(b, l);
      for (int bb = 0; bb < b.n(); ++bb)
        for (int ca = 0; ca < a.m(); ++ca) {
          std::map<int, Rat> row;
          for (int cb = 0; cb < b.m(); ++cb) {
            if (MB.get(bb, cb) == 0) continue;
            auto it = Y[cb].find(ca);
            if (it != Y[cb].end()) row[it->second] += MB.get(bb, cb);
          }
          if (!row.empty()) sys.add_row(std::move(row), Rel::Eq, Rat(0));
        }
    }
  }
  return sys;
}

std::optional<int> sa_rank(const Structure& a, const Structure& b, int k_max, long max_vars) {
  if (k_max < 1) throw ValidationError("sa_rank: k_max must be positive");
  int arity_max = 1;
  for (const Symbol& s : a.signature().symbols) arity_max = std::max(arity_max, s.arity);
  for (int k = 1; k <= k_max; ++k) {
    LinearSystem sys = build_sa_system(a, b, k, max_vars);
    if (!lp_feasibility(sys).feasible) return k;
    // the system no longer changes beyond this point
    if (k >= a.n() && k >= arity_max) break;
  }
  return std::nullopt;
}

}  // namespace wlsa
