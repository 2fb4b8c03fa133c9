#include "wlsa/witness.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "wlsa/relax.hpp"

namespace wlsa {

namespace {

constexpr long kMaxUniverse = 20000;
constexpr long kMaxConstraints = 200000;

using YTuple = std::vector<std::pair<int, int>>;  // (target element, copy index)

bool same_shape(const Structure& a, const Structure& b) {
  return a.signature() == b.signature() && a.elements() == b.elements() &&
         a.constraints() == b.constraints();
}

bool is_homomorphism(const Structure& from, const Structure& to, const std::vector<int>& h) {
  if (from.signature() != to.signature()) return false;
  if (static_cast<int>(h.size()) != from.n()) return false;
  for (int x : h)
    if (x < 0 || x >= to.n()) return false;
  std::set<Constraint> target(to.constraints().begin(), to.constraints().end());
  for (const Constraint& c : from.constraints()) {
    Constraint img{c.symbol, {}};
    for (int e : c.tuple) img.tuple.push_back(h[e]);
    if (!target.count(img)) return false;
  }
  return true;
}

std::vector<int> class_sizes(const std::vector<int>& cls, int count) {
  std::vector<int> sizes(count, 0);
  for (int c : cls) ++sizes[c];
  return sizes;
}

bool verify_wl1(const Structure& from, const Structure& to, const CommonEquitableWitness& w) {
  if (from.signature() != to.signature()) return false;
  if (static_cast<int>(w.part_a.element_class.size()) != from.n()) return false;
  if (static_cast<int>(w.part_b.element_class.size()) != to.n()) return false;
  if (w.part_a.p != w.part_b.p || w.part_a.q != w.part_b.q) return false;
  if (class_sizes(w.part_a.element_class, w.part_a.p) !=
      class_sizes(w.part_b.element_class, w.part_b.p))
    return false;
  if (class_sizes(w.part_a.constraint_class, w.part_a.q) !=
      class_sizes(w.part_b.constraint_class, w.part_b.q))
    return false;
  auto ra = verify_equitable(from, w.part_a);
  auto rb = verify_equitable(to, w.part_b);
  if (!std::holds_alternative<ParameterTable>(ra) || !std::holds_alternative<ParameterTable>(rb))
    return false;
  const ParameterTable& ta = std::get<ParameterTable>(ra);
  const ParameterTable& tb = std::get<ParameterTable>(rb);
  return ta.c == tb.c && ta.d == tb.d;
}

}  // namespace

ChainStep hom_step(Structure from, Structure to, std::vector<int> hom) {
  return {ChainStep::Kind::Hom, std::move(from), std::move(to), std::move(hom), {}};
}

ChainStep wl1_step(Structure from, Structure to, CommonEquitableWitness wl) {
  return {ChainStep::Kind::Wl1, std::move(from), std::move(to), {}, std::move(wl)};
}

bool verify_chain(const std::vector<ChainStep>& chain) {
  for (size_t i = 1; i < chain.size(); ++i)
    if (!same_shape(chain[i - 1].to, chain[i].from))
      throw ValidationError("chain steps do not share endpoints");
  for (const ChainStep& s : chain) {
    bool ok = s.kind == ChainStep::Kind::Hom ? is_homomorphism(s.from, s.to, s.hom)
                                             : verify_wl1(s.from, s.to, s.wl);
    if (!ok) return false;
  }
  return true;
}

std::pair<RatMatrix, RatMatrix> chain_matrices(const std::vector<ChainStep>& chain) {
  if (chain.empty()) throw ValidationError("chain_matrices needs at least one step");
  if (!verify_chain(chain)) throw ValidationError("chain does not verify");
  RatMatrix X(chain.front().from.n(), chain.front().from.n());
  RatMatrix Y(chain.front().from.m(), chain.front().from.m());
  for (int i = 0; i < X.rows(); ++i) X.set(i, i, Rat(1));
  for (int i = 0; i < Y.rows(); ++i) Y.set(i, i, Rat(1));
  for (const ChainStep& s : chain) {
    RatMatrix sx(s.to.n(), s.from.n()), sy(s.to.m(), s.from.m());
    if (s.kind == ChainStep::Kind::Hom) {
      for (int e = 0; e < s.from.n(); ++e) sx.set(s.hom[e], e, Rat(1));
      std::map<Constraint, int> target;
      for (int c = 0; c < s.to.m(); ++c) target.emplace(s.to.constraint(c), c);
      for (int c = 0; c < s.from.m(); ++c) {
        const Constraint& con = s.from.constraint(c);
        Constraint img{con.symbol, {}};
        for (int e : con.tuple) img.tuple.push_back(s.hom[e]);
        sy.set(target.at(img), c, Rat(1));
      }
    } else {
      std::tie(sx, sy) = fractional_iso_witness(s.from, s.to, s.wl);
    }
    X = sx * X;
    Y = sy * Y;
  }
  return {X, Y};
}

Decomposition decompose_sa1(const Structure& a, const Structure& b,
                            const std::vector<Rat>& raw_solution, long max_m) {
  LinearSystem sys = build_sa_system(a, b, 1);
  std::vector<Rat> solution = raw_solution;
  for (Rat& r : solution) r.canonicalize();
  if (static_cast<int>(solution.size()) != sys.num_vars())
    throw ValidationError("solution size does not match the level-1 system");
  if (!verify_point(sys, solution))
    throw ValidationError("solution does not satisfy the level-1 system");

  mpz_class lcm = 1;
  for (const Rat& v : solution) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den_mpz_t());
  if (lcm > max_m) throw ResourceLimitError("common denominator above the cap");
  const int m = static_cast<int>(lcm.get_si());

  // all copy-indexed m-tuples over the target universe
  std::vector<YTuple> ys;
  std::map<YTuple, int> y_index;
  {
    std::vector<int> bv(m, 0);
    while (true) {
      // group positions by value, hand out copy numbers in every order
      std::map<int, std::vector<int>> pos;
      for (int i = 0; i < m; ++i) pos[bv[i]].push_back(i);
      std::vector<std::pair<int, std::vector<int>>> groups(pos.begin(), pos.end());
      YTuple y(m);
      std::function<void(size_t)> rec = [&](size_t g) {
        if (g == groups.size()) {
          y_index.emplace(y, static_cast<int>(ys.size()));
          ys.push_back(y);
          return;
        }
        auto& [val, where] = groups[g];
        std::vector<int> copies(where.size());
        std::iota(copies.begin(), copies.end(), 1);
        do {
          for (size_t i = 0; i < where.size(); ++i) y[where[i]] = {val, copies[i]};
          rec(g + 1);
        } while (std::next_permutation(copies.begin(), copies.end()));
      };
      rec(0);
      if (static_cast<long>(ys.size()) * a.n() > kMaxUniverse)
        throw ResourceLimitError("decomposition universe exceeds the cap");
      int i = m - 1;
      while (i >= 0 && bv[i] == b.n() - 1) bv[i--] = 0;
      if (i < 0) break;
      ++bv[i];
    }
  }
  const long ny = static_cast<long>(ys.size());

  auto ordered_copies = [&](const std::vector<int>& bv) {  // y with first-come copy numbers
    YTuple y(m);
    std::map<int, int> seen;
    for (int i = 0; i < m; ++i) y[i] = {bv[i], ++seen[bv[i]]};
    return y_index.at(y);
  };
  auto canonical = [&](std::vector<int> bv) {  // lexicographically least with that multiset
    std::sort(bv.begin(), bv.end());
    return ordered_copies(bv);
  };
  auto x_of = [&](int ae, int yi) { return static_cast<int>(ae * ny + yi); };

  std::vector<std::string> x_names;
  for (int ae = 0; ae < a.n(); ++ae)
    for (long yi = 0; yi < ny; ++yi) {
      std::string nm = a.element_name(ae) + "/";
      for (int i = 0; i < m; ++i)
        nm += (i ? "," : "") + b.element_name(ys[yi][i].first) + "." +
              std::to_string(ys[yi][i].second);
      x_names.push_back(std::move(nm));
    }

  // constraint classes over the triple index set: one class per compatible
  // size-m multiset of target tuples attached to a source tuple pattern
  std::vector<Constraint> cons1, cons2;
  std::vector<int> class1, class2;
  std::map<Constraint, int> seen1, seen2;
  int classes = 0;
  auto push = [&](std::vector<Constraint>& cons, std::vector<int>& cls,
                  std::map<Constraint, int>& seen, Constraint c, int j) {
    auto [it, fresh] = seen.emplace(std::move(c), j);
    if (!fresh) {
      if (it->second != j)
        throw ValidationError(
            "canonical representatives collide across constraint classes; "
            "this target relation is outside the construction's reach");
      return;  // same class, same member (cannot happen)
    }
    cons.push_back(it->first);
    cls.push_back(j);
  };

  for (int sym = 0; sym < static_cast<int>(a.signature().symbols.size()); ++sym) {
    const int r = a.signature().arity(sym);
    std::vector<int> av(r, 0);
    while (true) {
      std::vector<std::vector<int>> ts;
      for (const Constraint& c : b.constraints()) {
        if (c.symbol != sym) continue;
        bool ok = true;
        for (int s = 0; s < r && ok; ++s)
          for (int s2 = s + 1; s2 < r && ok; ++s2)
            if (av[s] == av[s2] && c.tuple[s] != c.tuple[s2]) ok = false;
        if (ok) ts.push_back(c.tuple);
      }
      std::sort(ts.begin(), ts.end());
      if (!ts.empty()) {
        // non-decreasing index sequences pick each size-m multiset once, in
        // the fixed lexicographic order of its members
        std::vector<int> pick(m, 0);
        while (true) {
          std::vector<std::vector<int>> bs(r, std::vector<int>(m));
          for (int i = 0; i < m; ++i)
            for (int s = 0; s < r; ++s) bs[s][i] = ts[pick[i]][s];
          std::vector<int> rep1(r), rep2(r);
          for (int s = 0; s < r; ++s) {
            rep1[s] = canonical(bs[s]);
            rep2[s] = ordered_copies(bs[s]);
          }
          const int j = classes++;
          std::vector<int> tau(m);
          std::iota(tau.begin(), tau.end(), 0);
          do {
            Constraint c1{sym, {}}, c2{sym, {}};
            for (int s = 0; s < r; ++s) {
              YTuple y1(m), y2(m);
              for (int i = 0; i < m; ++i) {
                y1[i] = ys[rep1[s]][tau[i]];
                y2[i] = ys[rep2[s]][tau[i]];
              }
              c1.tuple.push_back(x_of(av[s], y_index.at(y1)));
              c2.tuple.push_back(x_of(av[s], y_index.at(y2)));
            }
            push(cons1, class1, seen1, std::move(c1), j);
            push(cons2, class2, seen2, std::move(c2), j);
          } while (std::next_permutation(tau.begin(), tau.end()));
          if (static_cast<long>(cons1.size()) > kMaxConstraints)
            throw ResourceLimitError("decomposition constraint count exceeds the cap");
          int i = m - 1;
          while (i >= 0 && pick[i] == static_cast<int>(ts.size()) - 1) --i;
          if (i < 0) break;
          ++pick[i];
          for (int i2 = i + 1; i2 < m; ++i2) pick[i2] = pick[i];
        }
      }
      int s = r - 1;
      while (s >= 0 && av[s] == a.n() - 1) av[s--] = 0;
      if (s < 0) break;
      ++av[s];
    }
  }

  Decomposition out{Structure(a.signature(), a.name() + "/X1", x_names, cons1),
                    Structure(a.signature(), a.name() + "/X2", x_names, cons2),
                    {},
                    {},
                    {},
                    m,
                    ny};

  // claim 1: a maps into x1 by the canonical representative of its marginals
  for (int ae = 0; ae < a.n(); ++ae) {
    std::vector<int> bv;
    for (int be = 0; be < b.n(); ++be) {
      int vi = sys.var_index(sa_set_var_name(a, b, {ae}, {be}));
      if (vi < 0) throw ValidationError("missing marginal variable");
      Rat cnt = solution[vi] * m;
      if (cnt.get_den() != 1) throw ValidationError("marginal not a multiple of 1/m");
      for (long i = 0; i < cnt.get_num().get_si(); ++i) bv.push_back(be);
    }
    if (static_cast<int>(bv.size()) != m) throw ValidationError("marginals do not sum to one");
    out.h1.push_back(x_of(ae, canonical(bv)));
  }
  if (!is_homomorphism(a, out.x1, out.h1))
    throw ValidationError("constructed map into the first structure is not a homomorphism");

  // claim 2: projection to the first component's target element
  for (int ae = 0; ae < a.n(); ++ae)
    for (long yi = 0; yi < ny; ++yi) out.h2.push_back(ys[yi][0].first);
  if (!is_homomorphism(out.x2, b, out.h2))
    throw ValidationError("projection out of the second structure is not a homomorphism");

  // claim 3: permutation orbits and the triple classes form the shared
  // equitable partition
  std::map<std::pair<int, YTuple>, int> orbit;
  Partition part;
  for (int ae = 0; ae < a.n(); ++ae)
    for (long yi = 0; yi < ny; ++yi) {
      YTuple key = ys[yi];
      std::sort(key.begin(), key.end());
      auto [it, fresh] = orbit.emplace(std::make_pair(ae, std::move(key)),
                                       static_cast<int>(orbit.size()));
      part.element_class.push_back(it->second);
    }
  part.p = static_cast<int>(orbit.size());
  part.q = classes;
  Partition part2 = part;
  auto align = [&](const Structure& xd, const std::map<Constraint, int>& seen) {
    std::vector<int> cls;
    for (const Constraint& c : xd.constraints()) cls.push_back(seen.at(c));
    return cls;
  };
  part.constraint_class = align(out.x1, seen1);
  part2.constraint_class = align(out.x2, seen2);

  auto r1 = verify_equitable(out.x1, part);
  auto r2 = verify_equitable(out.x2, part2);
  if (!std::holds_alternative<ParameterTable>(r1) ||
      !std::holds_alternative<ParameterTable>(r2))
    throw ValidationError("constructed partition is not equitable");
  const ParameterTable& t1 = std::get<ParameterTable>(r1);
  const ParameterTable& t2 = std::get<ParameterTable>(r2);
  if (t1.c != t2.c || t1.d != t2.d)
    throw ValidationError("constructed partitions disagree on their parameters");

  out.w.part_a = part;
  out.w.part_b = part2;
  out.w.element_sizes = class_sizes(part.element_class, part.p);
  out.w.constraint_sizes = class_sizes(part.constraint_class, part.q);
  if (out.w.constraint_sizes != class_sizes(part2.constraint_class, part2.q))
    throw ValidationError("constraint classes are unbalanced");
  out.w.parameters = t1;
  return out;
}

std::vector<ChainStep> decomposition_chain(const Structure& a, const Structure& b,
                                           const Decomposition& d) {
  return {hom_step(a, d.x1, d.h1), wl1_step(d.x1, d.x2, d.w), hom_step(d.x2, b, d.h2)};
}

}  // namespace wlsa
