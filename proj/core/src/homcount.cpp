#include "wlsa/homcount.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <tuple>

#include "wlsa/refine.hpp"

namespace wlsa {

bool is_ftree(const Structure& t) {
  FactorGraph fg = factor_graph(t);
  int nodes = fg.elements + fg.constraints;
  if (static_cast<int>(fg.edges.size()) != nodes - 1) return false;
  return connected_components(t).size() == 1;
}

namespace {

// counting core: rooted at an element, children alternate element/constraint
struct TreeCounter {
  const Structure& t;
  const Structure& a;
  std::vector<std::vector<int>> inc;  // element -> incident constraint ids

  TreeCounter(const Structure& t_, const Structure& a_) : t(t_), a(a_), inc(t_.n()) {
    for (int c = 0; c < t.m(); ++c) {
      std::set<int> seen;
      for (int e : t.constraint(c).tuple)
        if (seen.insert(e).second) inc[e].push_back(c);
    }
  }

  mutable std::map<std::tuple<int, int, int>, Int> memo;

  Int elem_cnt(int e, int d, int parent_con) const {
    auto key = std::make_tuple(e, d, parent_con);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    Int prod = 1;
    for (int c : inc[e]) {
      if (c == parent_con) continue;
      prod *= con_cnt(c, e, d);
      if (prod == 0) break;
    }
    memo.emplace(key, prod);
    return prod;
  }

  Int con_cnt(int c, int e, int d) const {
    const Constraint& tc = t.constraint(c);
    Int sum = 0;
    for (const Constraint& dc : a.constraints()) {
      if (dc.symbol != tc.symbol) continue;
      std::map<int, int> img;
      bool ok = true;
      for (size_t s = 0; s < tc.tuple.size(); ++s) {
        auto [it, ins] = img.emplace(tc.tuple[s], dc.tuple[s]);
        if (!ins && it->second != dc.tuple[s]) {
          ok = false;
          break;
        }
      }
      if (!ok || img.at(e) != d) continue;
      Int prod = 1;
      for (const auto& [se, de] : img) {
        if (se == e) continue;
        prod *= elem_cnt(se, de, c);
        if (prod == 0) break;
      }
      sum += prod;
    }
    return sum;
  }
};

void require_ftree_pair(const Structure& t, const Structure& a) {
  if (t.signature() != a.signature()) throw ValidationError("homcount: signature mismatch");
  if (!is_ftree(t)) throw ValidationError("homcount: source is not an ftree");
}

double pow_guard(int base, int expo) {
  double p = 1;
  for (int i = 0; i < expo; ++i) {
    p *= base;
    if (p > 1e8) return p;
  }
  return p;
}

}  // namespace

Int count_hom_rooted(const Structure& t, int root, const Structure& a, int target) {
  require_ftree_pair(t, a);
  if (root < 0 || root >= t.n() || target < 0 || target >= a.n())
    throw ValidationError("homcount: root or target out of range");
  return TreeCounter(t, a).elem_cnt(root, target, -1);
}

Int count_hom_ftree(const Structure& t, const Structure& a) {
  require_ftree_pair(t, a);
  if (t.n() == 0) return 1;
  TreeCounter tc(t, a);
  Int total = 0;
  for (int d = 0; d < a.n(); ++d) total += tc.elem_cnt(0, d, -1);
  return total;
}

Int count_hom_bruteforce(const Structure& q, const Structure& a) {
  if (q.signature() != a.signature()) throw ValidationError("homcount: signature mismatch");
  if (a.n() == 0) return q.n() == 0 ? 1 : 0;
  if (pow_guard(a.n(), q.n()) > 1e8)
    throw ResourceLimitError("homcount: brute-force size guard exceeded");
  std::vector<int> h(q.n(), 0);
  Int count = 0;
  while (true) {
    bool ok = true;
    for (const Constraint& c : q.constraints()) {
      std::vector<int> img(c.tuple.size());
      for (size_t s = 0; s < c.tuple.size(); ++s) img[s] = h[c.tuple[s]];
      bool found = false;
      for (const Constraint& d : a.constraints())
        if (d.symbol == c.symbol && d.tuple == img) {
          found = true;
          break;
        }
      if (!found) {
        ok = false;
        break;
      }
    }
    if (ok) ++count;
    int i = 0;
    while (i < q.n() && ++h[i] == a.n()) h[i++] = 0;
    if (i == q.n()) break;
  }
  return count;
}

std::optional<std::vector<int>> exists_hom(const Structure& a, const Structure& b) {
  if (a.signature() != b.signature()) throw ValidationError("homcount: signature mismatch");
  if (a.n() == 0) return std::vector<int>{};
  if (b.n() == 0) return std::nullopt;
  if (pow_guard(b.n(), a.n()) > 1e8)
    throw ResourceLimitError("homcount: search size guard exceeded");

  // constraints become checkable once their last-assigned element is placed
  std::vector<std::vector<int>> ready(a.n());
  for (int c = 0; c < a.m(); ++c) {
    int last = *std::max_element(a.constraint(c).tuple.begin(), a.constraint(c).tuple.end());
    ready[last].push_back(c);
  }
  std::set<Constraint> bcons(b.constraints().begin(), b.constraints().end());

  std::vector<int> h(a.n(), -1);
  std::function<bool(int)> place = [&](int e) -> bool {
    if (e == a.n()) return true;
    for (int d = 0; d < b.n(); ++d) {
      h[e] = d;
      bool ok = true;
      for (int c : ready[e]) {
        const Constraint& qc = a.constraint(c);
        Constraint img{qc.symbol, {}};
        img.tuple.reserve(qc.tuple.size());
        for (int se : qc.tuple) img.tuple.push_back(h[se]);
        if (!bcons.count(img)) {
          ok = false;
          break;
        }
      }
      if (ok && place(e + 1)) return true;
    }
    h[e] = -1;
    return false;
  };
  if (place(0)) return h;
  return std::nullopt;
}

bool isomorphic(const Structure& a, const Structure& b) {
  if (a.signature() != b.signature()) return false;
  if (a.n() != b.n() || a.m() != b.m()) return false;

  auto cols = joint_refine({a, b});
  std::vector<int> ca = cols[0].element_colour, cb = cols[1].element_colour;
  {
    auto ma = ca, mb = cb;
    std::sort(ma.begin(), ma.end());
    std::sort(mb.begin(), mb.end());
    if (ma != mb) return false;
    auto qa = cols[0].constraint_colour, qb = cols[1].constraint_colour;
    std::sort(qa.begin(), qa.end());
    std::sort(qb.begin(), qb.end());
    if (qa != qb) return false;
  }

  std::set<Constraint> bcons(b.constraints().begin(), b.constraints().end());
  std::vector<int> map(a.n(), -1);
  std::vector<char> used(b.n(), 0);
  std::function<bool(int)> assign = [&](int e) -> bool {
    if (e == a.n()) {
      for (const Constraint& c : a.constraints()) {
        Constraint img{c.symbol, {}};
        for (int se : c.tuple) img.tuple.push_back(map[se]);
        if (!bcons.count(img)) return false;
      }
      return true;
    }
    for (int d = 0; d < b.n(); ++d) {
      if (used[d] || cb[d] != ca[e]) continue;
      used[d] = 1;
      map[e] = d;
      if (assign(e + 1)) return true;
      used[d] = 0;
      map[e] = -1;
    }
    return false;
  };
  return assign(0);
}

namespace {

// set partitions of {0..r-1} as restricted-growth strings
std::vector<std::vector<int>> set_partitions(int r) {
  std::vector<std::vector<int>> out;
  std::vector<int> rgs(r, 0);
  std::function<void(int, int)> rec = [&](int i, int maxb) {
    if (i == r) {
      out.push_back(rgs);
      return;
    }
    for (int blk = 0; blk <= maxb + 1; ++blk) {
      rgs[i] = blk;
      rec(i + 1, std::max(maxb, blk));
    }
  };
  if (r == 0)
    out.push_back({});
  else
    rec(0, -1);
  return out;
}

}  // namespace

std::vector<Structure> enumerate_ftrees(const Signature& sig, int max_constraints) {
  if (max_constraints > 5) throw ResourceLimitError("enumerate_ftrees: constraint budget > 5");
  std::vector<Structure> out;
  Structure lone(sig, "T", {"v0"}, {});
  out.push_back(lone);
  std::vector<Structure> level = {lone};

  for (int depth = 1; depth <= max_constraints; ++depth) {
    std::vector<Structure> next;
    for (const Structure& base : level) {
      for (int sym = 0; sym < static_cast<int>(sig.symbols.size()); ++sym) {
        int r = sig.arity(sym);
        for (const std::vector<int>& part : set_partitions(r)) {
          int blocks = part.empty() ? 0 : *std::max_element(part.begin(), part.end()) + 1;
          if (blocks == 0) continue;
          for (int attach = 0; attach < blocks; ++attach) {
            for (int e = 0; e < base.n(); ++e) {
              std::vector<std::string> elems = base.elements();
              std::vector<int> block_elem(blocks, -1);
              block_elem[attach] = e;
              for (int blk = 0; blk < blocks; ++blk)
                if (blk != attach) {
                  block_elem[blk] = static_cast<int>(elems.size());
                  elems.push_back("v" + std::to_string(elems.size()));
                }
              Constraint nc{sym, {}};
              nc.tuple.reserve(r);
              for (int s = 0; s < r; ++s) nc.tuple.push_back(block_elem[part[s]]);
              auto cons = base.constraints();
              if (std::find(cons.begin(), cons.end(), nc) != cons.end()) continue;
              cons.push_back(nc);
              Structure cand(sig, "T", std::move(elems), std::move(cons));
              bool dup = false;
              for (const Structure& s : next)
                if (isomorphic(cand, s)) {
                  dup = true;
                  break;
                }
              if (!dup) next.push_back(std::move(cand));
            }
          }
        }
      }
    }
    for (const Structure& s : next) out.push_back(s);
    level = std::move(next);
    if (level.empty()) break;
  }
  return out;
}

}  // namespace wlsa
