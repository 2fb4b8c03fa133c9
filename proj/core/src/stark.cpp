#include "wlsa/stark.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <string>

#include "wlsa/equitable.hpp"
#include "wlsa/homcount.hpp"

namespace wlsa {

namespace {

std::string digits(const std::vector<int>& v) {
  std::string s;
  for (int x : v) s += static_cast<char>('0' + x);
  return s;
}

std::vector<int> subset_positions(int mask, int j) {
  std::vector<int> out;
  for (int i = 1; i <= j; ++i)
    if (mask & (1 << (i - 1))) out.push_back(i);
  return out;
}

// all vectors in [base]^len, lexicographic, entries 1-based
std::vector<std::vector<int>> index_vectors(int base, int len) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(len, 1);
  while (true) {
    out.push_back(cur);
    int i = len - 1;
    while (i >= 0 && cur[i] == base) cur[i--] = 1;
    if (i < 0) break;
    ++cur[i];
  }
  return out;
}

struct SymTupS {
  int j;
  std::vector<int> s;
};
struct SymTupI {
  int j;
  std::vector<int> i;
};
struct SymConS {
  int base;  // base symbol index
  std::vector<int> s;
};
struct SymConI {
  int base;
  std::vector<int> i;
};

struct ParsedStarSymbol {
  enum Kind { TupS, TupI, ConS, ConI } kind;
  std::string base_name;  // ConS/ConI only
  int j = 0;              // TupS/TupI only
  std::vector<int> vec;   // S positions or projection indices, 1-based
};

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

ParsedStarSymbol parse_star_symbol(const std::string& name) {
  ParsedStarSymbol out;
  std::vector<std::string> parts;
  size_t at = 0;
  while (true) {
    size_t nxt = name.find('@', at);
    if (nxt == std::string::npos) {
      parts.push_back(name.substr(at));
      break;
    }
    parts.push_back(name.substr(at, nxt - at));
    at = nxt + 1;
  }
  auto bad = [&] { throw ValidationError("not a star-signature symbol: " + name); };
  auto tail = [&](const std::string& t) {
    if (t.empty() || (t[0] != 'S' && t[0] != 'I')) bad();
    std::vector<int> v;
    for (size_t i = 1; i < t.size(); ++i) {
      if (t[i] < '1' || t[i] > '9') bad();
      v.push_back(t[i] - '0');
    }
    return std::pair<char, std::vector<int>>(t[0], v);
  };
  if (parts.size() == 3 && parts[0] == "tup" && all_digits(parts[1])) {
    out.j = std::stoi(parts[1]);
    auto [kind, v] = tail(parts[2]);
    out.kind = kind == 'S' ? ParsedStarSymbol::TupS : ParsedStarSymbol::TupI;
    out.vec = std::move(v);
  } else if (parts.size() == 2) {
    out.base_name = parts[0];
    auto [kind, v] = tail(parts[1]);
    out.kind = kind == 'S' ? ParsedStarSymbol::ConS : ParsedStarSymbol::ConI;
    out.vec = std::move(v);
  } else {
    bad();
  }
  return out;
}

}  // namespace

int TreeDecomposition::width() const {
  int w = -1;
  for (const auto& b : bags) w = std::max(w, static_cast<int>(b.size()) - 1);
  return w;
}

Signature star_signature(const Signature& base, int k) {
  if (k < 1 || k > 9) throw ValidationError("star level k must be between 1 and 9");
  for (const Symbol& s : base.symbols) {
    if (s.name.find('@') != std::string::npos)
      throw ValidationError("base symbol names must not contain '@': " + s.name);
    if (s.arity < 1 || s.arity > 9)
      throw ValidationError("base arities must be between 1 and 9 for the star encoding");
  }
  Signature out;
  for (int j = 1; j <= k; ++j)
    for (int mask = 0; mask < (1 << j); ++mask)
      out.symbols.push_back(
          {"tup@" + std::to_string(j) + "@S" + digits(subset_positions(mask, j)), 1});
  for (int j = 1; j <= k; ++j)
    for (int j2 = 1; j2 <= k; ++j2)
      for (const auto& iv : index_vectors(j, j2))
        out.symbols.push_back({"tup@" + std::to_string(j) + "@I" + digits(iv), 2});
  for (const Symbol& s : base.symbols) {
    for (int mask = 0; mask < (1 << s.arity); ++mask)
      out.symbols.push_back({s.name + "@S" + digits(subset_positions(mask, s.arity)), 1});
    for (int j = 1; j <= k; ++j)
      for (const auto& iv : index_vectors(s.arity, j))
        out.symbols.push_back({s.name + "@I" + digits(iv), 2});
  }
  return out;
}

Structure star_structure(const Structure& a, int k, long max_universe) {
  Signature sig = star_signature(a.signature(), k);
  const long n = a.n();
  if (n == 0) throw ValidationError("star structure needs a non-empty universe");

  // tuple-block offsets; block j holds n^j tuples in lexicographic order
  std::vector<long> offset(k + 2, 0);
  long total = 0;
  for (int j = 1; j <= k; ++j) {
    offset[j] = total;
    long block = 1;
    for (int i = 0; i < j; ++i) {
      block *= n;
      if (block > max_universe) throw ResourceLimitError("star universe exceeds the cap");
    }
    total += block;
    if (total > max_universe) throw ResourceLimitError("star universe exceeds the cap");
  }
  long con_offset = total;
  total += a.m();
  if (total > max_universe) throw ResourceLimitError("star universe exceeds the cap");

  auto tuple_id = [&](const std::vector<int>& t) {
    long id = 0;
    for (int e : t) id = id * n + e;
    return static_cast<int>(offset[t.size()] + id);
  };

  std::vector<std::string> elems;
  elems.reserve(total);
  std::vector<std::vector<int>> tuples;  // all tuples of length <= k, id order
  for (int j = 1; j <= k; ++j) {
    std::vector<int> t(j, 0);
    while (true) {
      std::string name = "tup:";
      for (int i = 0; i < j; ++i) name += (i ? "," : "") + a.element_name(t[i]);
      elems.push_back(name);
      tuples.push_back(t);
      int i = j - 1;
      while (i >= 0 && t[i] == n - 1) t[i--] = 0;
      if (i < 0) break;
      ++t[i];
    }
  }
  for (int c = 0; c < a.m(); ++c) {
    const Constraint& con = a.constraint(c);
    std::string name = "con:" + a.signature().name(con.symbol);
    for (int e : con.tuple) name += "," + a.element_name(e);
    elems.push_back(name);
  }

  auto diag_ok = [](const std::vector<int>& t, const std::vector<int>& s) {
    for (size_t i = 1; i < s.size(); ++i)
      if (t[s[i] - 1] != t[s[0] - 1]) return false;
    return true;
  };
  auto project = [](const std::vector<int>& t, const std::vector<int>& iv) {
    std::vector<int> out;
    out.reserve(iv.size());
    for (int i : iv) out.push_back(t[i - 1]);
    return out;
  };

  std::vector<Constraint> cons;
  int sym = 0;
  for (int j = 1; j <= k; ++j)
    for (int mask = 0; mask < (1 << j); ++mask, ++sym) {
      std::vector<int> s = subset_positions(mask, j);
      long block = 1;
      for (int i = 0; i < j; ++i) block *= n;
      for (long t = 0; t < block; ++t) {
        int id = static_cast<int>(offset[j] + t);
        if (diag_ok(tuples[id], s)) cons.push_back({sym, {id}});
      }
    }
  for (int j = 1; j <= k; ++j)
    for (int j2 = 1; j2 <= k; ++j2)
      for (const auto& iv : index_vectors(j, j2)) {
        long block = 1;
        for (int i = 0; i < j; ++i) block *= n;
        for (long t = 0; t < block; ++t) {
          int id = static_cast<int>(offset[j] + t);
          cons.push_back({sym, {id, tuple_id(project(tuples[id], iv))}});
        }
        ++sym;
      }
  for (const Symbol& s : a.signature().symbols) {
    int base = a.signature().index_of(s.name);
    for (int mask = 0; mask < (1 << s.arity); ++mask, ++sym) {
      std::vector<int> sp = subset_positions(mask, s.arity);
      for (int c = 0; c < a.m(); ++c)
        if (a.constraint(c).symbol == base && diag_ok(a.constraint(c).tuple, sp))
          cons.push_back({sym, {static_cast<int>(con_offset + c)}});
    }
    for (int j = 1; j <= k; ++j)
      for (const auto& iv : index_vectors(s.arity, j)) {
        for (int c = 0; c < a.m(); ++c)
          if (a.constraint(c).symbol == base)
            cons.push_back({sym, {static_cast<int>(con_offset + c),
                                  tuple_id(project(a.constraint(c).tuple, iv))}});
        ++sym;
      }
  }

  return Structure(sig, a.name() + "*" + std::to_string(k), std::move(elems), std::move(cons));
}

bool wlk_equivalent(const Structure& a, const Structure& b, int k, long max_universe) {
  if (a.signature() != b.signature())
    throw ValidationError("wlk equivalence needs matching signatures");
  Structure sa = star_structure(a, k, max_universe);
  Structure sb = star_structure(b, k, max_universe);
  return common_equitable_partition(sa, sb).has_value();
}

bool verify_tree_decomposition(const Structure& q, const TreeDecomposition& td) {
  const int nodes = static_cast<int>(td.bags.size());
  if (nodes == 0) return false;
  if (static_cast<int>(td.edges.size()) != nodes - 1) return false;
  std::vector<std::vector<int>> adj(nodes);
  for (auto [u, v] : td.edges) {
    if (u < 0 || v < 0 || u >= nodes || v >= nodes || u == v) return false;
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  // connectivity of the tree
  std::vector<char> seen(nodes, 0);
  std::queue<int> bfs;
  bfs.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!bfs.empty()) {
    int u = bfs.front();
    bfs.pop();
    for (int v : adj[u])
      if (!seen[v]) {
        seen[v] = 1;
        ++reached;
        bfs.push(v);
      }
  }
  if (reached != nodes) return false;
  for (const auto& bag : td.bags) {
    for (size_t i = 0; i < bag.size(); ++i) {
      if (bag[i] < 0 || bag[i] >= q.n()) return false;
      if (i > 0 && bag[i] <= bag[i - 1]) return false;  // sorted, no repeats
    }
  }
  auto in_bag = [&](int node, int e) {
    return std::binary_search(td.bags[node].begin(), td.bags[node].end(), e);
  };
  // every element in some bag and its occurrence set connected
  for (int e = 0; e < q.n(); ++e) {
    int first = -1, count = 0;
    for (int v = 0; v < nodes; ++v)
      if (in_bag(v, e)) {
        if (first < 0) first = v;
        ++count;
      }
    if (first < 0) return false;
    std::vector<char> vis(nodes, 0);
    std::queue<int> bq;
    bq.push(first);
    vis[first] = 1;
    int got = 1;
    while (!bq.empty()) {
      int u = bq.front();
      bq.pop();
      for (int v : adj[u])
        if (!vis[v] && in_bag(v, e)) {
          vis[v] = 1;
          ++got;
          bq.push(v);
        }
    }
    if (got != count) return false;
  }
  // every constraint scope inside some bag
  for (const Constraint& c : q.constraints()) {
    std::set<int> scope(c.tuple.begin(), c.tuple.end());
    bool covered = false;
    for (const auto& bag : td.bags) {
      bool all = true;
      for (int e : scope)
        if (!std::binary_search(bag.begin(), bag.end(), e)) all = false;
      if (all) {
        covered = true;
        break;
      }
    }
    if (!covered) return false;
  }
  return true;
}

namespace {

// back-degree of v after eliminating W: vertices outside W u {v} reachable
// from v through W
int back_degree(int n, const std::vector<std::vector<char>>& adj, unsigned W, int v) {
  std::vector<char> vis(n, 0);
  std::queue<int> bfs;
  bfs.push(v);
  vis[v] = 1;
  int deg = 0;
  while (!bfs.empty()) {
    int u = bfs.front();
    bfs.pop();
    for (int w = 0; w < n; ++w)
      if (adj[u][w] && !vis[w]) {
        vis[w] = 1;
        if (W & (1u << w))
          bfs.push(w);  // interior vertex, keep walking
        else if (w != v)
          ++deg;
      }
  }
  return deg;
}

}  // namespace

std::optional<TreeDecomposition> exact_tree_decomposition(const Structure& q, int width_limit) {
  const int n = q.n();
  if (n > 10) throw ResourceLimitError("exact treewidth limited to 10 elements");
  if (n == 0) throw ValidationError("empty universe");

  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (const Constraint& c : q.constraints())
    for (int x : c.tuple)
      for (int y : c.tuple)
        if (x != y) adj[x][y] = 1;

  // minimum elimination width over subsets: f(S) = best width eliminating S first
  const unsigned full = (n == 32) ? ~0u : ((1u << n) - 1);
  std::vector<int> f(full + 1, 0);
  std::vector<int> choice(full + 1, -1);
  for (unsigned S = 1; S <= full; ++S) {
    int best = n + 1, best_v = -1;
    for (int v = 0; v < n; ++v) {
      if (!(S & (1u << v))) continue;
      unsigned rest = S & ~(1u << v);
      int w = std::max(f[rest], back_degree(n, adj, rest, v));
      if (w < best) {
        best = w;
        best_v = v;
      }
    }
    f[S] = best;
    choice[S] = best_v;
  }
  if (f[full] > width_limit) return std::nullopt;

  // elimination order: choice[S] is eliminated last within S
  std::vector<int> order(n);
  unsigned S = full;
  for (int pos = n - 1; pos >= 0; --pos) {
    order[pos] = choice[S];
    S &= ~(1u << choice[S]);
  }

  // fill-in pass: bag of v = {v} + its not-yet-eliminated neighbourhood
  std::vector<std::vector<char>> fill = adj;
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[order[i]] = i;
  TreeDecomposition td;
  td.bags.resize(n);
  std::vector<int> attach(n, -1);  // per order slot, slot of the parent bag
  for (int i = 0; i < n; ++i) {
    int v = order[i];
    std::vector<int> nb;
    for (int w = 0; w < n; ++w)
      if (fill[v][w] && pos[w] > i) nb.push_back(w);
    for (int x : nb)
      for (int y : nb)
        if (x != y) fill[x][y] = 1;
    std::vector<int> bag = nb;
    bag.push_back(v);
    std::sort(bag.begin(), bag.end());
    td.bags[i] = std::move(bag);
    if (!nb.empty()) {
      int earliest = nb[0];
      for (int w : nb)
        if (pos[w] < pos[earliest]) earliest = w;
      attach[i] = pos[earliest];
    }
  }
  for (int i = 0; i < n; ++i) {
    if (attach[i] >= 0)
      td.edges.push_back({i, attach[i]});
    else if (i + 1 < n)
      td.edges.push_back({i, i + 1});  // isolated piece, keep the tree connected
  }

  // normalization: subdivide incomparable edges with the intersection bag
  std::vector<std::pair<int, int>> edges;
  for (auto [u, v] : td.edges) {
    const auto& bu = td.bags[u];
    const auto& bv = td.bags[v];
    bool uv = std::includes(bv.begin(), bv.end(), bu.begin(), bu.end());
    bool vu = std::includes(bu.begin(), bu.end(), bv.begin(), bv.end());
    if (uv || vu) {
      edges.push_back({u, v});
      continue;
    }
    std::vector<int> mid;
    std::set_intersection(bu.begin(), bu.end(), bv.begin(), bv.end(), std::back_inserter(mid));
    int w = static_cast<int>(td.bags.size());
    td.bags.push_back(std::move(mid));
    edges.push_back({u, w});
    edges.push_back({w, v});
  }
  td.edges = std::move(edges);

  // graft a leaf with the exact scope bag for every constraint
  std::map<std::vector<int>, int> exact;
  for (int v = 0; v < static_cast<int>(td.bags.size()); ++v) exact.emplace(td.bags[v], v);
  for (const Constraint& c : q.constraints()) {
    std::set<int> sc(c.tuple.begin(), c.tuple.end());
    std::vector<int> scope(sc.begin(), sc.end());
    if (exact.count(scope)) continue;
    int host = -1;
    for (int v = 0; v < static_cast<int>(td.bags.size()); ++v)
      if (std::includes(td.bags[v].begin(), td.bags[v].end(), scope.begin(), scope.end())) {
        host = v;
        break;
      }
    int w = static_cast<int>(td.bags.size());
    td.bags.push_back(scope);
    td.edges.push_back({host, w});
    exact.emplace(std::move(scope), w);
  }
  return td;
}

Structure ftree_from_tw_structure(const Structure& q, const TreeDecomposition& td, int k) {
  if (!verify_tree_decomposition(q, td)) throw ValidationError("invalid tree decomposition");
  if (connected_components(q).size() != 1)
    throw ValidationError("the decomposition-to-ftree translation needs a connected input");
  if (td.width() >= k) throw ValidationError("decomposition width must be below k");
  for (const auto& bag : td.bags)
    if (bag.empty()) throw ValidationError("normalized decompositions need non-empty bags");

  Signature sig = star_signature(q.signature(), k);
  std::map<std::string, int> sym_ix;
  for (int s = 0; s < static_cast<int>(sig.symbols.size()); ++s)
    sym_ix.emplace(sig.symbols[s].name, s);
  auto sym = [&](const std::string& name) {
    auto it = sym_ix.find(name);
    if (it == sym_ix.end()) throw ValidationError("symbol outside the star signature: " + name);
    return it->second;
  };

  const int nodes = static_cast<int>(td.bags.size());
  std::vector<std::string> elems;
  for (int v = 0; v < nodes; ++v) elems.push_back("n" + std::to_string(v));
  for (int c = 0; c < q.m(); ++c) elems.push_back("c" + std::to_string(c));

  std::vector<Constraint> cons;
  for (int v = 0; v < nodes; ++v)
    cons.push_back({sym("tup@" + std::to_string(td.bags[v].size()) + "@S"), {v}});

  for (int c = 0; c < q.m(); ++c) {
    const Constraint& con = q.constraint(c);
    const std::string& rn = q.signature().name(con.symbol);
    for (size_t i = 0; i < con.tuple.size(); ++i)
      for (size_t i2 = i + 1; i2 < con.tuple.size(); ++i2)
        if (con.tuple[i] == con.tuple[i2])
          cons.push_back({sym(rn + "@S" + std::to_string(i + 1) + std::to_string(i2 + 1)),
                          {nodes + c}});
  }

  for (auto [u, v] : td.edges) {
    int big = u, small = v;
    if (!std::includes(td.bags[big].begin(), td.bags[big].end(), td.bags[small].begin(),
                       td.bags[small].end()))
      std::swap(big, small);
    if (!std::includes(td.bags[big].begin(), td.bags[big].end(), td.bags[small].begin(),
                       td.bags[small].end()))
      throw ValidationError("adjacent bags must be subset-comparable");
    std::vector<int> iv;
    for (int e : td.bags[small]) {
      auto it = std::lower_bound(td.bags[big].begin(), td.bags[big].end(), e);
      iv.push_back(static_cast<int>(it - td.bags[big].begin()) + 1);
    }
    cons.push_back(
        {sym("tup@" + std::to_string(td.bags[big].size()) + "@I" + digits(iv)), {big, small}});
  }

  for (int c = 0; c < q.m(); ++c) {
    const Constraint& con = q.constraint(c);
    std::set<int> sc(con.tuple.begin(), con.tuple.end());
    std::vector<int> scope(sc.begin(), sc.end());
    int host = -1;
    for (int v = 0; v < nodes; ++v)
      if (td.bags[v] == scope) {
        host = v;
        break;
      }
    if (host < 0) throw ValidationError("every constraint needs a scope-exact bag");
    std::vector<int> iv;
    for (int e : td.bags[host]) {
      int p = -1;
      for (size_t i = 0; i < con.tuple.size(); ++i)
        if (con.tuple[i] == e) {
          p = static_cast<int>(i) + 1;
          break;
        }
      iv.push_back(p);
    }
    cons.push_back(
        {sym(q.signature().name(con.symbol) + "@I" + digits(iv)), {nodes + c, host}});
  }

  Structure t(sig, q.name() + "#T", std::move(elems), std::move(cons));
  if (!is_ftree(t)) throw ValidationError("translation did not produce an ftree");
  return t;
}

Structure tw_structure_from_ftree(const Structure& t, int k) {
  if (!is_ftree(t)) throw ValidationError("input is not an ftree");

  // recover the base signature from the star symbol names
  std::vector<ParsedStarSymbol> parsed;
  for (const Symbol& s : t.signature().symbols) parsed.push_back(parse_star_symbol(s.name));
  std::vector<std::string> base_names;
  std::map<std::string, int> base_arity;
  for (const ParsedStarSymbol& p : parsed) {
    if (p.kind != ParsedStarSymbol::ConS && p.kind != ParsedStarSymbol::ConI) continue;
    if (!base_arity.count(p.base_name)) {
      base_names.push_back(p.base_name);
      base_arity[p.base_name] = 0;
    }
    for (int x : p.vec) base_arity[p.base_name] = std::max(base_arity[p.base_name], x);
  }
  Signature base;
  for (const std::string& nm : base_names) base.symbols.push_back({nm, base_arity[nm]});

  // sorts: tuple of a given length, or a constraint of a given base symbol
  constexpr int kUnset = -1;
  std::vector<int> tuple_len(t.n(), kUnset);
  std::vector<int> con_sym(t.n(), kUnset);
  auto set_tuple = [&](int e, int j) {
    if (con_sym[e] != kUnset || (tuple_len[e] != kUnset && tuple_len[e] != j))
      throw ValidationError("conflicting sorts for element " + t.element_name(e));
    tuple_len[e] = j;
  };
  auto set_con = [&](int e, int r) {
    if (tuple_len[e] != kUnset || (con_sym[e] != kUnset && con_sym[e] != r))
      throw ValidationError("conflicting sorts for element " + t.element_name(e));
    con_sym[e] = r;
  };
  for (const Constraint& c : t.constraints()) {
    const ParsedStarSymbol& p = parsed[c.symbol];
    switch (p.kind) {
      case ParsedStarSymbol::TupS:
        set_tuple(c.tuple[0], p.j);
        break;
      case ParsedStarSymbol::TupI:
        set_tuple(c.tuple[0], p.j);
        set_tuple(c.tuple[1], static_cast<int>(p.vec.size()));
        break;
      case ParsedStarSymbol::ConS:
        set_con(c.tuple[0], base.index_of(p.base_name));
        break;
      case ParsedStarSymbol::ConI:
        set_con(c.tuple[0], base.index_of(p.base_name));
        set_tuple(c.tuple[1], static_cast<int>(p.vec.size()));
        break;
    }
  }

  // one block of placeholder elements per node; equalities merge them
  std::vector<int> block(t.n() + 1, 0);
  for (int e = 0; e < t.n(); ++e) {
    int len;
    if (tuple_len[e] != kUnset) {
      if (tuple_len[e] > k) throw ValidationError("tuple length above k");
      len = tuple_len[e];
    } else if (con_sym[e] != kUnset) {
      len = base.arity(con_sym[e]);
    } else {
      throw ValidationError("unconstrained element " + t.element_name(e) +
                            " has no counterpart in the base structure");
    }
    block[e + 1] = block[e] + len;
  }
  const int total = block[t.n()];

  std::vector<int> uf(total);
  std::iota(uf.begin(), uf.end(), 0);
  std::function<int(int)> find = [&](int x) { return uf[x] == x ? x : uf[x] = find(uf[x]); };
  auto unite = [&](int x, int y) { uf[find(x)] = find(y); };
  auto slot = [&](int e, int pos1) {  // pos1 is 1-based
    if (pos1 < 1 || block[e] + pos1 - 1 >= block[e + 1])
      throw ValidationError("projection index outside the source arity");
    return block[e] + pos1 - 1;
  };

  for (const Constraint& c : t.constraints()) {
    const ParsedStarSymbol& p = parsed[c.symbol];
    switch (p.kind) {
      case ParsedStarSymbol::TupS:
      case ParsedStarSymbol::ConS:
        for (size_t i = 1; i < p.vec.size(); ++i)
          unite(slot(c.tuple[0], p.vec[i - 1]), slot(c.tuple[0], p.vec[i]));
        break;
      case ParsedStarSymbol::TupI:
      case ParsedStarSymbol::ConI:
        for (size_t l = 0; l < p.vec.size(); ++l)
          unite(slot(c.tuple[1], static_cast<int>(l) + 1), slot(c.tuple[0], p.vec[l]));
        break;
    }
  }

  std::vector<int> rep(total, -1);
  std::vector<std::string> elems;
  for (int i = 0; i < total; ++i) {
    int r = find(i);
    if (rep[r] < 0) {
      rep[r] = static_cast<int>(elems.size());
      elems.push_back("p" + std::to_string(elems.size()));
    }
    rep[i] = rep[r];
  }
  if (elems.empty()) elems.push_back("p0");  // cannot happen for sorted inputs

  std::set<Constraint> cons;
  for (int e = 0; e < t.n(); ++e) {
    if (con_sym[e] == kUnset) continue;
    Constraint c;
    c.symbol = con_sym[e];
    for (int i = 0; i < base.arity(con_sym[e]); ++i) c.tuple.push_back(rep[find(block[e] + i)]);
    cons.insert(std::move(c));
  }

  return Structure(base, t.name() + "#Q", std::move(elems), {cons.begin(), cons.end()});
}

}  // namespace wlsa
