#pragma once

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "wlsa/structure.hpp"

// small graph builders shared by the test binaries; graphs are encoded with a
// single binary symbol E holding both orientations of every edge

inline wlsa::Signature graph_signature() { return {{{"E", 2}}}; }

inline wlsa::Structure make_graph(const std::string& name, int n,
                                  const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::string> els;
  for (int i = 0; i < n; ++i) els.push_back("v" + std::to_string(i));
  std::vector<wlsa::Constraint> cons;
  for (auto [u, v] : edges) {
    cons.push_back({0, {u, v}});
    if (u != v) cons.push_back({0, {v, u}});
  }
  return wlsa::Structure(graph_signature(), name, els, cons);
}

inline wlsa::Structure cycle_graph(int n, const std::string& name = "") {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n});
  return make_graph(name.empty() ? "C" + std::to_string(n) : name, n, edges);
}

inline wlsa::Structure path_graph(int n, const std::string& name = "") {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  return make_graph(name.empty() ? "P" + std::to_string(n) : name, n, edges);
}

inline wlsa::Structure complete_graph(int n, const std::string& name = "") {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.push_back({i, j});
  return make_graph(name.empty() ? "K" + std::to_string(n) : name, n, edges);
}

// relabels the universe by a random permutation, keeping the same abstract structure
inline wlsa::Structure permuted(const wlsa::Structure& s, std::mt19937& rng) {
  std::vector<int> perm(s.n());
  for (int i = 0; i < s.n(); ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::string> els(s.n());
  for (int i = 0; i < s.n(); ++i) els[perm[i]] = s.element_name(i) + "p";
  std::vector<wlsa::Constraint> cons;
  for (const auto& c : s.constraints()) {
    wlsa::Constraint m = c;
    for (int& e : m.tuple) e = perm[e];
    cons.push_back(m);
  }
  return wlsa::Structure(s.signature(), s.name() + "p", els, cons);
}

// uniform random graph on n vertices with the given edge probability
inline wlsa::Structure random_graph(int n, double p, std::mt19937& rng,
                                    const std::string& name = "G") {
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng)) edges.push_back({i, j});
  return make_graph(name, n, edges);
}

// random structure over a mixed signature (one unary, one binary, one ternary symbol)
inline wlsa::Structure random_mixed(int n, int m, std::mt19937& rng,
                                    const std::string& name = "S") {
  wlsa::Signature sig{{{"U", 1}, {"E", 2}, {"T", 3}}};
  std::vector<std::string> els;
  for (int i = 0; i < n; ++i) els.push_back("e" + std::to_string(i));
  std::uniform_int_distribution<int> sym(0, 2), el(0, n - 1);
  std::set<wlsa::Constraint> cons;
  for (int t = 0; t < m; ++t) {
    wlsa::Constraint c;
    c.symbol = sym(rng);
    for (int i = 0; i < sig.arity(c.symbol); ++i) c.tuple.push_back(el(rng));
    cons.insert(c);
  }
  return wlsa::Structure(sig, name, els, {cons.begin(), cons.end()});
}
