// Acceptance gate: ten criteria, one pass/fail line each. Every comparison is
// exact (rational/integer equality, tolerance zero); the only tunables are the
// instance counts and caps pinned below.

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "common.hpp"
#include "wlsa/equitable.hpp"
#include "wlsa/homcount.hpp"
#include "wlsa/polymorph.hpp"
#include "wlsa/refine.hpp"
#include "wlsa/relax.hpp"
#include "wlsa/stark.hpp"
#include "wlsa/witness.hpp"

using namespace wlsa;

namespace {

constexpr int kSuitePairs = 200;       // criteria 1-3 sample size
constexpr int kStarLevelPairs = 20;       // criterion 5 sample size
constexpr int kTranslationRuns = 50;   // criterion 7 sample size
constexpr long kStarMaxVars = 2000000; // LP cap for star-level systems

std::mt19937 g_rng(20260823);

Signature bt_signature() { return {{{"R", 2}, {"T", 3}}}; }

// random structure over one binary + one ternary symbol
Structure random_bt(int n, int m, std::mt19937& rng, const std::string& name) {
  Signature sig = bt_signature();
  std::vector<std::string> els;
  for (int i = 0; i < n; ++i) els.push_back("e" + std::to_string(i));
  std::uniform_int_distribution<int> sym(0, 1), el(0, n - 1);
  std::set<Constraint> cons;
  for (int t = 0; t < m; ++t) {
    Constraint c;
    c.symbol = sym(rng);
    for (int i = 0; i < sig.arity(c.symbol); ++i) c.tuple.push_back(el(rng));
    cons.insert(c);
  }
  return Structure(sig, name, els, {cons.begin(), cons.end()});
}

Structure random_tree(int n, std::mt19937& rng, const std::string& name = "T") {
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i < n; ++i) edges.push_back({static_cast<int>(rng() % i), i});
  return make_graph(name, n, edges);
}

Structure random_connected(int n, std::mt19937& rng, const std::string& name = "G") {
  std::set<std::pair<int, int>> edges;
  for (int i = 1; i < n; ++i) edges.insert({static_cast<int>(rng() % i), i});
  std::bernoulli_distribution coin(0.3);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng)) edges.insert({i, j});
  return make_graph(name, n, {edges.begin(), edges.end()});
}

Structure c6_with_chord() {
  return make_graph("C6c", 6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}, {0, 3}});
}

// the pair suite shared by criteria 1 and 2
std::vector<std::pair<Structure, Structure>> refinement_suite() {
  std::vector<std::pair<Structure, Structure>> suite;
  std::uniform_int_distribution<int> nd(2, 5), md(1, 8);
  for (int t = 0; t < kSuitePairs / 2; ++t) {
    Structure a = random_bt(nd(g_rng), md(g_rng), g_rng, "A");
    Structure b = random_bt(nd(g_rng), md(g_rng), g_rng, "B");
    suite.push_back({a, b});
    Structure c = random_bt(nd(g_rng), md(g_rng), g_rng, "C");
    suite.push_back({c, permuted(c, g_rng)});
  }
  suite.push_back({cycle_graph(6), disjoint_union(cycle_graph(3), cycle_graph(3))});
  suite.push_back({cycle_graph(4), path_graph(4)});
  suite.push_back({cycle_graph(6), c6_with_chord()});
  suite.push_back({complete_graph(3), permuted(complete_graph(3), g_rng)});
  return suite;
}

std::vector<Rat> half_solution(const Structure& a, const Structure& k2) {
  LinearSystem sys = build_sa_system(a, k2, 1);
  std::vector<Rat> point(sys.num_vars(), Rat(0));
  for (int ae = 0; ae < a.n(); ++ae)
    for (int be = 0; be < 2; ++be)
      point[sys.var_index(sa_set_var_name(a, k2, {ae}, {be}))] = Rat(1, 2);
  for (int c = 0; c < a.m(); ++c)
    for (int bb = 0; bb < 2; ++bb)
      point[sys.var_index(sa_con_var_name(a, k2, c, {bb, 1 - bb}))] = Rat(1, 2);
  return point;
}

std::vector<Rat> integral_solution(const Structure& a, const Structure& b,
                                   const std::vector<int>& h) {
  LinearSystem sys = build_sa_system(a, b, 1);
  std::vector<Rat> point(sys.num_vars(), Rat(0));
  for (int ae = 0; ae < a.n(); ++ae)
    point[sys.var_index(sa_set_var_name(a, b, {ae}, {h[ae]}))] = Rat(1);
  for (int c = 0; c < a.m(); ++c) {
    std::set<int> scope(a.constraint(c).tuple.begin(), a.constraint(c).tuple.end());
    std::vector<int> img;
    for (int e : scope) img.push_back(h[e]);
    point[sys.var_index(sa_con_var_name(a, b, c, img))] = Rat(1);
  }
  return point;
}

bool chain_ok(const Structure& a, const Structure& b, const Decomposition& d) {
  auto chain = decomposition_chain(a, b, d);
  if (!verify_chain(chain)) return false;
  auto [X, Y] = chain_matrices(chain);
  return verify_matrix_identities(IdentityKind::FracHom, a, b, X, Y);
}

const std::vector<std::pair<Structure, Structure>>& suite() {
  static std::vector<std::pair<Structure, Structure>> s = refinement_suite();
  return s;
}

// ---- criteria ----

bool criterion1() {
  int pairs = 0;
  for (const auto& [a, b] : suite()) {
    bool degrees = same_iterated_degree_sequence(a, b);
    auto w = common_equitable_partition(a, b);
    bool lp;
    try {
      lp = lp_feasibility(build_frac_iso_system(a, b)).feasible;
    } catch (const InfeasibleBySize&) {
      lp = false;
    }
    if (lp != degrees || degrees != w.has_value()) return false;
    if (w.has_value()) {
      auto [X, Y] = fractional_iso_witness(a, b, *w);
      if (!verify_matrix_identities(IdentityKind::FracIso, a, b, X, Y)) return false;
    }
    ++pairs;
  }
  return pairs >= kSuitePairs;
}

bool criterion2() {
  std::vector<Structure> bt_trees = enumerate_ftrees(bt_signature(), 3);
  std::vector<Structure> g_trees = enumerate_ftrees(graph_signature(), 3);
  for (const auto& [a, b] : suite()) {
    if (!common_equitable_partition(a, b).has_value()) continue;
    const auto& trees = a.signature() == bt_signature() ? bt_trees : g_trees;
    for (const Structure& t : trees)
      if (count_hom_ftree(t, a) != count_hom_ftree(t, b)) return false;
  }
  auto distinguished = [&](const Structure& a, const Structure& b) {
    for (const Structure& t : g_trees)
      if (count_hom_ftree(t, a) != count_hom_ftree(t, b)) return true;
    return false;
  };
  return distinguished(cycle_graph(4), path_graph(4)) &&
         distinguished(cycle_graph(6), c6_with_chord());
}

bool criterion3() {
  std::uniform_int_distribution<int> nd(2, 4), md(1, 6);
  int pairs = 0;
  for (int t = 0; t < kSuitePairs; ++t) {
    Structure a = t % 2 ? random_bt(nd(g_rng), md(g_rng), g_rng, "A")
                        : random_graph(nd(g_rng), 0.5, g_rng, "A");
    Structure b = t % 2 ? random_bt(nd(g_rng), md(g_rng), g_rng, "B")
                        : random_graph(nd(g_rng), 0.5, g_rng, "B");
    bool sa1 = lp_feasibility(build_sa_system(a, b, 1)).feasible;
    bool fh = lp_feasibility(build_frac_hom_system(a, b, false)).feasible;
    if (sa1 != fh) return false;
    if (!a.has_loops() && !b.has_loops()) {
      bool eq = lp_feasibility(build_frac_hom_system(a, b, true)).feasible;
      if (sa1 != eq) return false;
    }
    ++pairs;
  }
  return pairs >= kSuitePairs;
}

bool criterion4() {
  Structure k3 = complete_graph(3), k2 = complete_graph(2);
  Structure c3 = cycle_graph(3), c6 = cycle_graph(6);
  if (sa_rank(k3, k2, 4) != std::optional<int>(3)) return false;
  if (!lp_feasibility(build_sa_system(c3, c6, 1)).feasible) return false;
  if (exists_hom(c3, c6).has_value()) return false;
  if (!lp_feasibility(build_sa_system(c6, c3, 1)).feasible) return false;
  auto h = exists_hom(c6, c3);
  if (!h.has_value()) return false;
  for (const Constraint& c : c6.constraints()) {
    Constraint img{c.symbol, {(*h)[c.tuple[0]], (*h)[c.tuple[1]]}};
    bool found = false;
    for (const Constraint& d : c3.constraints()) found = found || d == img;
    if (!found) return false;
  }
  return true;
}

bool criterion5() {
  int pairs = 0;
  for (int t = 0; t < kStarLevelPairs; ++t) {
    int n = t < kStarLevelPairs - 3 ? 3 : 4;
    Structure a = random_graph(n, 0.6, g_rng, "A");
    Structure b = random_graph(n, 0.6, g_rng, "B");
    bool direct = lp_feasibility(build_sa_system(a, b, 2, kStarMaxVars)).feasible;
    bool starred = lp_feasibility(build_sa_system(star_structure(a, 2), star_structure(b, 2),
                                                  1, kStarMaxVars))
                       .feasible;
    if (direct != starred) return false;
    ++pairs;
  }
  return pairs >= kStarLevelPairs;
}

bool criterion6() {
  Structure k2 = complete_graph(2), k3 = complete_graph(3);
  int done = 0;

  Decomposition d = decompose_sa1(k3, k2, half_solution(k3, k2));
  if (d.m != 2 || d.x1.n() != 18 || d.x2.n() != 18) return false;
  if (!chain_ok(k3, k2, d)) return false;
  ++done;

  for (const Structure& a : {cycle_graph(5), cycle_graph(7), path_graph(4),
                             random_graph(4, 0.6, g_rng, "A"), random_graph(3, 0.8, g_rng, "B"),
                             random_graph(4, 0.4, g_rng, "C")}) {
    Decomposition h = decompose_sa1(a, k2, half_solution(a, k2));
    if (h.m > 3 || !chain_ok(a, k2, h)) return false;
    ++done;
  }

  for (int t = 0; t < 20 && done < 11; ++t) {
    Structure a = random_graph(4, 0.4, g_rng, "D");
    auto h = exists_hom(a, k3);
    if (!h.has_value()) continue;
    Decomposition i = decompose_sa1(a, k3, integral_solution(a, k3, *h));
    if (i.m != 1 || !chain_ok(a, k3, i)) return false;
    ++done;
  }
  return done >= 10;
}

bool criterion7() {
  int done = 0;
  for (int t = 0; done < kTranslationRuns && t < 4 * kTranslationRuns; ++t) {
    int k = t % 2 ? 3 : 2;
    Structure q = k == 2 ? random_tree(2 + t % 4, g_rng, "Q")
                         : random_connected(3 + t % 3, g_rng, "Q");
    auto td = exact_tree_decomposition(q, k - 1);
    if (!td.has_value()) continue;
    Structure tr = ftree_from_tw_structure(q, *td, k);
    Structure q2 = tw_structure_from_ftree(tr, k);
    Structure d = random_graph(2 + t % 3, 0.6, g_rng, "D");
    Int direct = count_hom_bruteforce(q, d);
    if (direct != count_hom_ftree(tr, star_structure(d, k))) return false;
    if (direct != count_hom_bruteforce(q2, d)) return false;
    ++done;
  }
  return done >= kTranslationRuns;
}

bool criterion8() {
  std::vector<Structure> trees = enumerate_ftrees(graph_signature(), 4);
  Structure loopy = make_graph("L", 3, {{0, 0}, {0, 1}, {1, 2}});
  std::vector<Structure> targets = {complete_graph(2), complete_graph(3), cycle_graph(4),
                                    loopy, random_graph(4, 0.5, g_rng, "D")};
  for (const Structure& t : trees)
    for (const Structure& d : targets)
      if (count_hom_ftree(t, d) != count_hom_bruteforce(t, d)) return false;
  return !trees.empty();
}

bool criterion9() {
  if (symmetric_polymorphism(complete_graph(2), 2).has_value()) return false;
  Signature rsig{{{"R", 2}}};
  Structure leq(rsig, "Leq", {"e0", "e1"}, {{0, {0, 0}}, {0, {0, 1}}, {0, {1, 1}}});
  for (int n = 2; n <= 4; ++n) {
    auto op = symmetric_polymorphism(leq, n);
    if (!op.has_value() || !verify_polymorphism(leq, *op)) return false;
  }

  std::uniform_int_distribution<int> nd(2, 4), md(1, 6);
  for (int t = 0; t < 30; ++t) {
    Structure a = t % 2 ? random_graph(nd(g_rng), 0.5, g_rng, "A")
                        : random_bt(nd(g_rng), md(g_rng), g_rng, "A");
    if (a.has_loops()) continue;
    Structure b = t % 2 ? random_graph(nd(g_rng), 0.5, g_rng, "B")
                        : random_bt(nd(g_rng), md(g_rng), g_rng, "B");
    bool blp = lp_feasibility(build_blp_system(a, b)).feasible;
    bool sa1 = lp_feasibility(build_sa_system(a, b, 1)).feasible;
    if (blp != sa1) return false;
  }

  Structure c6 = cycle_graph(6);
  Structure cc = disjoint_union(cycle_graph(3), cycle_graph(3));
  return wlk_equivalent(c6, cc, 1) && wlk_equivalent(c6, cc, 2) && !wlk_equivalent(c6, cc, 3);
}

bool criterion10() {
  std::uniform_int_distribution<int> nd(2, 4), md(1, 6);
  int tested = 0;
  for (int t = 0; t < 30; ++t) {
    Structure a = random_graph(nd(g_rng), 0.6, g_rng, "A");
    Structure b = random_graph(nd(g_rng), 0.6, g_rng, "B");
    if (!lp_feasibility(build_sa_system(a, b, 2)).feasible) continue;
    if (!lp_feasibility(build_base_polytope(a, b)).feasible) return false;
    ++tested;
  }
  std::uniform_int_distribution<int> sd(2, 3);
  for (int t = 0; t < 10; ++t) {
    Structure a = random_bt(sd(g_rng), 4, g_rng, "A");
    Structure b = random_bt(sd(g_rng), 4, g_rng, "B");
    if (!lp_feasibility(build_sa_system(a, b, 3)).feasible) continue;
    if (!lp_feasibility(build_base_polytope(a, b)).feasible) return false;
    ++tested;
  }
  return tested > 0;
}

struct Criterion {
  int number;
  const char* summary;
  bool (*run)();
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "refinement, partition and LP equivalence on 200+ pairs", criterion1},
      {2, "ftree count agreement and distinguishing ftrees", criterion2},
      {3, "level-1 system matches fractional homomorphisms on 200+ pairs", criterion3},
      {4, "separation instances (rank 3, C3/C6 both ways)", criterion4},
      {5, "level 2 equals level 1 on the stars (20+ pairs)", criterion5},
      {6, "decomposition chains for 10+ feasible instances", criterion6},
      {7, "treewidth/ftree translations preserve counts (50+ runs)", criterion7},
      {8, "counting DP equals brute force on all small ftrees", criterion8},
      {9, "polymorphisms, basic LP agreement and level-k equivalence", criterion9},
      {10, "level-r feasibility implies the base polytope", criterion10},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = c.run();
    } catch (const std::exception& e) {
      std::fprintf(stderr, "criterion %d raised: %s\n", c.number, e.what());
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    std::printf("criterion %2d: %s - %s (%lld ms)\n", c.number, ok ? "PASS" : "FAIL",
                c.summary, static_cast<long long>(ms));
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
