#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "common.hpp"
#include "wlsa/equitable.hpp"

using namespace wlsa;

static Structure two_triangles() {
  Structure c3 = cycle_graph(3);
  return disjoint_union(c3, c3);
}

TEST_CASE("stable colouring partitions") {
  Structure c6 = cycle_graph(6);
  auto part = partition_from_colouring(c6, joint_refine({c6})[0]);
  CHECK(part.p == 1);
  CHECK(part.q == 1);

  Structure p3 = path_graph(3);
  auto pp = partition_from_colouring(p3, joint_refine({p3})[0]);
  CHECK(pp.p == 2);

  Signature sig = graph_signature();
  Structure lone(sig, "L", {"a"}, {});
  auto lp = partition_from_colouring(lone, joint_refine({lone})[0]);
  CHECK(lp.p == 1);
  CHECK(lp.q == 0);
}

TEST_CASE("verify_equitable on C6 regular partition") {
  Structure c6 = cycle_graph(6);
  auto part = partition_from_colouring(c6, joint_refine({c6})[0]);
  auto res = verify_equitable(c6, part);
  REQUIRE(std::holds_alternative<ParameterTable>(res));
  const auto& t = std::get<ParameterTable>(res);
  Label head{0, {1}}, tail{0, {2}};
  CHECK(t.c.at({0, 0, head}) == 2);
  CHECK(t.c.at({0, 0, tail}) == 2);
}

TEST_CASE("all-in-one partition of P3 is not equitable") {
  Structure p3 = path_graph(3);
  Partition part;
  part.p = 1;
  part.q = 1;
  part.element_class.assign(3, 0);
  part.constraint_class.assign(p3.m(), 0);
  auto res = verify_equitable(p3, part);
  REQUIRE(std::holds_alternative<EquitableViolation>(res));
  const auto& v = std::get<EquitableViolation>(res);
  CHECK(v.element_side);
  CHECK(v.class_index == 0);
}

TEST_CASE("discrete partition is always equitable") {
  std::mt19937 rng(3);
  for (int t = 0; t < 5; ++t) {
    Structure s = random_mixed(4, 6, rng);
    Partition part;
    part.p = s.n();
    part.q = s.m();
    for (int i = 0; i < s.n(); ++i) part.element_class.push_back(i);
    for (int i = 0; i < s.m(); ++i) part.constraint_class.push_back(i);
    CHECK(std::holds_alternative<ParameterTable>(verify_equitable(s, part)));
  }
}

TEST_CASE("stable colouring is equitable, with consistent parameters") {
  std::mt19937 rng(5);
  for (int t = 0; t < 10; ++t) {
    Structure s = random_mixed(5, 8, rng);
    auto part = partition_from_colouring(s, joint_refine({s})[0]);
    auto res = verify_equitable(s, part);
    REQUIRE(std::holds_alternative<ParameterTable>(res));
    const auto& table = std::get<ParameterTable>(res);
    std::vector<int> psize(part.p, 0), qsize(part.q, 0);
    for (int c : part.element_class) ++psize[c];
    for (int c : part.constraint_class) ++qsize[c];
    // double counting: c * |P_i| = d * |Q_j|
    for (const auto& [key, cval] : table.c) {
      auto [i, j, lab] = key;
      auto it = table.d.find({j, i, lab});
      REQUIRE(it != table.d.end());
      CHECK(cval * psize[i] == it->second * qsize[j]);
    }
    for (const auto& [key, dval] : table.d) {
      auto [j, i, lab] = key;
      CHECK(table.c.count({i, j, lab}) == 1);
    }
  }
}

TEST_CASE("common equitable partition of C6 and 2C3") {
  auto w = common_equitable_partition(cycle_graph(6), two_triangles());
  REQUIRE(w.has_value());
  CHECK(w->element_sizes == std::vector<int>{6});
  CHECK(w->constraint_sizes == std::vector<int>{12});
}

TEST_CASE("size imbalance yields none") {
  CHECK_FALSE(common_equitable_partition(cycle_graph(3), cycle_graph(6)).has_value());
}

TEST_CASE("agreement with same_iterated_degree_sequence") {
  std::mt19937 rng(9);
  for (int t = 0; t < 20; ++t) {
    Structure a = random_mixed(4, 6, rng, "A");
    Structure b = random_mixed(4, 6, rng, "B");
    CHECK(same_iterated_degree_sequence(a, b) == common_equitable_partition(a, b).has_value());
  }
}

TEST_CASE("fractional iso witness satisfies the identities") {
  Structure c6 = cycle_graph(6), t2 = two_triangles();
  auto w = common_equitable_partition(c6, t2);
  REQUIRE(w.has_value());
  auto [X, Y] = fractional_iso_witness(c6, t2, *w);
  CHECK(X.get(0, 0) == Rat(1, 6));
  CHECK(verify_matrix_identities(IdentityKind::FracIso, c6, t2, X, Y));
  // graphs: the same X commutes with the adjacency matrices
  CHECK(verify_matrix_identities(IdentityKind::GraphAdjacency, c6, t2, X, RatMatrix()));
}

TEST_CASE("witness identities on random equivalent pairs") {
  std::mt19937 rng(21);
  int found = 0;
  for (int t = 0; t < 15; ++t) {
    Structure s = random_mixed(5, 7, rng);
    Structure p = permuted(s, rng);
    auto w = common_equitable_partition(s, p);
    REQUIRE(w.has_value());
    auto [X, Y] = fractional_iso_witness(s, p, *w);
    CHECK(verify_matrix_identities(IdentityKind::FracIso, s, p, X, Y));
    ++found;
  }
  CHECK(found == 15);
}

TEST_CASE("identical structure with discrete classes gives the identity matrix") {
  // oriented path: every vertex lands in its own stable class
  Structure dp(graph_signature(), "DP", {"a", "b", "c", "d"},
               {{0, {0, 1}}, {0, {1, 2}}, {0, {2, 3}}});
  auto w = common_equitable_partition(dp, dp);
  REQUIRE(w.has_value());
  REQUIRE(w->part_a.p == 4);
  auto [X, Y] = fractional_iso_witness(dp, dp, *w);
  for (int i = 0; i < 4; ++i) CHECK(X.get(i, i) == 1);
}

TEST_CASE("all-zero X fails the frac-hom check") {
  Structure k2 = complete_graph(2);
  RatMatrix X(2, 2), Y(2, 2);
  CHECK_FALSE(verify_matrix_identities(IdentityKind::FracHom, k2, k2, X, Y));
}
