#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "common.hpp"
#include "wlsa/homcount.hpp"
#include "wlsa/polymorph.hpp"
#include "wlsa/relax.hpp"

using namespace wlsa;

namespace {

// the two-element total order with a reflexive binary relation
Structure leq_structure() {
  Signature sig{{{"R", 2}}};
  return Structure(sig, "Leq", {"e0", "e1"}, {{0, {0, 0}}, {0, {0, 1}}, {0, {1, 1}}});
}

Structure loop_vertex() { return make_graph("L", 1, {{0, 0}}); }

}  // namespace

TEST_CASE("power structure sizes") {
  Structure k2 = complete_graph(2);
  Structure p2 = power_structure(k2, 2);
  CHECK(p2.n() == 4);
  CHECK(p2.m() == 4);
  Structure p3 = power_structure(k2, 3);
  CHECK(p3.n() == 8);
  CHECK(p3.m() == 8);
  Structure leq = leq_structure();
  Structure q2 = power_structure(leq, 2);
  CHECK(q2.n() == 4);
  CHECK(q2.m() == 9);
}

TEST_CASE("first power is the structure itself") {
  std::mt19937 rng(31);
  CHECK(isomorphic(power_structure(complete_graph(3), 1), complete_graph(3)));
  CHECK(isomorphic(power_structure(leq_structure(), 1), leq_structure()));
  Structure s = random_mixed(4, 6, rng);
  CHECK(isomorphic(power_structure(s, 1), s));
}

TEST_CASE("power membership is componentwise") {
  Structure k2 = complete_graph(2);
  Structure p2 = power_structure(k2, 2);
  // (00,11) and (01,10) are edges, (00,01) is not
  auto has = [&](const std::string& u, const std::string& v) {
    Constraint c{0, {p2.element_index(u), p2.element_index(v)}};
    for (const Constraint& d : p2.constraints())
      if (d == c) return true;
    return false;
  };
  CHECK(has("v0,v0", "v1,v1"));
  CHECK(has("v0,v1", "v1,v0"));
  CHECK_FALSE(has("v0,v0", "v0,v1"));
}

TEST_CASE("K2 has no binary symmetric polymorphism") {
  CHECK_FALSE(symmetric_polymorphism(complete_graph(2), 2).has_value());
}

TEST_CASE("one-element structures have constant polymorphisms") {
  Structure l = loop_vertex();
  for (int n = 1; n <= 4; ++n) {
    auto op = symmetric_polymorphism(l, n);
    REQUIRE(op.has_value());
    CHECK(op->apply(std::vector<int>(n, 0)) == 0);
    CHECK(verify_polymorphism(l, *op));
  }
}

TEST_CASE("the two-element order has symmetric polymorphisms of every arity") {
  Structure leq = leq_structure();
  for (int n = 2; n <= 4; ++n) {
    auto op = symmetric_polymorphism(leq, n);
    REQUIRE(op.has_value());
    CHECK(op->arity == n);
    CHECK(verify_polymorphism(leq, *op));
    // argument order must not matter
    std::vector<int> args(n, 0);
    args[0] = 1;
    std::vector<int> rev(n, 1);
    rev[0] = 0;
    for (int i = 1; i < n; ++i) rev[i] = args[i - 1] == 1 ? 1 : rev[i];
    CHECK(op->apply(args) == op->apply({args.rbegin(), args.rend()}));
  }
  // min and max are both symmetric polymorphisms of the order; check max by hand
  SymmetricOperation mx{2, {{{0, 0}, 0}, {{0, 1}, 1}, {{1, 1}, 1}}};
  CHECK(verify_polymorphism(leq, mx));
  SymmetricOperation mn{2, {{{0, 0}, 0}, {{0, 1}, 0}, {{1, 1}, 1}}};
  CHECK(verify_polymorphism(leq, mn));
}

TEST_CASE("verification rejects broken tables") {
  Structure leq = leq_structure();
  // swapping the mixed value of max to a fresh non-monotone table breaks it:
  // (0,1) and (1,0) are columns of R-pairs whose image must stay in R
  SymmetricOperation bad{2, {{{0, 0}, 1}, {{0, 1}, 0}, {{1, 1}, 0}}};
  CHECK_FALSE(verify_polymorphism(leq, bad));
  SymmetricOperation partial{2, {{{0, 0}, 0}}};
  CHECK_FALSE(verify_polymorphism(leq, partial));
  SymmetricOperation range{2, {{{0, 0}, 0}, {{0, 1}, 2}, {{1, 1}, 1}}};
  CHECK_FALSE(verify_polymorphism(leq, range));
  CHECK_THROWS_AS(partial.apply({0, 1}), ValidationError);
}

TEST_CASE("resource caps") {
  Structure k3 = complete_graph(3);
  CHECK_THROWS_AS(power_structure(k3, 12, 20000), ResourceLimitError);
  CHECK_THROWS_AS(symmetric_polymorphism(k3, 4, 1000), ResourceLimitError);
  CHECK_THROWS_AS(power_structure(k3, 0), ValidationError);
  CHECK_THROWS_AS(symmetric_polymorphism(k3, 0), ValidationError);
}

TEST_CASE("missing polymorphisms go with relaxation gaps") {
  // K2 lacks a binary symmetric polymorphism, and indeed the level-1 system
  // admits a loop-free source with no homomorphism
  Structure k2 = complete_graph(2);
  Structure c5 = cycle_graph(5);
  CHECK_FALSE(symmetric_polymorphism(k2, 2).has_value());
  CHECK_FALSE(exists_hom(c5, k2).has_value());
  CHECK(lp_feasibility(build_sa_system(c5, k2, 1)).feasible);

  // the order has them at every arity tried, and the level-1 system agrees
  // with homomorphism existence on a small sample
  Structure leq = leq_structure();
  std::mt19937 rng(53);
  for (int t = 0; t < 5; ++t) {
    Structure a = random_mixed(3, 4, rng, "A");
    Signature sig{{{"R", 2}}};
    std::vector<Constraint> cons;
    for (const Constraint& c : a.constraints())
      if (a.signature().name(c.symbol) == "E") cons.push_back({0, c.tuple});
    Structure d(sig, "D", a.elements(), cons);
    bool hom = exists_hom(d, leq).has_value();
    bool lp = lp_feasibility(build_sa_system(d, leq, 1)).feasible;
    CHECK(hom == lp);
  }
}
