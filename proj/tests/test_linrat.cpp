#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "wlsa/linear_system.hpp"

using namespace wlsa;

TEST_CASE("rational string forms") {
  CHECK(rat_to_string(Rat(1, 2)) == "1/2");
  CHECK(rat_to_string(Rat(3)) == "3/1");
  CHECK(rat_to_string(Rat(2, 4)) == "1/2");
  CHECK(rat_from_string("7/3") == Rat(7, 3));
  CHECK(rat_from_string("-5") == Rat(-5));
  CHECK_THROWS(rat_from_string("1/0/2"));
}

TEST_CASE("x >= 1 and x <= 0 is infeasible with a certificate") {
  LinearSystem sys;
  int x = sys.add_variable("x", std::nullopt, std::nullopt);
  sys.add_row({{x, Rat(1)}}, Rel::Ge, Rat(1));
  sys.add_row({{x, Rat(1)}}, Rel::Le, Rat(0));
  auto res = lp_feasibility(sys);
  CHECK_FALSE(res.feasible);
  CHECK(verify_certificate(sys, res.certificate));
}

TEST_CASE("simplex on a simplex") {
  LinearSystem sys;
  int x = sys.add_variable("x");
  int y = sys.add_variable("y");
  sys.add_row({{x, Rat(1)}, {y, Rat(1)}}, Rel::Eq, Rat(1));
  auto res = lp_feasibility(sys);
  REQUIRE(res.feasible);
  CHECK(res.point[x] + res.point[y] == 1);
  CHECK(verify_point(sys, res.point));
}

TEST_CASE("bound conflict through an equality chain") {
  LinearSystem sys;
  int x = sys.add_variable("x");                // [0,1]
  int y = sys.add_variable("y", Rat(0), Rat(1));
  sys.add_row({{x, Rat(1)}, {y, Rat(2)}}, Rel::Eq, Rat(4));  // needs x + 2y = 4 > 3
  auto res = lp_feasibility(sys);
  CHECK_FALSE(res.feasible);
  CHECK(verify_certificate(sys, res.certificate));
}

TEST_CASE("substitution respects the eliminated variable's bounds") {
  LinearSystem sys;
  int x = sys.add_variable("x");
  int y = sys.add_variable("y", Rat(0), Rat(1, 4));
  sys.add_row({{x, Rat(1)}, {y, Rat(2)}}, Rel::Eq, Rat(2));
  // forces y = (2-x)/2 >= 1/2 > 1/4
  auto res = lp_feasibility(sys);
  CHECK_FALSE(res.feasible);
  CHECK(verify_certificate(sys, res.certificate));
}

TEST_CASE("feasible system mixing relations") {
  LinearSystem sys;
  int x = sys.add_variable("x");
  int y = sys.add_variable("y");
  int z = sys.add_variable("z");
  sys.add_row({{x, Rat(1)}, {y, Rat(1)}, {z, Rat(1)}}, Rel::Eq, Rat(3, 2));
  sys.add_row({{x, Rat(1)}, {y, Rat(-1)}}, Rel::Le, Rat(1, 4));
  sys.add_row({{y, Rat(1)}, {z, Rat(2)}}, Rel::Ge, Rat(1));
  auto res = lp_feasibility(sys);
  REQUIRE(res.feasible);
  CHECK(verify_point(sys, res.point));
}

TEST_CASE("answer independent of row order") {
  std::mt19937 rng(23);
  for (int t = 0; t < 30; ++t) {
    std::uniform_int_distribution<int> nv(2, 5), nr(1, 6), cf(-3, 3), rl(0, 2);
    int n = nv(rng);
    std::vector<LinRow> rows;
    int m = nr(rng);
    for (int i = 0; i < m; ++i) {
      LinRow r;
      for (int v = 0; v < n; ++v) {
        int c = cf(rng);
        if (c != 0) r.coef[v] = c;
      }
      r.rel = static_cast<Rel>(rl(rng));
      r.rhs = Rat(cf(rng), 2);
      rows.push_back(r);
    }
    auto build = [&](const std::vector<int>& order) {
      LinearSystem sys;
      for (int v = 0; v < n; ++v) sys.add_variable("v" + std::to_string(v));
      for (int i : order) sys.add_row(rows[i].coef, rows[i].rel, rows[i].rhs);
      return sys;
    };
    std::vector<int> order(m);
    for (int i = 0; i < m; ++i) order[i] = i;
    LinearSystem s1 = build(order);
    std::shuffle(order.begin(), order.end(), rng);
    LinearSystem s2 = build(order);
    auto r1 = lp_feasibility(s1);
    auto r2 = lp_feasibility(s2);
    CHECK(r1.feasible == r2.feasible);
    if (r1.feasible) {
      CHECK(verify_point(s1, r1.point));
      CHECK(verify_point(s2, r2.point));
    } else {
      CHECK(verify_certificate(s1, r1.certificate));
      CHECK(verify_certificate(s2, r2.certificate));
    }
  }
}

TEST_CASE("random systems always re-verify") {
  std::mt19937 rng(31);
  int feas = 0, infeas = 0;
  for (int t = 0; t < 80; ++t) {
    std::uniform_int_distribution<int> nv(1, 6), nr(1, 8), cf(-4, 4), rl(0, 2), den(1, 3);
    int n = nv(rng);
    LinearSystem sys;
    for (int v = 0; v < n; ++v) sys.add_variable("v" + std::to_string(v));
    int m = nr(rng);
    for (int i = 0; i < m; ++i) {
      std::map<int, Rat> coef;
      for (int v = 0; v < n; ++v) {
        int c = cf(rng);
        if (c != 0) coef[v] = Rat(c, den(rng));
      }
      sys.add_row(std::move(coef), static_cast<Rel>(rl(rng)), Rat(cf(rng), den(rng)));
    }
    auto res = lp_feasibility(sys);
    if (res.feasible) {
      ++feas;
      CHECK(verify_point(sys, res.point));
    } else {
      ++infeas;
      CHECK(verify_certificate(sys, res.certificate));
    }
  }
  CHECK(feas > 0);
  CHECK(infeas > 0);
}

TEST_CASE("free variables and unbounded directions") {
  LinearSystem sys;
  int x = sys.add_variable("x", std::nullopt, std::nullopt);
  int y = sys.add_variable("y");
  sys.add_row({{x, Rat(1)}, {y, Rat(1)}}, Rel::Ge, Rat(10));
  auto res = lp_feasibility(sys);
  REQUIRE(res.feasible);
  CHECK(verify_point(sys, res.point));
}

TEST_CASE("certificate verifier rejects wrong signs") {
  LinearSystem sys;
  int x = sys.add_variable("x");
  sys.add_row({{x, Rat(1)}}, Rel::Le, Rat(2));
  CHECK_FALSE(verify_certificate(sys, {Rat(1)}));
  CHECK_FALSE(verify_certificate(sys, {Rat(-1)}));  // valid signs, no contradiction
}

TEST_CASE("duplicate variable names rejected") {
  LinearSystem sys;
  sys.add_variable("x");
  CHECK_THROWS_AS(sys.add_variable("x"), ValidationError);
}
