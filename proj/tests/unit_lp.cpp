#include "doctest.h"
#include "fixtures.hpp"
#include "osreal/generate.hpp"
#include "osreal/lp.hpp"

#include <set>

using namespace osreal;

namespace {

LinearConstraint simple(EdgeId var, LinearConstraint::Rel rel, int rhs) {
  LinearConstraint c;
  c.coeffs[var] = 1;
  c.rel = rel;
  c.rhs = rhs;
  return c;
}

// All simple directed paths between two terminals, by DFS; the oracle for
// the exact Dijkstra.
void all_paths(const PlanarNest& nest, VertexId cur, VertexId goal, std::vector<EdgeId>& walk,
               std::set<VertexId>& seen, std::vector<std::vector<EdgeId>>& out) {
  if (cur == goal) {
    out.push_back(walk);
    return;
  }
  for (EdgeId e : nest.graph_edges()) {
    if (nest.edge(e).from != cur) continue;
    VertexId to = nest.edge(e).to;
    if (!seen.insert(to).second) continue;
    walk.push_back(e);
    all_paths(nest, to, goal, walk, seen, out);
    walk.pop_back();
    seen.erase(to);
  }
}

}  // namespace

TEST_SUITE_BEGIN("lp");

TEST_CASE("pinched variable is feasible at the pin") {
  std::vector<LinearConstraint> cs = {simple(0, LinearConstraint::Rel::LessEq, 5),
                                      simple(0, LinearConstraint::Rel::GreaterEq, 5)};
  auto r = solve_lp_feasibility(cs, {0});
  REQUIRE(r.feasible);
  CHECK(r.weights.at(0) == Rational(5));
  CHECK(verify_feasible_point(cs, r.weights));
}

TEST_CASE("contradictory bounds yield unit Farkas multipliers") {
  std::vector<LinearConstraint> cs = {simple(0, LinearConstraint::Rel::LessEq, 1),
                                      simple(0, LinearConstraint::Rel::GreaterEq, 2)};
  auto r = solve_lp_feasibility(cs, {0});
  REQUIRE(!r.feasible);
  REQUIRE(r.farkas.has_value());
  CHECK(verify_farkas(cs, *r.farkas));
  CHECK(r.farkas->multipliers == std::vector<Rational>{1, 1});
}

TEST_CASE("random systems self-certify") {
  Rng rng(99);
  int feas = 0, infeas = 0;
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<EdgeId> vars = {0, 1, 2};
    std::vector<LinearConstraint> cs;
    const int m = 2 + (int)rng.below(5);
    for (int i = 0; i < m; ++i) {
      LinearConstraint c;
      for (EdgeId v : vars)
        if (rng.below(2)) c.coeffs[v] = Rational(rng.range(-3, 3));
      c.rel = rng.below(2) ? LinearConstraint::Rel::LessEq : LinearConstraint::Rel::GreaterEq;
      c.rhs = Rational(rng.range(-4, 8));
      cs.push_back(c);
    }
    auto r = solve_lp_feasibility(cs, vars);
    if (r.feasible) {
      ++feas;
      CHECK(verify_feasible_point(cs, r.weights));
    } else {
      ++infeas;
      REQUIRE(r.farkas.has_value());
      CHECK(verify_farkas(cs, *r.farkas));
    }
  }
  CHECK(feas > 0);
  CHECK(infeas > 0);
}

TEST_CASE("shortest path on an empty nest is unreachable") {
  auto sigma = osreal::testing::overview_ordering();
  auto nest = PlanarNest::empty_nest(sigma.sequence(), sigma);
  auto sp = shortest_path(nest, {}, "a", "b");
  CHECK(sp.distance.is_infinite());
  CHECK(!sp.path.has_value());
}

TEST_CASE("shortest path along a single chord") {
  CircularOrdering sigma({"a", "b"});
  auto nest = PlanarNest::empty_nest({"a", "b"}, sigma);
  Trajectory t;
  for (const auto& f : nest.faces())
    if (f.id != nest.outer_face()) t.final_face = f.id;
  PathId p = nest.insert_path("a", "b", t);
  std::map<EdgeId, Rational> w = {{nest.path(p).edges[0], Rational(5)}};
  auto sp = shortest_path(nest, w, "a", "b");
  CHECK(sp.distance == ExtendedRational(5));
  REQUIRE(sp.path.has_value());
  CHECK(*sp.path == nest.path(p).edges);
  CHECK(shortest_path(nest, w, "b", "a").distance.is_infinite());
}

TEST_CASE("shortest path agrees with exhaustive enumeration") {
  auto fixture = osreal::testing::overview_three_paths(false);
  const auto& nest = fixture.nest;
  Rng rng(4);
  for (int trial = 0; trial < 6; ++trial) {
    std::map<EdgeId, Rational> w;
    for (EdgeId e : nest.graph_edges()) w[e] = rng.positive_rational(9, 3);
    for (const auto& s : nest.terminals())
      for (const auto& t : nest.terminals()) {
        if (s == t) continue;
        std::vector<std::vector<EdgeId>> enumerated;
        std::vector<EdgeId> walk;
        std::set<VertexId> seen = {nest.terminal_vertex(s)};
        all_paths(nest, nest.terminal_vertex(s), nest.terminal_vertex(t), walk, seen, enumerated);
        auto sp = shortest_path(nest, w, s, t);
        if (enumerated.empty()) {
          CHECK(sp.distance.is_infinite());
          continue;
        }
        Rational best;
        bool first = true;
        for (const auto& path : enumerated) {
          Rational len = 0;
          for (EdgeId e : path) len += w[e];
          if (first || len < best) best = len;
          first = false;
        }
        CHECK(sp.distance == ExtendedRational(best));
      }
  }
}

TEST_CASE("check_weights pins a single chord to its distance") {
  CircularOrdering sigma({"a", "b"});
  auto nest = PlanarNest::empty_nest({"a", "b"}, sigma);
  Trajectory t;
  for (const auto& f : nest.faces())
    if (f.id != nest.outer_face()) t.final_face = f.id;
  PathId p = nest.insert_path("a", "b", t);

  PartialQuasiMetric dp({"a", "b"});
  dp.set("a", "b", ExtendedRational(5));
  auto r = check_weights(nest, dp);
  REQUIRE(r.feasible);
  CHECK(r.weights.at(nest.path(p).edges[0]) == Rational(5));
  CHECK(verify_feasible_point(r.constraints, r.weights));
}

TEST_CASE("check_weights rejects reachable infinite pairs") {
  CircularOrdering sigma({"a", "b"});
  auto nest = PlanarNest::empty_nest({"a", "b"}, sigma);
  Trajectory t;
  for (const auto& f : nest.faces())
    if (f.id != nest.outer_face()) t.final_face = f.id;
  PathId p = nest.insert_path("a", "b", t);

  PartialQuasiMetric dp({"a", "b"});
  dp.set("a", "b", ExtendedRational::infinity());
  auto r = check_weights(nest, dp);
  REQUIRE(!r.feasible);
  REQUIRE(r.infinity.has_value());
  CHECK(r.infinity->src == "a");
  CHECK(r.infinity->dst == "b");
  CHECK(r.infinity->walk == nest.path(p).edges);
}

TEST_CASE("overview left insertion is infeasible, right is feasible") {
  auto d = osreal::testing::overview_metric();
  PartialQuasiMetric knowledge(d);

  auto left = osreal::testing::overview_three_paths(true);
  auto rl = check_weights(left.nest, knowledge);
  REQUIRE(!rl.feasible);
  REQUIRE(rl.farkas.has_value());
  CHECK(verify_farkas(rl.constraints, *rl.farkas));

  auto flows = farkas_to_flows(left.nest, rl);
  REQUIRE(flows.has_value());
  CHECK(flows->cost_f < flows->cost_fprime);
  // F rides only on designated paths; domination is re-checked inside.
  for (const auto& pf : flows->f.paths) {
    auto pid = left.nest.path_for(pf.src, pf.dst);
    REQUIRE(pid.has_value());
    CHECK(left.nest.path(*pid).edges == pf.edges);
  }

  auto right = osreal::testing::overview_three_paths(false);
  auto rr = check_weights(right.nest, knowledge);
  REQUIRE(rr.feasible);
  CHECK(verify_feasible_point(rr.constraints, rr.weights));
  // The three inserted pairs are realized exactly; every known pair is
  // lower-bounded.
  for (const auto& pr : {std::pair{"t1", "t2"}, {"t3", "t4"}, {"a", "b"}}) {
    auto sp = shortest_path(right.nest, rr.weights, pr.first, pr.second);
    CHECK(sp.distance == d.at(pr.first, pr.second));
  }
  for (const auto& s : d.terminals())
    for (const auto& t : d.terminals()) {
      if (s == t) continue;
      auto sp = shortest_path(right.nest, rr.weights, s, t);
      CHECK(sp.distance >= d.at(s, t));
    }
}

TEST_CASE("scaling the metric scales the solved weights") {
  auto d = osreal::testing::overview_metric();
  auto right = osreal::testing::overview_three_paths(false);
  auto base = check_weights(right.nest, PartialQuasiMetric(d));
  REQUIRE(base.feasible);

  QuasiMetric scaled(d.terminals());
  const Rational lambda(7, 3);
  for (const auto& s : d.terminals())
    for (const auto& t : d.terminals()) {
      if (s == t) continue;
      scaled.set(s, t, d.at(s, t).is_infinite()
                           ? ExtendedRational::infinity()
                           : ExtendedRational(d.at(s, t).finite() * lambda));
    }
  auto r2 = check_weights(right.nest, PartialQuasiMetric(scaled));
  REQUIRE(r2.feasible);
  for (const auto& [e, w] : base.weights) CHECK(r2.weights.at(e) == w * lambda);
}

TEST_CASE("farkas_to_flows demands an infeasible input") {
  CircularOrdering sigma({"a", "b"});
  auto nest = PlanarNest::empty_nest({"a", "b"}, sigma);
  FeasibilityResult fake;
  fake.feasible = true;
  CHECK_THROWS_AS(farkas_to_flows(nest, fake), std::invalid_argument);
}

TEST_CASE("trivial contradictory pin decomposes into a unit flow pair") {
  CircularOrdering sigma({"a", "b"});
  auto nest = PlanarNest::empty_nest({"a", "b"}, sigma);
  Trajectory t;
  for (const auto& f : nest.faces())
    if (f.id != nest.outer_face()) t.final_face = f.id;
  PathId p = nest.insert_path("a", "b", t);
  const auto edges = nest.path(p).edges;

  std::vector<LinearConstraint> cs;
  LinearConstraint upper;
  upper.kind = LinearConstraint::Kind::PathUpper;
  upper.rel = LinearConstraint::Rel::LessEq;
  upper.src = "a";
  upper.dst = "b";
  upper.path_edges = edges;
  upper.coeffs[edges[0]] = 1;
  upper.rhs = 1;
  LinearConstraint lower = upper;
  lower.kind = LinearConstraint::Kind::PathLower;
  lower.rel = LinearConstraint::Rel::GreaterEq;
  lower.rhs = 2;
  cs = {upper, lower};
  auto r = solve_lp_feasibility(cs, edges);
  REQUIRE(!r.feasible);
  auto flows = farkas_to_flows(nest, r);
  REQUIRE(flows.has_value());
  CHECK(flows->f.paths.size() == 1);
  CHECK(flows->fprime.paths.size() == 1);
  CHECK(flows->cost_f == Rational(1));
  CHECK(flows->cost_fprime == Rational(2));
}

TEST_SUITE_END();
