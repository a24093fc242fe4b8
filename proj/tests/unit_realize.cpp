#include "doctest.h"
#include "fixtures.hpp"
#include "osreal/realize.hpp"

using namespace osreal;

TEST_SUITE_BEGIN("realize");

TEST_CASE("two terminals realize as two disjoint chords") {
  QuasiMetric d({"a", "b"});
  d.set("a", "b", ExtendedRational(5));
  d.set("b", "a", ExtendedRational(7));
  CircularOrdering sigma({"a", "b"});
  auto instance = realize(d, sigma);
  CHECK(instance.nest.path_ids().size() == 2);
  CHECK(instance.nest.vertex_count() == 2);  // no crossings
  Rational len_ab = 0, len_ba = 0;
  for (EdgeId e : instance.nest.path(*instance.nest.path_for("a", "b")).edges)
    len_ab += instance.weights.at(e);
  for (EdgeId e : instance.nest.path(*instance.nest.path_for("b", "a")).edges)
    len_ba += instance.weights.at(e);
  CHECK(len_ab == Rational(5));
  CHECK(len_ba == Rational(7));
  CHECK(verify(instance, d).pass);
}

TEST_CASE("first feasible insertion for (a,b) goes right of the crossing") {
  auto d = osreal::testing::overview_metric();
  auto fixture = osreal::testing::overview_two_chords();
  auto& nest = fixture.nest;
  PartialQuasiMetric knowledge(d);

  TrajectoryStream stream(nest, "a", "b", 0);
  std::optional<Trajectory> committed;
  while (auto t = stream.next()) {
    nest.insert_path("a", "b", *t);
    auto r = check_weights(nest, knowledge);
    if (r.feasible) {
      committed = *t;
      break;
    }
    nest.undo_last_insert();
  }
  REQUIRE(committed.has_value());
  REQUIRE(committed->crossings() == 2);
  CHECK(committed->steps[0].edge == fixture.e_pt2);
  CHECK(committed->steps[1].edge == fixture.e_t3p);
}

TEST_CASE("overview metric realizes end to end") {
  auto d = osreal::testing::overview_metric();
  auto sigma = osreal::testing::overview_ordering();
  auto instance = realize(d, sigma);
  CHECK(verify(instance, d).pass);
  CHECK(instance.nest.path_ids().size() == 30);  // every finite ordered pair
}

TEST_CASE("realize rejects a non-Monge ordering") {
  auto d = osreal::testing::overview_metric();
  // Swapping two terminals breaks the Monge property for this metric.
  CircularOrdering bad({"a", "t1", "t4", "b", "t3", "t2"});
  CHECK_THROWS_AS(realize(d, bad), MongeViolated);
}

TEST_CASE("infinite pairs stay unreachable") {
  QuasiMetric d({"t0", "t1", "t2", "t3"});
  for (const auto& s : d.terminals())
    for (const auto& t : d.terminals())
      if (s != t) d.set(s, t, ExtendedRational(2));
  for (const char* x : {"t0", "t1"})
    for (const char* y : {"t2", "t3"}) d.set(x, y, ExtendedRational::infinity());
  REQUIRE(validate(d).empty());
  CircularOrdering sigma({"t0", "t1", "t2", "t3"});
  REQUIRE(monge_check(d, sigma).pass);
  auto instance = realize(d, sigma);
  CHECK(verify(instance, d).pass);
  CHECK(shortest_path(instance.nest, instance.weights, "t0", "t2").distance.is_infinite());
  CHECK(instance.nest.path_ids().size() == 8);
}

TEST_CASE("realize_auto composes search and construction") {
  auto d = osreal::testing::overview_metric();
  auto r = realize_auto(d);
  REQUIRE(r.realizable);
  CHECK(verify(r.instance, d).pass);

  // A Monge-breaking lift of two antipodal entries.
  auto broken = d;
  broken.set("a", "b", ExtendedRational(40));
  broken.set("t1", "t2", ExtendedRational(40));
  for (const auto& s : broken.terminals())
    for (const auto& t : broken.terminals())
      if (s != t && broken.at(s, t).finite() < 40 &&
          !((s == "a" && t == "b") || (s == "t1" && t == "t2")))
        broken.set(s, t, ExtendedRational(20));
  REQUIRE(validate(broken).empty());
  auto r2 = realize_auto(broken);
  CHECK(!r2.realizable);
  CHECK(r2.witness.has_quadruple);
}

TEST_CASE("uniform metric realizes under every stream order") {
  QuasiMetric d({"p", "q", "r", "s"});
  for (const auto& s : d.terminals())
    for (const auto& t : d.terminals())
      if (s != t) d.set(s, t, ExtendedRational(1));
  CircularOrdering sigma(d.terminals());
  for (auto order : {StreamOrder::DecreasingDistance, StreamOrder::IncreasingDistance,
                     StreamOrder::Lexicographic}) {
    RealizeOptions opt;
    opt.order = order;
    auto instance = realize(d, sigma, opt);
    CHECK(verify(instance, d).pass);
  }
}

TEST_CASE("verify flags a corrupted weight") {
  QuasiMetric d({"a", "b"});
  d.set("a", "b", ExtendedRational(5));
  d.set("b", "a", ExtendedRational(7));
  auto instance = realize(d, CircularOrdering({"a", "b"}));
  // Raise the weight on the unique a->b path.
  EdgeId e = instance.nest.path(*instance.nest.path_for("a", "b")).edges[0];
  instance.weights[e] = Rational(6);
  auto r = verify(instance, d);
  REQUIRE(!r.pass);
  bool saw_distance = false, saw_path = false;
  for (const auto& disc : r.discrepancies) {
    saw_distance |= disc.kind == Discrepancy::Kind::Distance;
    saw_path |= disc.kind == Discrepancy::Kind::PathLength;
  }
  CHECK(saw_distance);
  CHECK(saw_path);
}

TEST_SUITE_END();
