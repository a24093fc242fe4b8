#pragma once

#include "osreal/metric.hpp"
#include "osreal/nest.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace osreal::testing {

/// Six-terminal demonstration metric on the circular order
/// (a,t4,t1,b,t3,t2): consecutive pairs cost 4 forward / 1 backward,
/// distance-2 pairs 4 forward / 2 backward, antipodal pairs 3 both ways.
inline QuasiMetric overview_metric() {
  std::vector<std::string> order = {"a", "t4", "t1", "b", "t3", "t2"};
  QuasiMetric d(order);
  const std::size_t k = 6;
  for (std::size_t p = 0; p < k; ++p) {
    const auto& t = order[p];
    const auto& next1 = order[(p + 1) % k];
    const auto& next2 = order[(p + 2) % k];
    const auto& anti = order[(p + 3) % k];
    d.set(t, next1, ExtendedRational(4));
    d.set(next1, t, ExtendedRational(1));
    d.set(t, next2, ExtendedRational(4));
    d.set(next2, t, ExtendedRational(2));
    d.set(t, anti, ExtendedRational(3));
  }
  return d;
}

inline CircularOrdering overview_ordering() {
  return CircularOrdering({"a", "t4", "t1", "b", "t3", "t2"});
}

struct OverviewNest {
  PlanarNest nest;
  PathId p12 = -1, p34 = -1, pab = -1;
  EdgeId e_t1p = -1, e_pt2 = -1, e_t3p = -1, e_pt4 = -1;
};

/// The two crossing chords pi_{t1,t2} and pi_{t3,t4} of the demonstration:
/// one interior crossing p, with the four path edges identified.
inline OverviewNest overview_two_chords() {
  OverviewNest out;
  auto sigma = overview_ordering();
  out.nest = PlanarNest::empty_nest(sigma.sequence(), sigma);
  FaceId interior = -1;
  for (const auto& f : out.nest.faces())
    if (f.id != out.nest.outer_face()) interior = f.id;
  Trajectory chord;
  chord.final_face = interior;
  out.p12 = out.nest.insert_path("t1", "t2", chord);
  EdgeId first = out.nest.path(out.p12).edges.front();
  TrajectoryStream stream(out.nest, "t3", "t4", 0);
  bool inserted = false;
  while (auto cand = stream.next()) {
    if (cand->crossings() == 1 && cand->steps[0].edge == first) {
      out.p34 = out.nest.insert_path("t3", "t4", *cand);
      inserted = true;
      break;
    }
  }
  if (!inserted) throw std::logic_error("fixture: crossing trajectory not found");
  out.e_t1p = out.nest.path(out.p12).edges[0];
  out.e_pt2 = out.nest.path(out.p12).edges[1];
  out.e_t3p = out.nest.path(out.p34).edges[0];
  out.e_pt4 = out.nest.path(out.p34).edges[1];
  return out;
}

/// Adds pi_{a,b} around the crossing p: on its left (crossing (p,t4) then
/// (t1,p)) or on its right (crossing (p,t2) then (t3,p)).
inline OverviewNest overview_three_paths(bool left) {
  OverviewNest out = overview_two_chords();
  TrajectoryStream stream(out.nest, "a", "b", 0);
  while (auto t = stream.next()) {
    if (t->crossings() != 2) continue;
    bool is_left = t->steps[0].edge == out.e_pt4 && t->steps[1].edge == out.e_t1p;
    bool is_right = t->steps[0].edge == out.e_pt2 && t->steps[1].edge == out.e_t3p;
    if ((left && is_left) || (!left && is_right)) {
      out.pab = out.nest.insert_path("a", "b", *t);
      return out;
    }
  }
  throw std::logic_error("fixture: requested insertion not found");
}

}  // namespace osreal::testing
