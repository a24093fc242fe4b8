#pragma once

#include "osreal/lp.hpp"
#include "osreal/metric.hpp"
#include "osreal/nest.hpp"
#include "osreal/ordering.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace osreal {

/// A nest together with nonnegative exact weights realizing a quasi-metric:
/// every registered path is a shortest path of exactly its pair's distance,
/// and the terminal distance table equals the metric.
class WeightedInstance {
 public:
  PlanarNest nest;
  std::map<EdgeId, Rational> weights;
  CircularOrdering sigma;
  QuasiMetric realized_metric;
};

struct Discrepancy {
  enum class Kind { Distance, PathLength, Boundary, Weight };
  Kind kind;
  std::string src, dst;
  std::string detail;
};

struct VerifyResult {
  bool pass = true;
  std::vector<Discrepancy> discrepancies;
};

/// Exact re-check of an instance against a metric: all-pairs terminal
/// distances equal d (infinite pairs unreachable), every registered path's
/// length equals its pair's distance, weights nonnegative and complete,
/// boundary order equals the instance's sigma.
VerifyResult verify(const WeightedInstance& instance, const QuasiMetric& d);

enum class StreamOrder { DecreasingDistance, IncreasingDistance, Lexicographic };

struct RealizeOptions {
  StreamOrder order = StreamOrder::DecreasingDistance;
  int max_face_revisits = 2;  // escalation ladder: 0, then 1, then 2
  int max_trajectories_per_level = 4096;
};

class MongeViolated : public std::runtime_error {
 public:
  MongeViolated(std::string what, std::array<std::string, 4> quad)
      : std::runtime_error(std::move(what)), quadruple(quad) {}
  std::array<std::string, 4> quadruple;
};

/// The trajectory ladder was exhausted for one pair. This is a search
/// diagnostic, never a realizability verdict.
class SearchExhausted : public std::runtime_error {
 public:
  SearchExhausted(std::string what, std::string src_, std::string dst_, int level_)
      : std::runtime_error(std::move(what)), src(std::move(src_)), dst(std::move(dst_)),
        level(level_) {}
  std::string src, dst;
  int level;
};

/// Streamed greedy construction: processes the finite pairs of d in the
/// configured order; for each pair, tries enumerated trajectories shortest
/// first and commits the first insertion under which weights realizing d
/// still exist (checked exactly). Pairs with infinite distance are never
/// inserted; they act as reachability prohibitions throughout.
WeightedInstance realize(const QuasiMetric& d, const CircularOrdering& sigma,
                         const RealizeOptions& options = {});

struct RealizeAutoResult {
  bool realizable = false;
  WeightedInstance instance;  // when realizable
  OrderingWitness witness;    // when not
};

/// find_ordering composed with realize.
RealizeAutoResult realize_auto(const QuasiMetric& d, const RealizeOptions& options = {});

}  // namespace osreal
