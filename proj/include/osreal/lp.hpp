#pragma once

#include "osreal/metric.hpp"
#include "osreal/nest.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace osreal {

struct LinearConstraint {
  enum class Rel { LessEq, GreaterEq };
  enum class Kind { Generic, PathUpper, PathLower };

  std::map<EdgeId, Rational> coeffs;
  Rel rel = Rel::LessEq;
  Rational rhs;

  // Provenance for path constraints (drives the flow decomposition).
  Kind kind = Kind::Generic;
  std::string src, dst;
  std::vector<EdgeId> path_edges;

  std::string str() const;
};

struct FarkasCertificate {
  /// One nonnegative multiplier per constraint of the solved system.
  std::vector<Rational> multipliers;
};

struct InfinityWitness {
  std::string src, dst;
  std::vector<EdgeId> walk;  // directed walk src -> dst that must not exist
};

struct FeasibilityResult {
  bool feasible = false;
  /// Exact nonnegative weights satisfying every constraint (when feasible).
  std::map<EdgeId, Rational> weights;
  /// Farkas contradiction (when infeasible through the solver).
  std::optional<FarkasCertificate> farkas;
  /// Reachability violation of an infinite pair (when applicable).
  std::optional<InfinityWitness> infinity;
  /// The active constraint system the result refers to.
  std::vector<LinearConstraint> constraints;
};

/// Exact rational feasibility of {constraints, x >= 0} by phase-one simplex
/// with Bland's least-index rule. Either a feasible point or Farkas
/// multipliers combining the constraints into 0 >= positive.
FeasibilityResult solve_lp_feasibility(const std::vector<LinearConstraint>& constraints,
                                       const std::vector<EdgeId>& variables);

/// Independent arithmetic replay: every constraint holds exactly.
bool verify_feasible_point(const std::vector<LinearConstraint>& constraints,
                           const std::map<EdgeId, Rational>& weights);
/// Independent arithmetic replay: multipliers are nonnegative and combine
/// the constraints into c.x <= delta with c >= 0 and delta < 0.
bool verify_farkas(const std::vector<LinearConstraint>& constraints,
                   const FarkasCertificate& certificate);

struct ShortestPathResult {
  ExtendedRational distance;
  std::optional<std::vector<EdgeId>> path;  // nullopt when unreachable
};

/// Exact Dijkstra over the nest's directed path edges. Ties are broken by
/// the lexicographically least edge-id sequence.
ShortestPathResult shortest_path(const PlanarNest& nest,
                                 const std::map<EdgeId, Rational>& weights,
                                 const std::string& s, const std::string& t);

/// Thrown when the cutting-plane loop exceeds its iteration budget.
class SeparationLimit : public std::runtime_error {
 public:
  SeparationLimit(std::string what, std::vector<LinearConstraint> log)
      : std::runtime_error(std::move(what)), constraint_log(std::move(log)) {}
  std::vector<LinearConstraint> constraint_log;
};

/// A remembered lower-bound cut: the listed directed path must be at least
/// as long as D(src,dst). Callers that probe the same nest repeatedly can
/// feed fixpoint cuts back in to shortcut the separation loop.
struct LowerCut {
  std::string src, dst;
  std::vector<EdgeId> edges;
};

/// Decides whether edge weights exist making every registered path of a
/// known pair a shortest path of exactly its distance, with known-infinite
/// pairs unreachable. Infinite pairs are checked combinatorially first;
/// finite pairs run the separation loop: seed with the designated-path
/// upper and lower constraints (plus any remembered cuts), then repeatedly
/// cut with violated shortest-path lower bounds. Known finite pairs with no
/// registered path are held to dist >= D only.
FeasibilityResult check_weights(const PlanarNest& nest, const PartialQuasiMetric& dpart,
                                const std::vector<LowerCut>* remembered_cuts = nullptr);

/// Flow on terminal-to-terminal paths with derived edge loads, pair totals
/// and cost.
struct TerminalFlow {
  struct PathFlow {
    std::string src, dst;
    std::vector<EdgeId> edges;
    Rational value;
  };
  std::vector<PathFlow> paths;

  std::map<EdgeId, Rational> edge_load() const;
  std::map<std::pair<std::string, std::string>, Rational> pair_totals() const;
};

struct FlowPair {
  TerminalFlow f;        // supported on designated paths of seen pairs
  TerminalFlow fprime;   // dominated by f, strictly more expensive
  Rational cost_f;       // sum of value * D over f's pairs
  Rational cost_fprime;
};

/// Decomposes a Farkas certificate from check_weights into the integral
/// flow pair of the infeasibility story: multipliers on designated-path
/// upper constraints become F, multipliers on path lower constraints become
/// F'. F dominates F' and cost(F) < cost(F'), both re-verified here.
/// Returns nullopt when scaling to integers exceeds the configured bound.
std::optional<FlowPair> farkas_to_flows(const PlanarNest& nest, const FeasibilityResult& result);

}  // namespace osreal
