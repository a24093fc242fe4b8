#pragma once

#include "osreal/metric.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace osreal {

/// Cyclic sequence of disjoint nonempty terminal groups, refined during the
/// neighbor test. test_pair starts from ({b}, T \ {a,b}, {a}) in this
/// reading order.
struct OrderedPartition {
  std::vector<std::vector<std::string>> groups;

  friend bool operator==(const OrderedPartition& x, const OrderedPartition& y) {
    return x.groups == y.groups;
  }
};

struct OrderingWitness {
  bool has_quadruple = false;
  /// Violating aligned quadruple (cyclic order as audited) when present.
  std::array<std::string, 4> quadruple;
  std::string note;
};

struct SearchOutcome {
  bool found = false;
  CircularOrdering ordering;  // meaningful when found
  OrderingWitness witness;    // meaningful when !found
};

struct PairTestResult {
  bool pass = false;
  OrderedPartition partition;  // when pass
  OrderingWitness witness;     // when !pass
};

/// Decides whether some circular ordering makes d Monge, and returns one if
/// so. Fixes the lexicographically least terminal as the anchor, probes each
/// candidate clockwise neighbor with test_pair, then recurses per group on
/// the induced sub-metric and splices the sub-orderings back together.
/// A returned ordering is always re-checked against monge_check.
SearchOutcome find_ordering(const QuasiMetric& d);

/// Runs the refinement loop for the hypothesis "b is the clockwise neighbor
/// of a": repeatedly applies Tests 1-4 to tuples (c,d,t1,t2) with c,d in two
/// distinct other groups and t1,t2 together in some group, auditing the
/// Monge inequalities across quadruples of four distinct groups after every
/// refinement. Fail carries the violating quadruple.
PairTestResult test_pair(const QuasiMetric& d, const std::string& a, const std::string& b);

/// Single refinement steps, exposed for direct testing. The group is
/// addressed by its index in sigma; c and d must lie outside it. Returns
/// the refined partition, or nullopt when the test criterion never fires.
std::optional<OrderedPartition> apply_test1(const QuasiMetric& d, const OrderedPartition& sigma,
                                            const std::string& c, const std::string& dd,
                                            std::size_t group_index);
std::optional<OrderedPartition> apply_test2(const QuasiMetric& d, const OrderedPartition& sigma,
                                            const std::string& c, const std::string& dd,
                                            std::size_t group_index);
std::optional<OrderedPartition> apply_test3(const QuasiMetric& d, const OrderedPartition& sigma,
                                            const std::string& c, const std::string& dd,
                                            std::size_t group_index);
std::optional<OrderedPartition> apply_test4(const QuasiMetric& d, const OrderedPartition& sigma,
                                            const std::string& c, const std::string& dd,
                                            std::size_t group_index);

/// Exhaustive oracle: tries every ordering with a fixed first terminal
/// (pruned placement search, decision-equivalent to full enumeration).
/// Guarded to k <= 9.
SearchOutcome brute_force_ordering(const QuasiMetric& d);

}  // namespace osreal
