#pragma once

#include "osreal/rational.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace osreal {

/// Cyclic arrangement of all terminals. Canonical form rotates the
/// lexicographically least terminal to the front, so two orderings compare
/// equal iff they are rotations of each other. A mirrored ordering is a
/// distinct value.
class CircularOrdering {
 public:
  CircularOrdering() = default;
  explicit CircularOrdering(std::vector<std::string> seq);

  const std::vector<std::string>& sequence() const { return seq_; }
  std::size_t size() const { return seq_.size(); }
  bool contains(const std::string& t) const;
  /// Index of t in the canonical sequence; throws if absent.
  std::size_t position_of(const std::string& t) const;

  friend bool operator==(const CircularOrdering& a, const CircularOrdering& b) {
    return a.seq_ == b.seq_;
  }

 private:
  std::vector<std::string> seq_;
};

CircularOrdering mirror(const CircularOrdering& o);
CircularOrdering rotate(const CircularOrdering& o, long steps);

/// Exact k-by-k table of extended-rational distances over named terminals.
/// Off-diagonal entries default to infinity; the diagonal is fixed at zero.
class QuasiMetric {
 public:
  QuasiMetric() = default;
  explicit QuasiMetric(std::vector<std::string> terminals);

  std::size_t size() const { return terminals_.size(); }
  const std::vector<std::string>& terminals() const { return terminals_; }
  bool has_terminal(const std::string& t) const { return index_.count(t) > 0; }
  std::size_t index_of(const std::string& t) const;

  const ExtendedRational& at(std::size_t i, std::size_t j) const { return d_[i * size() + j]; }
  const ExtendedRational& at(const std::string& s, const std::string& t) const {
    return at(index_of(s), index_of(t));
  }
  void set(std::size_t i, std::size_t j, ExtendedRational v);
  void set(const std::string& s, const std::string& t, ExtendedRational v) {
    set(index_of(s), index_of(t), std::move(v));
  }

 private:
  std::vector<std::string> terminals_;
  std::map<std::string, std::size_t> index_;
  std::vector<ExtendedRational> d_;
};

/// Quasi-metric whose entries may still be unknown. Triangle inequalities
/// are only meaningful among fully known triples.
class PartialQuasiMetric {
 public:
  PartialQuasiMetric() = default;
  explicit PartialQuasiMetric(std::vector<std::string> terminals);
  explicit PartialQuasiMetric(const QuasiMetric& full);

  std::size_t size() const { return terminals_.size(); }
  const std::vector<std::string>& terminals() const { return terminals_; }
  bool has_terminal(const std::string& t) const { return index_.count(t) > 0; }
  std::size_t index_of(const std::string& t) const;

  bool known(std::size_t i, std::size_t j) const { return d_[i * size() + j].has_value(); }
  bool known(const std::string& s, const std::string& t) const {
    return known(index_of(s), index_of(t));
  }
  const ExtendedRational& at(std::size_t i, std::size_t j) const;
  const ExtendedRational& at(const std::string& s, const std::string& t) const {
    return at(index_of(s), index_of(t));
  }
  void set(std::size_t i, std::size_t j, ExtendedRational v);
  void set(const std::string& s, const std::string& t, ExtendedRational v) {
    set(index_of(s), index_of(t), std::move(v));
  }

  std::size_t known_count() const;
  bool complete() const;
  /// Converts to a QuasiMetric; throws unless complete.
  QuasiMetric to_quasi_metric() const;

 private:
  std::vector<std::string> terminals_;
  std::map<std::string, std::size_t> index_;
  std::vector<std::optional<ExtendedRational>> d_;
};

struct MetricViolation {
  enum class Kind { DiagonalNotZero, NotPositive, Triangle };
  Kind kind;
  std::vector<std::string> terminals;  // witnessing pair or triple
  std::string detail;
};

/// Checks the quasi-metric axioms (identity, positivity, triangle with the
/// infinity rule). Violations are returned as data; an empty list means
/// the table is a valid quasi-metric.
std::vector<MetricViolation> validate(const QuasiMetric& d);
std::vector<MetricViolation> validate(const PartialQuasiMetric& d);

struct MongeResult {
  bool pass = true;
  /// When pass is false: the lexicographically least violating aligned
  /// quadruple (t1,t2,t3,t4), appearing in this cyclic order in sigma.
  std::array<std::string, 4> quadruple;
};

/// Checks, for every 4-subset and each of its 4 cyclic alignments
/// (t1,t2,t3,t4) in sigma order, that
///   D(t1,t3) + D(t2,t4) >= D(t1,t4) + D(t2,t3)
/// under extended-rational comparison (which subsumes the infinity rule:
/// an infinite right side forces an infinite left side).
MongeResult monge_check(const QuasiMetric& d, const CircularOrdering& sigma);

/// Restriction of d to the given subset of terminals (kept in d's order).
QuasiMetric induce(const QuasiMetric& d, const std::vector<std::string>& subset);

}  // namespace osreal
