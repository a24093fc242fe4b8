#include "osreal/ordering.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace osreal {
namespace {

// ---------------------------------------------------------------------------
// Distance table views. Tests and audits only ever add two entries at a
// time, so an int64 view is safe whenever every finite entry is an integer
// of magnitude below 2^60. The exact view is the general fallback.

struct Ext64 {
  static constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();
  std::int64_t v = 0;
  friend Ext64 operator+(Ext64 a, Ext64 b) {
    if (a.v == kInf || b.v == kInf) return {kInf};
    return {a.v + b.v};
  }
  friend bool operator==(const Ext64&, const Ext64&) = default;
  friend auto operator<=>(const Ext64&, const Ext64&) = default;
};

template <class V>
struct Table {
  std::size_t k = 0;
  std::vector<V> entries;
  const V& at(std::size_t i, std::size_t j) const { return entries[i * k + j]; }
};

Table<ExtendedRational> make_exact_table(const QuasiMetric& d) {
  Table<ExtendedRational> t;
  t.k = d.size();
  t.entries.reserve(t.k * t.k);
  for (std::size_t i = 0; i < t.k; ++i)
    for (std::size_t j = 0; j < t.k; ++j) t.entries.push_back(d.at(i, j));
  return t;
}

std::optional<Table<Ext64>> try_make_int_table(const QuasiMetric& d) {
  const Int bound = Int(1) << 60;
  Table<Ext64> t;
  t.k = d.size();
  t.entries.reserve(t.k * t.k);
  for (std::size_t i = 0; i < t.k; ++i)
    for (std::size_t j = 0; j < t.k; ++j) {
      const auto& e = d.at(i, j);
      if (e.is_infinite()) {
        t.entries.push_back({Ext64::kInf});
        continue;
      }
      const Rational& r = e.finite();
      if (denominator(r) != 1 || abs(numerator(r)) >= bound) return std::nullopt;
      t.entries.push_back({static_cast<std::int64_t>(numerator(r))});
    }
  return t;
}

// ---------------------------------------------------------------------------
// Refinement primitives.

/// Blocks of S sorted by the test-1/2 key, ascending, stable. Mode 0 keys
/// D(c,t)-D(d,t), mode 1 keys D(t,c)-D(t,d); comparisons are done in
/// cross-added form so infinite entries never need subtraction. Returns
/// nullopt when a single block remains or the pairwise comparisons are not
/// a consistent weak order (possible only with exotic infinity patterns).
template <class V>
std::optional<std::vector<std::vector<int>>> sorted_blocks(const Table<V>& d,
                                                           const std::vector<int>& s, int c,
                                                           int dd, int mode) {
  const int m = static_cast<int>(s.size());
  auto cmp = [&](int x, int y) -> int {
    V lhs = mode == 0 ? d.at(c, x) + d.at(dd, y) : d.at(x, c) + d.at(y, dd);
    V rhs = mode == 0 ? d.at(c, y) + d.at(dd, x) : d.at(y, c) + d.at(x, dd);
    if (lhs < rhs) return -1;
    if (rhs < lhs) return 1;
    return 0;
  };
  std::vector<int> mat(static_cast<std::size_t>(m) * m, 0);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      int r = cmp(s[i], s[j]);
      mat[i * m + j] = r;
      mat[j * m + i] = -r;
    }
  std::vector<int> rank(m, 0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (mat[j * m + i] < 0) ++rank[i];
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      int expect = rank[i] < rank[j] ? -1 : rank[i] > rank[j] ? 1 : 0;
      if (mat[i * m + j] != expect) return std::nullopt;
    }
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return rank[i] < rank[j]; });
  std::vector<std::vector<int>> blocks;
  int prev_rank = -1;
  for (int pos = 0; pos < m; ++pos) {
    int idx = order[pos];
    if (blocks.empty() || rank[idx] != prev_rank) {
      blocks.emplace_back();
      prev_rank = rank[idx];
    }
    blocks.back().push_back(s[idx]);
  }
  if (blocks.size() < 2) return std::nullopt;
  return blocks;
}

/// Three-way split of S for tests 3 (test3=true) and 4, relative to the
/// firing pair (t1,t2). Blocks come back in reading order (S1, S', S2) with
/// empties dropped; nullopt when fewer than two blocks remain.
template <class V>
std::optional<std::vector<std::vector<int>>> three_way(const Table<V>& d,
                                                       const std::vector<int>& s, int c, int dd,
                                                       int t1, int t2, bool test3) {
  std::vector<int> s1, smid, s2;
  for (int t : s) {
    bool in1, in2;
    if (test3) {
      in1 = d.at(c, t1) + d.at(t2, t) >= d.at(c, t) + d.at(t2, t1);
      in2 = !in1 && d.at(t2, dd) + d.at(t, t1) >= d.at(t2, t1) + d.at(t, dd);
    } else {
      in1 = d.at(t1, c) + d.at(t, t2) >= d.at(t, c) + d.at(t1, t2);
      in2 = !in1 && d.at(dd, t2) + d.at(t1, t) >= d.at(t1, t2) + d.at(dd, t);
    }
    (in1 ? s1 : in2 ? s2 : smid).push_back(t);
  }
  std::vector<std::vector<int>> blocks;
  for (auto* part : {&s1, &smid, &s2})
    if (!part->empty()) blocks.push_back(std::move(*part));
  if (blocks.size() < 2) return std::nullopt;
  return blocks;
}

// ---------------------------------------------------------------------------
// Refinement engine for one (a,b) neighbor hypothesis.

template <class V>
class Engine {
 public:
  Engine(const Table<V>& table, std::vector<std::vector<int>> groups)
      : d_(table), groups_(std::move(groups)) {
    rebuild_group_of();
  }

  /// Runs the refinement loop to its fixpoint. Returns nullopt on Pass,
  /// else the violating aligned quadruple (terminal indices).
  std::optional<std::array<int, 4>> run() {
    for (;;) {
      auto focus = scan_and_refine();
      if (!focus) break;
      if (auto w = audit(&*focus)) return w;
    }
    return audit(nullptr);
  }

  const std::vector<std::vector<int>>& groups() const { return groups_; }

 private:
  const Table<V>& d_;
  std::vector<std::vector<int>> groups_;
  std::vector<int> group_of_;

  void rebuild_group_of() {
    group_of_.assign(d_.k, -1);
    for (std::size_t g = 0; g < groups_.size(); ++g)
      for (int t : groups_[g]) group_of_[t] = static_cast<int>(g);
  }

  // Cyclic orientation of a test tuple: scanning forward from the group
  // under refinement, the first context group encountered plays d and the
  // second plays c. Block placement in the primitives matches this.
  std::pair<int, int> orient(int gs, int g1, int g2) const {
    const int n = static_cast<int>(groups_.size());
    for (int off = 1; off < n; ++off) {
      int g = (gs + off) % n;
      if (g == g1) return {g2, g1};
      if (g == g2) return {g1, g2};
    }
    throw std::logic_error("orientation scan failed");
  }

  /// One scan pass: applies the first firing test. Returns the terminals of
  /// the split group (the audit focus), or nullopt when nothing fires.
  std::optional<std::vector<int>> scan_and_refine() {
    const int n = static_cast<int>(groups_.size());
    for (int gs = 0; gs < n; ++gs) {
      const auto& s = groups_[gs];
      if (s.size() < 2) continue;
      for (int gx = 0; gx < n; ++gx) {
        if (gx == gs) continue;
        for (int gy = gx + 1; gy < n; ++gy) {
          if (gy == gs) continue;
          auto [gc, gd] = orient(gs, gx, gy);
          for (int c : groups_[gc]) {
            for (int dd : groups_[gd]) {
              for (std::size_t i = 0; i < s.size(); ++i) {
                for (std::size_t j = 0; j < s.size(); ++j) {
                  if (i == j) continue;
                  const int t1 = s[i], t2 = s[j];
                  std::optional<std::vector<std::vector<int>>> blocks;
                  if (d_.at(c, t1) + d_.at(dd, t2) < d_.at(c, t2) + d_.at(dd, t1))
                    blocks = sorted_blocks(d_, s, c, dd, 0);
                  else if (d_.at(t1, c) + d_.at(t2, dd) < d_.at(t2, c) + d_.at(t1, dd))
                    blocks = sorted_blocks(d_, s, c, dd, 1);
                  else if (d_.at(c, t1) + d_.at(t2, dd) < d_.at(c, dd) + d_.at(t2, t1))
                    blocks = three_way(d_, s, c, dd, t1, t2, true);
                  else if (d_.at(t1, c) + d_.at(dd, t2) < d_.at(dd, c) + d_.at(t1, t2))
                    blocks = three_way(d_, s, c, dd, t1, t2, false);
                  if (!blocks) continue;
                  std::vector<int> focus = s;
                  groups_.erase(groups_.begin() + gs);
                  groups_.insert(groups_.begin() + gs, blocks->begin(), blocks->end());
                  rebuild_group_of();
                  return focus;
                }
              }
            }
          }
        }
      }
    }
    return std::nullopt;
  }

  /// Monge audit over quadruples whose four terminals lie in four distinct
  /// groups, aligned by group position. With a focus set, quadruples
  /// carrying fewer than two focus terminals were already audited earlier.
  std::optional<std::array<int, 4>> audit(const std::vector<int>* focus) const {
    const int k = static_cast<int>(d_.k);
    std::vector<char> in_focus(k, 0);
    if (focus)
      for (int t : *focus) in_focus[t] = 1;
    for (int w = 0; w < k; ++w)
      for (int x = w + 1; x < k; ++x)
        for (int y = x + 1; y < k; ++y)
          for (int z = y + 1; z < k; ++z) {
            if (focus && in_focus[w] + in_focus[x] + in_focus[y] + in_focus[z] < 2) continue;
            const int gw = group_of_[w], gx = group_of_[x], gy = group_of_[y], gz = group_of_[z];
            if (gw == gx || gw == gy || gw == gz || gx == gy || gx == gz || gy == gz) continue;
            std::array<int, 4> q = {w, x, y, z};
            std::sort(q.begin(), q.end(),
                      [&](int u, int v) { return group_of_[u] < group_of_[v]; });
            for (int r = 0; r < 4; ++r) {
              int t1 = q[r], t2 = q[(r + 1) % 4], t3 = q[(r + 2) % 4], t4 = q[(r + 3) % 4];
              if (d_.at(t1, t3) + d_.at(t2, t4) < d_.at(t1, t4) + d_.at(t2, t3))
                return std::array<int, 4>{t1, t2, t3, t4};
            }
          }
    return std::nullopt;
  }
};

template <class V>
PairTestResult test_pair_impl(const QuasiMetric& d, const Table<V>& table, int ia, int ib) {
  const int k = static_cast<int>(d.size());
  std::vector<int> middle;
  for (int t = 0; t < k; ++t)
    if (t != ia && t != ib) middle.push_back(t);
  std::vector<std::vector<int>> groups;
  groups.push_back({ib});
  if (!middle.empty()) groups.push_back(std::move(middle));
  groups.push_back({ia});

  Engine<V> engine(table, std::move(groups));
  auto w = engine.run();
  PairTestResult result;
  if (w) {
    result.pass = false;
    result.witness.has_quadruple = true;
    for (int i = 0; i < 4; ++i) result.witness.quadruple[i] = d.terminals()[(*w)[i]];
    result.witness.note = "Monge violated across four refined groups";
    return result;
  }
  result.pass = true;
  for (const auto& g : engine.groups()) {
    std::vector<std::string> names;
    for (int t : g) names.push_back(d.terminals()[t]);
    result.partition.groups.push_back(std::move(names));
  }
  return result;
}

template <int TestN>
std::optional<OrderedPartition> apply_test_impl(const QuasiMetric& d, const OrderedPartition& sigma,
                                                const std::string& c, const std::string& dd,
                                                std::size_t group_index) {
  if (group_index >= sigma.groups.size())
    throw std::invalid_argument("group index out of range");
  const auto& group = sigma.groups[group_index];
  for (const auto& t : group)
    if (t == c || t == dd)
      throw std::invalid_argument("context terminal lies inside the refined group");
  auto table = make_exact_table(d);
  const int ic = static_cast<int>(d.index_of(c));
  const int id = static_cast<int>(d.index_of(dd));
  std::vector<int> s;
  for (const auto& t : group) s.push_back(static_cast<int>(d.index_of(t)));

  std::optional<std::vector<std::vector<int>>> blocks;
  for (std::size_t i = 0; i < s.size() && !blocks; ++i)
    for (std::size_t j = 0; j < s.size() && !blocks; ++j) {
      if (i == j) continue;
      const int t1 = s[i], t2 = s[j];
      bool fires;
      if constexpr (TestN == 1)
        fires = table.at(ic, t1) + table.at(id, t2) < table.at(ic, t2) + table.at(id, t1);
      else if constexpr (TestN == 2)
        fires = table.at(t1, ic) + table.at(t2, id) < table.at(t2, ic) + table.at(t1, id);
      else if constexpr (TestN == 3)
        fires = table.at(ic, t1) + table.at(t2, id) < table.at(ic, id) + table.at(t2, t1);
      else
        fires = table.at(t1, ic) + table.at(id, t2) < table.at(id, ic) + table.at(t1, t2);
      if (!fires) continue;
      if constexpr (TestN == 1 || TestN == 2)
        blocks = sorted_blocks(table, s, ic, id, TestN == 1 ? 0 : 1);
      else
        blocks = three_way(table, s, ic, id, t1, t2, TestN == 3);
    }
  if (!blocks) return std::nullopt;

  OrderedPartition out = sigma;
  std::vector<std::vector<std::string>> named;
  for (const auto& b : *blocks) {
    std::vector<std::string> names;
    for (int t : b) names.push_back(d.terminals()[t]);
    named.push_back(std::move(names));
  }
  out.groups.erase(out.groups.begin() + static_cast<long>(group_index));
  out.groups.insert(out.groups.begin() + static_cast<long>(group_index), named.begin(),
                    named.end());
  return out;
}

}  // namespace

PairTestResult test_pair(const QuasiMetric& d, const std::string& a, const std::string& b) {
  if (a == b) throw std::invalid_argument("test_pair requires two distinct terminals");
  const int ia = static_cast<int>(d.index_of(a));
  const int ib = static_cast<int>(d.index_of(b));
  if (auto it = try_make_int_table(d)) return test_pair_impl(d, *it, ia, ib);
  auto table = make_exact_table(d);
  return test_pair_impl(d, table, ia, ib);
}

SearchOutcome find_ordering(const QuasiMetric& d) {
  const std::size_t k = d.size();
  if (k == 0) throw std::invalid_argument("metric has no terminals");
  SearchOutcome out;
  if (k <= 3) {
    out.found = true;
    out.ordering = CircularOrdering(d.terminals());
    return out;
  }

  std::vector<std::string> sorted = d.terminals();
  std::sort(sorted.begin(), sorted.end());
  const std::string a = sorted.front();

  OrderingWitness first_witness;
  bool have_witness = false;
  for (std::size_t bi = 1; bi < sorted.size(); ++bi) {
    const std::string& b = sorted[bi];
    auto r = test_pair(d, a, b);
    if (!r.pass) {
      if (!have_witness) {
        first_witness = r.witness;
        have_witness = true;
      }
      continue;
    }
    // Expand the partition in reading order; recurse on {a} plus each group
    // that still has three or more terminals. A group of two is free: the
    // fixpoint equalities make both inner orders Monge.
    std::vector<std::string> linear;
    for (const auto& g : r.partition.groups) {
      if (g.size() <= 2) {
        for (const auto& t : g) linear.push_back(t);
        continue;
      }
      std::vector<std::string> sub_terms = g;
      sub_terms.push_back(a);
      auto sub = find_ordering(induce(d, sub_terms));
      if (!sub.found) {
        out.found = false;
        out.witness = sub.witness;
        if (out.witness.note.empty()) out.witness.note = "sub-instance not realizable";
        return out;
      }
      // Splice the sub-ordering cut at a, read forward, so the combined
      // cycle restricts to the same cyclic order on {a} and the group.
      const auto& seq = sub.ordering.sequence();
      std::size_t pos = sub.ordering.position_of(a);
      for (std::size_t sft = 1; sft < seq.size(); ++sft)
        linear.push_back(seq[(pos + sft) % seq.size()]);
    }
    CircularOrdering sigma(std::move(linear));
    if (!monge_check(d, sigma).pass)
      throw std::logic_error("combined ordering failed the Monge re-check");
    out.found = true;
    out.ordering = sigma;
    return out;
  }

  out.found = false;
  if (have_witness)
    out.witness = first_witness;
  else
    out.witness.note = "no neighbor candidate passed";
  return out;
}

std::optional<OrderedPartition> apply_test1(const QuasiMetric& d, const OrderedPartition& sigma,
                                            const std::string& c, const std::string& dd,
                                            std::size_t group_index) {
  return apply_test_impl<1>(d, sigma, c, dd, group_index);
}
std::optional<OrderedPartition> apply_test2(const QuasiMetric& d, const OrderedPartition& sigma,
                                            const std::string& c, const std::string& dd,
                                            std::size_t group_index) {
  return apply_test_impl<2>(d, sigma, c, dd, group_index);
}
std::optional<OrderedPartition> apply_test3(const QuasiMetric& d, const OrderedPartition& sigma,
                                            const std::string& c, const std::string& dd,
                                            std::size_t group_index) {
  return apply_test_impl<3>(d, sigma, c, dd, group_index);
}
std::optional<OrderedPartition> apply_test4(const QuasiMetric& d, const OrderedPartition& sigma,
                                            const std::string& c, const std::string& dd,
                                            std::size_t group_index) {
  return apply_test_impl<4>(d, sigma, c, dd, group_index);
}

SearchOutcome brute_force_ordering(const QuasiMetric& d) {
  const std::size_t k = d.size();
  if (k == 0) throw std::invalid_argument("metric has no terminals");
  if (k > 9) throw std::invalid_argument("brute_force_ordering is limited to k <= 9");
  SearchOutcome out;
  if (k <= 3) {
    out.found = true;
    out.ordering = CircularOrdering(d.terminals());
    return out;
  }

  // Placement order equals circular order, so every 4-subset of the placed
  // prefix already has its final cyclic alignment and can be rejected
  // early. Decision-equivalent to enumerating all (k-1)! orderings.
  std::vector<int> perm = {0};
  std::vector<char> used(k, 0);
  used[0] = 1;

  auto fresh_ok = [&]() {
    const int m = static_cast<int>(perm.size());
    const int fresh = perm[m - 1];
    for (int i = 0; i < m - 3; ++i)
      for (int j = i + 1; j < m - 2; ++j)
        for (int l = j + 1; l < m - 1; ++l) {
          std::array<int, 4> q = {perm[i], perm[j], perm[l], fresh};
          for (int r = 0; r < 4; ++r) {
            int t1 = q[r], t2 = q[(r + 1) % 4], t3 = q[(r + 2) % 4], t4 = q[(r + 3) % 4];
            if (d.at(t1, t3) + d.at(t2, t4) < d.at(t1, t4) + d.at(t2, t3)) return false;
          }
        }
    return true;
  };

  auto rec = [&](auto&& self) -> bool {
    if (perm.size() == k) return true;
    for (std::size_t t = 1; t < k; ++t) {
      if (used[t]) continue;
      perm.push_back(static_cast<int>(t));
      if (fresh_ok()) {
        used[t] = 1;
        if (self(self)) return true;
        used[t] = 0;
      }
      perm.pop_back();
    }
    return false;
  };

  if (rec(rec)) {
    std::vector<std::string> names;
    for (int t : perm) names.push_back(d.terminals()[t]);
    out.found = true;
    out.ordering = CircularOrdering(names);
    return out;
  }
  out.found = false;
  out.witness.note = "no ordering passes the Monge check";
  return out;
}

}  // namespace osreal
