#include "osreal/generate.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace osreal {

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("Rng::below(0)");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

long long Rng::range(long long lo, long long hi) {
  if (lo > hi) throw std::invalid_argument("Rng::range: empty interval");
  return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
}

Rational Rng::positive_rational(long long max_num, long long max_den) {
  long long num = range(1, std::max(1LL, max_num));
  long long den = range(1, std::max(1LL, max_den));
  return Rational(num, den);
}

std::vector<std::string> generated_terminal_names(std::size_t k) {
  std::vector<std::string> names;
  names.reserve(k);
  for (std::size_t i = 1; i <= k; ++i) {
    std::string n = std::to_string(i);
    if (n.size() < 2) n = "0" + n;
    names.push_back("t" + n);
  }
  return names;
}

QuasiMetric gen_random_quasimetric(std::size_t k, std::uint64_t seed) {
  if (k < 2) throw std::invalid_argument("gen_random_quasimetric requires k >= 2");
  Rng rng(seed);
  QuasiMetric d(generated_terminal_names(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (i != j) d.set(i, j, ExtendedRational(static_cast<int>(rng.range(1, 12))));
  // Min-plus closure enforces the triangle inequality exactly.
  for (std::size_t m = 0; m < k; ++m)
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        if (i == j) continue;
        auto via = d.at(i, m) + d.at(m, j);
        if (via < d.at(i, j)) d.set(i, j, via);
      }
  return d;
}

QuasiMetric gen_boundary_ring_metric(std::size_t k, std::uint64_t seed) {
  if (k < 2) throw std::invalid_argument("gen_boundary_ring_metric requires k >= 2");
  Rng rng(seed);
  const auto names = generated_terminal_names(k);

  struct Arc {
    std::size_t from, to;
    long long w;
  };
  std::vector<Arc> arcs;
  for (std::size_t i = 0; i < k; ++i) {
    arcs.push_back({i, (i + 1) % k, rng.range(1, 9)});
    arcs.push_back({(i + 1) % k, i, rng.range(1, 9)});
  }

  // A few non-crossing chords, both directions; planarity with every
  // terminal on the outer face is preserved.
  auto interleaves = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
    auto inside = [&](std::size_t lo, std::size_t hi, std::size_t x) {
      for (std::size_t p = (lo + 1) % k; p != hi; p = (p + 1) % k)
        if (p == x) return true;
      return false;
    };
    return inside(a, b, c) != inside(a, b, d);
  };
  std::vector<std::pair<std::size_t, std::size_t>> chords;
  const std::size_t want = k / 3;
  for (std::size_t tries = 0; tries < 8 * want + 1 && chords.size() < want; ++tries) {
    std::size_t u = rng.below(k), v = rng.below(k);
    if (u == v || (u + 1) % k == v || (v + 1) % k == u) continue;
    bool ok = true;
    for (auto& [x, y] : chords) {
      if (u == x || u == y || v == x || v == y || interleaves(u, v, x, y)) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    chords.emplace_back(u, v);
    arcs.push_back({u, v, rng.range(2, 15)});
    arcs.push_back({v, u, rng.range(2, 15)});
  }

  const long long inf = std::numeric_limits<long long>::max() / 4;
  std::vector<long long> dist(k * k, inf);
  for (std::size_t i = 0; i < k; ++i) dist[i * k + i] = 0;
  for (const auto& a : arcs) dist[a.from * k + a.to] = std::min(dist[a.from * k + a.to], a.w);
  for (std::size_t m = 0; m < k; ++m)
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        dist[i * k + j] = std::min(dist[i * k + j], dist[i * k + m] + dist[m * k + j]);

  QuasiMetric d(names);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (i != j) d.set(i, j, ExtendedRational(static_cast<int>(dist[i * k + j])));
  return d;
}

}  // namespace osreal
