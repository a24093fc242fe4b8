#include "osreal/metric.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace osreal {

Rational parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den <= 0) throw std::invalid_argument("rational denominator must be positive: " + s);
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("malformed rational literal: " + s);
  }
}

std::string format_rational(const Rational& r) {
  std::ostringstream os;
  if (denominator(r) == 1) {
    os << numerator(r);
  } else {
    os << numerator(r) << "/" << denominator(r);
  }
  return os.str();
}

ExtendedRational ExtendedRational::parse(const std::string& s) {
  if (s == "inf") return infinity();
  return ExtendedRational(parse_rational(s));
}

// ---------------------------------------------------------------------------
// CircularOrdering

CircularOrdering::CircularOrdering(std::vector<std::string> seq) : seq_(std::move(seq)) {
  if (seq_.empty()) throw std::invalid_argument("circular ordering must not be empty");
  std::set<std::string> dedup(seq_.begin(), seq_.end());
  if (dedup.size() != seq_.size())
    throw std::invalid_argument("circular ordering contains a duplicate terminal");
  auto least = std::min_element(seq_.begin(), seq_.end());
  std::rotate(seq_.begin(), least, seq_.end());
}

bool CircularOrdering::contains(const std::string& t) const {
  return std::find(seq_.begin(), seq_.end(), t) != seq_.end();
}

std::size_t CircularOrdering::position_of(const std::string& t) const {
  auto it = std::find(seq_.begin(), seq_.end(), t);
  if (it == seq_.end()) throw std::invalid_argument("terminal not in ordering: " + t);
  return static_cast<std::size_t>(it - seq_.begin());
}

CircularOrdering mirror(const CircularOrdering& o) {
  std::vector<std::string> seq(o.sequence().rbegin(), o.sequence().rend());
  return CircularOrdering(std::move(seq));
}

CircularOrdering rotate(const CircularOrdering& o, long steps) {
  auto seq = o.sequence();
  if (seq.empty()) return o;
  long n = static_cast<long>(seq.size());
  long s = ((steps % n) + n) % n;
  std::rotate(seq.begin(), seq.begin() + s, seq.end());
  return CircularOrdering(std::move(seq));
}

// ---------------------------------------------------------------------------
// QuasiMetric

namespace {

std::map<std::string, std::size_t> build_index(const std::vector<std::string>& terminals) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < terminals.size(); ++i) {
    if (!index.emplace(terminals[i], i).second)
      throw std::invalid_argument("duplicate terminal name: " + terminals[i]);
  }
  return index;
}

}  // namespace

QuasiMetric::QuasiMetric(std::vector<std::string> terminals)
    : terminals_(std::move(terminals)), index_(build_index(terminals_)) {
  const std::size_t k = terminals_.size();
  d_.assign(k * k, ExtendedRational::infinity());
  for (std::size_t i = 0; i < k; ++i) d_[i * k + i] = ExtendedRational(0);
}

std::size_t QuasiMetric::index_of(const std::string& t) const {
  auto it = index_.find(t);
  if (it == index_.end()) throw std::invalid_argument("unknown terminal: " + t);
  return it->second;
}

void QuasiMetric::set(std::size_t i, std::size_t j, ExtendedRational v) {
  d_[i * size() + j] = std::move(v);
}

PartialQuasiMetric::PartialQuasiMetric(std::vector<std::string> terminals)
    : terminals_(std::move(terminals)), index_(build_index(terminals_)) {
  const std::size_t k = terminals_.size();
  d_.assign(k * k, std::nullopt);
  for (std::size_t i = 0; i < k; ++i) d_[i * k + i] = ExtendedRational(0);
}

PartialQuasiMetric::PartialQuasiMetric(const QuasiMetric& full)
    : PartialQuasiMetric(full.terminals()) {
  const std::size_t k = size();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) d_[i * k + j] = full.at(i, j);
}

std::size_t PartialQuasiMetric::index_of(const std::string& t) const {
  auto it = index_.find(t);
  if (it == index_.end()) throw std::invalid_argument("unknown terminal: " + t);
  return it->second;
}

const ExtendedRational& PartialQuasiMetric::at(std::size_t i, std::size_t j) const {
  const auto& e = d_[i * size() + j];
  if (!e) throw std::domain_error("entry is unknown");
  return *e;
}

void PartialQuasiMetric::set(std::size_t i, std::size_t j, ExtendedRational v) {
  d_[i * size() + j] = std::move(v);
}

std::size_t PartialQuasiMetric::known_count() const {
  std::size_t n = 0;
  for (const auto& e : d_)
    if (e) ++n;
  return n;
}

bool PartialQuasiMetric::complete() const { return known_count() == size() * size(); }

QuasiMetric PartialQuasiMetric::to_quasi_metric() const {
  if (!complete()) throw std::domain_error("partial quasi-metric has unknown entries");
  QuasiMetric q(terminals_);
  const std::size_t k = size();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) q.set(i, j, at(i, j));
  return q;
}

// ---------------------------------------------------------------------------
// Axiom checks

namespace {

template <class Known, class At>
std::vector<MetricViolation> validate_impl(const std::vector<std::string>& terms, Known known,
                                           At at) {
  std::vector<MetricViolation> out;
  const std::size_t k = terms.size();
  for (std::size_t i = 0; i < k; ++i) {
    if (known(i, i) && !(at(i, i) == ExtendedRational(0)))
      out.push_back({MetricViolation::Kind::DiagonalNotZero,
                     {terms[i]},
                     "D(" + terms[i] + "," + terms[i] + ") = " + at(i, i).str()});
  }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      if (i == j || !known(i, j)) continue;
      if (!(at(i, j) > ExtendedRational(0)))
        out.push_back({MetricViolation::Kind::NotPositive,
                       {terms[i], terms[j]},
                       "D(" + terms[i] + "," + terms[j] + ") = " + at(i, j).str()});
    }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t m = 0; m < k; ++m)
      for (std::size_t j = 0; j < k; ++j) {
        if (i == m || m == j || i == j) continue;
        if (!known(i, j) || !known(i, m) || !known(m, j)) continue;
        // Extended comparison: an infinite D(i,j) violates unless one of the
        // legs is infinite as well.
        if (at(i, j) > at(i, m) + at(m, j))
          out.push_back({MetricViolation::Kind::Triangle,
                         {terms[i], terms[m], terms[j]},
                         "D(" + terms[i] + "," + terms[j] + ") = " + at(i, j).str() + " > " +
                             at(i, m).str() + " + " + at(m, j).str()});
      }
  return out;
}

}  // namespace

std::vector<MetricViolation> validate(const QuasiMetric& d) {
  return validate_impl(
      d.terminals(), [](std::size_t, std::size_t) { return true; },
      [&](std::size_t i, std::size_t j) -> const ExtendedRational& { return d.at(i, j); });
}

std::vector<MetricViolation> validate(const PartialQuasiMetric& d) {
  return validate_impl(
      d.terminals(), [&](std::size_t i, std::size_t j) { return d.known(i, j); },
      [&](std::size_t i, std::size_t j) -> const ExtendedRational& { return d.at(i, j); });
}

MongeResult monge_check(const QuasiMetric& d, const CircularOrdering& sigma) {
  const std::size_t k = d.size();
  if (sigma.size() != k)
    throw std::invalid_argument("ordering does not cover the metric's terminals");
  // sigma positions -> metric indices, so subsets enumerate in cyclic order.
  std::vector<std::size_t> at_pos(k);
  for (std::size_t p = 0; p < k; ++p) at_pos[p] = d.index_of(sigma.sequence()[p]);

  MongeResult result;
  bool have = false;
  std::array<std::string, 4> best;
  auto consider = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t e) {
    // Alignment (a,b,c,e): D(a,c) + D(b,e) >= D(a,e) + D(b,c).
    if (d.at(a, c) + d.at(b, e) >= d.at(a, e) + d.at(b, c)) return;
    std::array<std::string, 4> q = {d.terminals()[a], d.terminals()[b], d.terminals()[c],
                                    d.terminals()[e]};
    if (!have || q < best) {
      best = q;
      have = true;
    }
  };

  for (std::size_t p1 = 0; p1 < k; ++p1)
    for (std::size_t p2 = p1 + 1; p2 < k; ++p2)
      for (std::size_t p3 = p2 + 1; p3 < k; ++p3)
        for (std::size_t p4 = p3 + 1; p4 < k; ++p4) {
          std::size_t t1 = at_pos[p1], t2 = at_pos[p2], t3 = at_pos[p3], t4 = at_pos[p4];
          consider(t1, t2, t3, t4);
          consider(t2, t3, t4, t1);
          consider(t3, t4, t1, t2);
          consider(t4, t1, t2, t3);
        }
  if (have) {
    result.pass = false;
    result.quadruple = best;
  }
  return result;
}

QuasiMetric induce(const QuasiMetric& d, const std::vector<std::string>& subset) {
  std::vector<std::string> kept;
  std::set<std::string> want(subset.begin(), subset.end());
  for (const auto& t : subset)
    if (!d.has_terminal(t)) throw std::invalid_argument("subset terminal not in metric: " + t);
  for (const auto& t : d.terminals())
    if (want.count(t)) kept.push_back(t);
  QuasiMetric out(kept);
  for (const auto& s : kept)
    for (const auto& t : kept) out.set(s, t, d.at(s, t));
  return out;
}

}  // namespace osreal
