#include "osreal/lp.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <sstream>

namespace osreal {

std::string LinearConstraint::str() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : coeffs) {
    if (!first) os << " + ";
    first = false;
    if (c != 1) os << format_rational(c) << "*";
    os << "x" << e;
  }
  if (first) os << "0";
  os << (rel == Rel::LessEq ? " <= " : " >= ") << format_rational(rhs);
  return os.str();
}

// ---------------------------------------------------------------------------
// Phase-one simplex

FeasibilityResult solve_lp_feasibility(const std::vector<LinearConstraint>& constraints,
                                       const std::vector<EdgeId>& variables) {
  const std::size_t m = constraints.size();
  const std::size_t n = variables.size();
  std::map<EdgeId, std::size_t> col_of;
  for (std::size_t j = 0; j < n; ++j) col_of[variables[j]] = j;

  // Columns: n structural | m slack/surplus | m artificial | m bookkeeping
  // (explicit inverse-basis block used to read the duals) | rhs.
  const std::size_t slack0 = n;
  const std::size_t art0 = n + m;
  const std::size_t book0 = n + 2 * m;
  const std::size_t cols = n + 3 * m + 1;
  const std::size_t rhs_col = cols - 1;

  std::vector<std::vector<Rational>> t(m, std::vector<Rational>(cols, Rational(0)));
  std::vector<bool> row_flipped(m, false);
  std::vector<bool> has_artificial(m, false);

  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = constraints[i];
    Rational sign = 1;
    Rational b = c.rhs;
    bool geq = c.rel == LinearConstraint::Rel::GreaterEq;
    if (b < 0) {
      sign = -1;
      b = -b;
      geq = !geq;
      row_flipped[i] = true;
    }
    for (const auto& [e, a] : c.coeffs) {
      auto it = col_of.find(e);
      if (it == col_of.end()) throw std::invalid_argument("constraint uses unknown variable");
      t[i][it->second] = sign * a;
    }
    t[i][rhs_col] = b;
    t[i][slack0 + i] = geq ? Rational(-1) : Rational(1);
    if (geq) {
      t[i][art0 + i] = 1;
      has_artificial[i] = true;
    }
    t[i][book0 + i] = 1;
  }

  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = has_artificial[i] ? art0 + i : slack0 + i;

  // Reduced-cost row, maintained incrementally. obj[rhs] carries minus the
  // phase-one objective.
  std::vector<Rational> obj(cols, Rational(0));
  for (std::size_t i = 0; i < m; ++i) obj[art0 + i] = 1;
  for (std::size_t i = 0; i < m; ++i)
    if (has_artificial[i])
      for (std::size_t j = 0; j < cols; ++j)
        if (t[i][j] != 0) obj[j] -= t[i][j];

  const std::size_t pivot_limit = 50000 + 200 * m * (n + m);
  std::size_t pivots = 0;
  std::vector<std::size_t> nonzero;
  nonzero.reserve(cols);
  for (;;) {
    // Bland's least-index rule; artificial columns never re-enter.
    std::size_t enter = cols;
    for (std::size_t j = 0; j < art0; ++j) {
      if (obj[j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter == cols) break;

    std::size_t leave = m;
    Rational best;
    for (std::size_t r = 0; r < m; ++r) {
      if (t[r][enter] <= 0) continue;
      Rational ratio = t[r][rhs_col] / t[r][enter];
      if (leave == m || ratio < best || (ratio == best && basis[r] < basis[leave])) {
        leave = r;
        best = ratio;
      }
    }
    if (leave == m)
      throw std::logic_error("phase-one simplex is unbounded; system is malformed");

    // Pivot on (leave, enter), touching only the pivot row's support.
    Rational piv = t[leave][enter];
    if (piv != 1)
      for (std::size_t j = 0; j < cols; ++j)
        if (t[leave][j] != 0) t[leave][j] /= piv;
    nonzero.clear();
    for (std::size_t j = 0; j < cols; ++j)
      if (t[leave][j] != 0) nonzero.push_back(j);
    for (std::size_t r = 0; r < m; ++r) {
      if (r == leave || t[r][enter] == 0) continue;
      Rational f = t[r][enter];
      for (std::size_t j : nonzero) t[r][j] -= f * t[leave][j];
    }
    if (obj[enter] != 0) {
      Rational f = obj[enter];
      for (std::size_t j : nonzero) obj[j] -= f * t[leave][j];
    }
    basis[leave] = enter;
    if (++pivots > pivot_limit) throw std::logic_error("simplex pivot budget exceeded");
  }

  Rational objective = 0;
  for (std::size_t r = 0; r < m; ++r)
    if (basis[r] >= art0 && basis[r] < art0 + m) objective += t[r][rhs_col];

  FeasibilityResult out;
  out.constraints = constraints;
  if (objective == 0) {
    out.feasible = true;
    for (std::size_t j = 0; j < n; ++j) out.weights[variables[j]] = 0;
    for (std::size_t r = 0; r < m; ++r)
      if (basis[r] < n) out.weights[variables[basis[r]]] = t[r][rhs_col];
    return out;
  }

  // Dual vector from the bookkeeping block: y_i = sum_r cost(basis_r) *
  // Binv[r][i]. For <=-rows lambda = -y, for >=-rows mu = +y, both
  // nonnegative at optimality; a flipped row flips once more.
  FarkasCertificate cert;
  cert.multipliers.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    // The bookkeeping block carries the inverse basis, so its reduced costs
    // are exactly -y.
    Rational y = -obj[book0 + i];
    bool geq = constraints[i].rel == LinearConstraint::Rel::GreaterEq;
    Rational mult = geq ? y : -y;
    if (row_flipped[i]) mult = -mult;
    if (mult < 0) {
      // Numerical impossibility under exact arithmetic; guards a solver bug.
      throw std::logic_error("negative Farkas multiplier");
    }
    cert.multipliers[i] = mult;
  }
  out.feasible = false;
  out.farkas = std::move(cert);
  return out;
}

bool verify_feasible_point(const std::vector<LinearConstraint>& constraints,
                           const std::map<EdgeId, Rational>& weights) {
  for (const auto& [e, w] : weights)
    if (w < 0) return false;
  for (const auto& c : constraints) {
    Rational lhs = 0;
    for (const auto& [e, a] : c.coeffs) {
      auto it = weights.find(e);
      if (it != weights.end()) lhs += a * it->second;
    }
    if (c.rel == LinearConstraint::Rel::LessEq ? lhs > c.rhs : lhs < c.rhs) return false;
  }
  return true;
}

bool verify_farkas(const std::vector<LinearConstraint>& constraints,
                   const FarkasCertificate& certificate) {
  if (certificate.multipliers.size() != constraints.size()) return false;
  std::map<EdgeId, Rational> combined;
  Rational delta = 0;
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    const Rational& m = certificate.multipliers[i];
    if (m < 0) return false;
    if (m == 0) continue;
    const auto& c = constraints[i];
    Rational sign = c.rel == LinearConstraint::Rel::LessEq ? Rational(1) : Rational(-1);
    for (const auto& [e, a] : c.coeffs) combined[e] += sign * m * a;
    delta += sign * m * c.rhs;
  }
  for (const auto& [e, v] : combined)
    if (v < 0) return false;
  // 0 <= combined.x <= delta < 0 is the contradiction for x >= 0.
  return delta < 0;
}

// ---------------------------------------------------------------------------
// Exact shortest paths

ShortestPathResult shortest_path(const PlanarNest& nest,
                                 const std::map<EdgeId, Rational>& weights,
                                 const std::string& s, const std::string& t) {
  const VertexId vs = nest.terminal_vertex(s);
  const VertexId vt = nest.terminal_vertex(t);

  std::map<VertexId, std::vector<EdgeId>> adj;
  for (EdgeId e : nest.graph_edges()) {
    auto it = weights.find(e);
    if (it == weights.end()) throw std::invalid_argument("missing weight for edge");
    if (it->second < 0) throw std::invalid_argument("negative edge weight");
    adj[nest.edge(e).from].push_back(e);
  }
  for (auto& [v, es] : adj) std::sort(es.begin(), es.end());

  struct Label {
    Rational dist;
    std::vector<EdgeId> seq;
    VertexId vertex;
    bool operator>(const Label& o) const {
      if (dist != o.dist) return dist > o.dist;
      if (seq != o.seq) return seq > o.seq;
      return vertex > o.vertex;
    }
  };
  std::priority_queue<Label, std::vector<Label>, std::greater<Label>> heap;
  std::set<VertexId> settled;
  heap.push({Rational(0), {}, vs});
  while (!heap.empty()) {
    Label cur = heap.top();
    heap.pop();
    if (settled.count(cur.vertex)) continue;
    settled.insert(cur.vertex);
    if (cur.vertex == vt) return {ExtendedRational(cur.dist), cur.seq};
    auto it = adj.find(cur.vertex);
    if (it == adj.end()) continue;
    for (EdgeId e : it->second) {
      VertexId to = nest.edge(e).to;
      if (settled.count(to)) continue;
      Label nxt = cur;
      nxt.dist += weights.at(e);
      nxt.seq.push_back(e);
      nxt.vertex = to;
      heap.push(std::move(nxt));
    }
  }
  return {ExtendedRational::infinity(), std::nullopt};
}

// ---------------------------------------------------------------------------
// The separation loop

namespace {

std::optional<std::vector<EdgeId>> reachable_walk(const PlanarNest& nest, VertexId from,
                                                  VertexId to) {
  std::map<VertexId, EdgeId> parent;
  std::queue<VertexId> q;
  std::set<VertexId> seen = {from};
  q.push(from);
  while (!q.empty()) {
    VertexId v = q.front();
    q.pop();
    if (v == to) {
      std::vector<EdgeId> walk;
      VertexId cur = to;
      while (cur != from) {
        EdgeId e = parent.at(cur);
        walk.push_back(e);
        cur = nest.edge(e).from;
      }
      std::reverse(walk.begin(), walk.end());
      return walk;
    }
    for (EdgeId e : nest.graph_edges()) {
      if (nest.edge(e).from != v) continue;
      VertexId w = nest.edge(e).to;
      if (seen.insert(w).second) {
        parent[w] = e;
        q.push(w);
      }
    }
  }
  return std::nullopt;
}

LinearConstraint path_constraint(LinearConstraint::Kind kind, const std::string& src,
                                 const std::string& dst, const std::vector<EdgeId>& edges,
                                 const Rational& rhs) {
  LinearConstraint c;
  c.kind = kind;
  c.rel = kind == LinearConstraint::Kind::PathUpper ? LinearConstraint::Rel::LessEq
                                                    : LinearConstraint::Rel::GreaterEq;
  c.src = src;
  c.dst = dst;
  c.path_edges = edges;
  c.rhs = rhs;
  for (EdgeId e : edges) c.coeffs[e] += 1;
  return c;
}

}  // namespace

FeasibilityResult check_weights(const PlanarNest& nest, const PartialQuasiMetric& dpart,
                                const std::vector<LowerCut>* remembered_cuts) {
  const auto& terms = dpart.terminals();
  const std::size_t k = terms.size();

  // Known-infinite pairs are a pure reachability prohibition.
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      if (i == j || !dpart.known(i, j) || dpart.at(i, j).is_finite()) continue;
      auto walk = reachable_walk(nest, nest.terminal_vertex(terms[i]),
                                 nest.terminal_vertex(terms[j]));
      if (walk) {
        FeasibilityResult out;
        out.feasible = false;
        out.infinity = InfinityWitness{terms[i], terms[j], *walk};
        return out;
      }
    }

  // Known finite pairs with a registered path are pinned to equality (the
  // designated path has length exactly D and is shortest). Known finite
  // pairs without one still lower-bound every directed path between them;
  // those are exactly the cuts that reject a drawing admitting a cheaper
  // routing of a more expensive demand.
  struct Seen {
    std::string src, dst;
    Rational value;
    std::vector<EdgeId> path;  // empty when the pair has no registered path
  };
  std::vector<Seen> seen;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      if (i == j || !dpart.known(i, j) || dpart.at(i, j).is_infinite()) continue;
      auto pid = nest.path_for(terms[i], terms[j]);
      std::vector<EdgeId> path;
      if (pid) path = nest.path(*pid).edges;
      seen.push_back({terms[i], terms[j], dpart.at(i, j).finite(), std::move(path)});
    }

  std::vector<LinearConstraint> constraints;
  std::set<std::pair<std::pair<std::string, std::string>, std::vector<EdgeId>>> lower_keys;
  for (const auto& s : seen) {
    if (s.path.empty()) continue;
    constraints.push_back(
        path_constraint(LinearConstraint::Kind::PathUpper, s.src, s.dst, s.path, s.value));
    constraints.push_back(
        path_constraint(LinearConstraint::Kind::PathLower, s.src, s.dst, s.path, s.value));
    auto key = s.path;
    std::sort(key.begin(), key.end());
    lower_keys.insert({{s.src, s.dst}, key});
  }

  if (remembered_cuts) {
    for (const auto& cut : *remembered_cuts) {
      std::size_t si = dpart.index_of(cut.src), di = dpart.index_of(cut.dst);
      if (!dpart.known(si, di) || dpart.at(si, di).is_infinite()) continue;
      auto key = cut.edges;
      std::sort(key.begin(), key.end());
      if (!lower_keys.insert({{cut.src, cut.dst}, key}).second) continue;
      constraints.push_back(path_constraint(LinearConstraint::Kind::PathLower, cut.src, cut.dst,
                                            cut.edges, dpart.at(si, di).finite()));
    }
  }

  const std::vector<EdgeId> variables = nest.graph_edges();
  const std::size_t cap = 4 * std::max<std::size_t>(1, variables.size()) *
                          std::max<std::size_t>(1, seen.size());
  for (std::size_t round = 0; round <= cap; ++round) {
    FeasibilityResult r = solve_lp_feasibility(constraints, variables);
    if (!r.feasible) return r;

    bool cut = false;
    for (const auto& s : seen) {
      auto sp = shortest_path(nest, r.weights, s.src, s.dst);
      if (sp.distance >= ExtendedRational(s.value)) continue;
      auto key = *sp.path;
      std::sort(key.begin(), key.end());
      if (!lower_keys.insert({{s.src, s.dst}, key}).second)
        throw std::logic_error("separation produced a duplicate cut");
      constraints.push_back(
          path_constraint(LinearConstraint::Kind::PathLower, s.src, s.dst, *sp.path, s.value));
      cut = true;
    }
    if (!cut) return r;
  }
  throw SeparationLimit("cutting-plane iteration budget exceeded", constraints);
}

// ---------------------------------------------------------------------------
// Flow decomposition of Farkas certificates

std::map<EdgeId, Rational> TerminalFlow::edge_load() const {
  std::map<EdgeId, Rational> load;
  for (const auto& p : paths)
    for (EdgeId e : p.edges) load[e] += p.value;
  return load;
}

std::map<std::pair<std::string, std::string>, Rational> TerminalFlow::pair_totals() const {
  std::map<std::pair<std::string, std::string>, Rational> totals;
  for (const auto& p : paths) totals[{p.src, p.dst}] += p.value;
  return totals;
}

std::optional<FlowPair> farkas_to_flows(const PlanarNest& nest, const FeasibilityResult& result) {
  if (result.feasible || !result.farkas)
    throw std::invalid_argument("farkas_to_flows needs an infeasible LP result");
  const auto& mult = result.farkas->multipliers;

  // Common denominator; integral flows by scaling.
  Int lcm = 1;
  for (const auto& m : mult) {
    Int den = denominator(m);
    lcm = lcm / gcd(lcm, den) * den;
    if (msb(lcm) > 512) return std::nullopt;  // configured integrality bound
  }

  FlowPair fp;
  fp.cost_f = 0;
  fp.cost_fprime = 0;
  for (std::size_t i = 0; i < mult.size(); ++i) {
    if (mult[i] == 0) continue;
    const auto& c = result.constraints[i];
    Rational value = mult[i] * Rational(lcm);
    if (c.kind == LinearConstraint::Kind::PathUpper) {
      fp.f.paths.push_back({c.src, c.dst, c.path_edges, value});
      fp.cost_f += value * c.rhs;
    } else if (c.kind == LinearConstraint::Kind::PathLower) {
      fp.fprime.paths.push_back({c.src, c.dst, c.path_edges, value});
      fp.cost_fprime += value * c.rhs;
    } else {
      throw std::invalid_argument("certificate carries a non-path constraint");
    }
  }

  // The three asserted properties: support, domination, strict cost gap.
  for (const auto& p : fp.f.paths) {
    auto pid = nest.path_for(p.src, p.dst);
    if (!pid || nest.path(*pid).edges != p.edges)
      throw std::logic_error("F is not supported on designated paths");
  }
  auto load_f = fp.f.edge_load();
  for (const auto& [e, v] : fp.fprime.edge_load()) {
    auto it = load_f.find(e);
    Rational have = it == load_f.end() ? Rational(0) : it->second;
    if (have < v) throw std::logic_error("F does not dominate F'");
  }
  if (!(fp.cost_f < fp.cost_fprime)) throw std::logic_error("flow cost gap missing");
  return fp;
}

}  // namespace osreal
