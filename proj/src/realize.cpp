#include "osreal/realize.hpp"

#include <algorithm>
#include <sstream>

namespace osreal {

VerifyResult verify(const WeightedInstance& instance, const QuasiMetric& d) {
  VerifyResult out;
  auto flag = [&](Discrepancy::Kind kind, const std::string& s, const std::string& t,
                  std::string detail) {
    out.pass = false;
    out.discrepancies.push_back({kind, s, t, std::move(detail)});
  };

  for (EdgeId e : instance.nest.graph_edges()) {
    auto it = instance.weights.find(e);
    if (it == instance.weights.end())
      flag(Discrepancy::Kind::Weight, "", "", "edge " + std::to_string(e) + " has no weight");
    else if (it->second < 0)
      flag(Discrepancy::Kind::Weight, "", "", "edge " + std::to_string(e) + " is negative");
  }
  if (!out.pass) return out;

  if (!(instance.nest.sigma() == instance.sigma))
    flag(Discrepancy::Kind::Boundary, "", "", "boundary cycle disagrees with sigma");

  const auto& terms = d.terminals();
  for (const auto& s : terms)
    for (const auto& t : terms) {
      if (s == t) continue;
      auto sp = shortest_path(instance.nest, instance.weights, s, t);
      if (!(sp.distance == d.at(s, t)))
        flag(Discrepancy::Kind::Distance, s, t,
             "dist = " + sp.distance.str() + ", expected " + d.at(s, t).str());
    }

  for (PathId p : instance.nest.path_ids()) {
    const auto& path = instance.nest.path(p);
    Rational len = 0;
    for (EdgeId e : path.edges) len += instance.weights.at(e);
    const auto& expect = d.at(path.src, path.dst);
    if (expect.is_infinite() || !(len == expect.finite()))
      flag(Discrepancy::Kind::PathLength, path.src, path.dst,
           "designated path length " + format_rational(len) + ", expected " + expect.str());
  }
  return out;
}

namespace {

struct StreamPair {
  std::string src, dst;
  Rational value;
};

std::vector<StreamPair> finite_pairs_in_order(const QuasiMetric& d, StreamOrder order) {
  std::vector<StreamPair> pairs;
  for (const auto& s : d.terminals())
    for (const auto& t : d.terminals()) {
      if (s == t || d.at(s, t).is_infinite()) continue;
      pairs.push_back({s, t, d.at(s, t).finite()});
    }
  auto lex = [](const StreamPair& x, const StreamPair& y) {
    return std::tie(x.src, x.dst) < std::tie(y.src, y.dst);
  };
  switch (order) {
    case StreamOrder::Lexicographic:
      std::sort(pairs.begin(), pairs.end(), lex);
      break;
    case StreamOrder::DecreasingDistance:
      std::sort(pairs.begin(), pairs.end(), [&](const StreamPair& x, const StreamPair& y) {
        if (x.value != y.value) return x.value > y.value;
        return lex(x, y);
      });
      break;
    case StreamOrder::IncreasingDistance:
      std::sort(pairs.begin(), pairs.end(), [&](const StreamPair& x, const StreamPair& y) {
        if (x.value != y.value) return x.value < y.value;
        return lex(x, y);
      });
      break;
  }
  return pairs;
}

int max_face_visits(const Trajectory& t) {
  std::map<FaceId, int> count;
  int best = 0;
  for (FaceId f : t.face_sequence()) best = std::max(best, ++count[f]);
  return best;
}

// Direct witness check: do these weights realize the knowledge table on
// this nest (registered pairs pinned exactly, pathless known pairs lower
// bounded, infinite pairs unreachable)?
bool weights_witness(const PlanarNest& nest, const PartialQuasiMetric& know,
                     const std::map<EdgeId, Rational>& w) {
  const auto& terms = know.terminals();
  for (std::size_t i = 0; i < terms.size(); ++i)
    for (std::size_t j = 0; j < terms.size(); ++j) {
      if (i == j || !know.known(i, j)) continue;
      const auto& val = know.at(i, j);
      auto sp = shortest_path(nest, w, terms[i], terms[j]);
      if (val.is_infinite()) {
        if (!sp.distance.is_infinite()) return false;
        continue;
      }
      auto pid = nest.path_for(terms[i], terms[j]);
      if (pid) {
        if (!(sp.distance == val)) return false;
        Rational len = 0;
        for (EdgeId e : nest.path(*pid).edges) len += w.at(e);
        if (!(len == val.finite())) return false;
      } else if (sp.distance < val) {
        return false;
      }
    }
  return true;
}

}  // namespace

WeightedInstance realize(const QuasiMetric& d, const CircularOrdering& sigma,
                         const RealizeOptions& options) {
  auto monge = monge_check(d, sigma);
  if (!monge.pass)
    throw MongeViolated("metric is not Monge for the given ordering", monge.quadruple);

  PlanarNest nest = PlanarNest::empty_nest(d.terminals(), sigma);
  // The whole metric is known upfront: uninserted pairs already lower-bound
  // every route between them, and infinite pairs forbid connectivity. This
  // is what keeps early commitments consistent with later pairs under any
  // stream order.
  const PartialQuasiMetric knowledge(d);

  std::map<EdgeId, Rational> weights;
  // Fixpoint cuts from committed probes seed the next ones; edge splits of
  // each commit are folded into the pool so every cut stays a live path.
  std::vector<LowerCut> cut_pool;
  auto absorb = [&cut_pool](const FeasibilityResult& r) {
    for (const auto& c : r.constraints)
      if (c.kind == LinearConstraint::Kind::PathLower)
        cut_pool.push_back({c.src, c.dst, c.path_edges});
  };
  auto remap_pool = [&cut_pool](const std::vector<PlanarNest::SplitInfo>& splits) {
    for (const auto& sp : splits)
      for (auto& cut : cut_pool) {
        std::vector<EdgeId> mapped;
        mapped.reserve(cut.edges.size() + 1);
        for (EdgeId e : cut.edges) {
          if (e == sp.old_edge) {
            mapped.push_back(sp.e1);
            mapped.push_back(sp.e2);
          } else {
            mapped.push_back(e);
          }
        }
        cut.edges = std::move(mapped);
      }
  };

  for (const auto& pair : finite_pairs_in_order(d, options.order)) {
    bool committed = false;
    for (int level = 0; level <= options.max_face_revisits && !committed; ++level) {
      TrajectoryStream stream(nest, pair.src, pair.dst, level);
      int tried = 0;
      while (tried < options.max_trajectories_per_level) {
        auto traj = stream.next();
        if (!traj) break;
        if (level > 0 && max_face_visits(*traj) <= level) continue;  // seen at level-1
        ++tried;
        try {
          nest.insert_path(pair.src, pair.dst, *traj);
        } catch (const std::invalid_argument&) {
          continue;  // not drawable as a simple curve
        }
        auto splits = nest.last_insert_splits();
        remap_pool(splits);
        auto r = check_weights(nest, knowledge, &cut_pool);
        if (r.feasible) {
          weights = std::move(r.weights);
          absorb(r);
          committed = true;
          break;
        }
        // Roll the pool's split substitutions back alongside the insertion.
        nest.undo_last_insert();
        for (auto it = splits.rbegin(); it != splits.rend(); ++it) {
          for (auto& cut : cut_pool) {
            std::vector<EdgeId> mapped;
            for (std::size_t i = 0; i < cut.edges.size(); ++i) {
              if (cut.edges[i] == it->e1 && i + 1 < cut.edges.size() &&
                  cut.edges[i + 1] == it->e2) {
                mapped.push_back(it->old_edge);
                ++i;
              } else {
                mapped.push_back(cut.edges[i]);
              }
            }
            cut.edges = std::move(mapped);
          }
        }
      }
    }
    if (!committed) {
      std::ostringstream os;
      os << "no feasible insertion found for " << pair.src << "->" << pair.dst
         << " within the revisit ladder (levels 0.." << options.max_face_revisits << ")";
      throw SearchExhausted(os.str(), pair.src, pair.dst, options.max_face_revisits);
    }
  }

  // Degenerate all-infinite metric: no insertions happened; still honor the
  // reachability prohibitions.
  if (nest.path_ids().empty()) {
    auto r = check_weights(nest, knowledge);
    if (!r.feasible) throw std::logic_error("empty nest fails its infinite-pair check");
    weights = std::move(r.weights);
  }

  WeightedInstance instance;
  instance.nest = std::move(nest);
  instance.weights = std::move(weights);
  instance.sigma = sigma;
  instance.realized_metric = d;
  auto check = verify(instance, d);
  if (!check.pass) {
    std::ostringstream os;
    os << "realized instance failed verification:";
    for (const auto& disc : check.discrepancies) os << " [" << disc.detail << "]";
    throw std::logic_error(os.str());
  }
  return instance;
}

RealizeAutoResult realize_auto(const QuasiMetric& d, const RealizeOptions& options) {
  RealizeAutoResult out;
  auto found = find_ordering(d);
  if (!found.found) {
    out.realizable = false;
    out.witness = found.witness;
    return out;
  }
  out.realizable = true;
  out.instance = realize(d, found.ordering, options);
  return out;
}

}  // namespace osreal
