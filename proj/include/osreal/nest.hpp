#pragma once

#include "osreal/metric.hpp"

#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace osreal {

using VertexId = int;
using EdgeId = int;
using PathId = int;
/// Face ids are canonical: the least dart id on the face walk.
using FaceId = int;
/// A dart is one end of an edge: 2*edge for the tail (from) end, 2*edge+1
/// for the head (to) end.
using Dart = int;

inline Dart tail_dart(EdgeId e) { return 2 * e; }
inline Dart head_dart(EdgeId e) { return 2 * e + 1; }
inline Dart twin(Dart d) { return d ^ 1; }
inline EdgeId dart_edge(Dart d) { return d / 2; }

struct NestVertex {
  VertexId id = -1;
  bool is_terminal = false;
  std::string name;  // terminal name when is_terminal
};

struct NestEdge {
  EdgeId id = -1;
  VertexId from = -1, to = -1;
  bool boundary = false;  // boundary arc of the disc, not a graph edge
  PathId path = -1;       // owning path when !boundary
  int index = -1;         // position along the owning path
};

struct NestPath {
  PathId id = -1;
  std::string src, dst;
  std::vector<EdgeId> edges;  // directed walk src -> dst
};

struct Face {
  FaceId id = -1;
  std::vector<Dart> walk;  // starts at the least dart
};

struct TrajectoryStep {
  FaceId face = -1;           // face the curve occupies before the crossing
  EdgeId edge = -1;           // crossed edge
  bool left_to_right = true;  // relative to the crossed edge's direction
};

/// Drawing description of one inserted curve: the face sequence from the
/// source terminal's carved disc to the target's, with the crossed edge and
/// forced orientation between consecutive faces.
struct Trajectory {
  std::vector<TrajectoryStep> steps;
  FaceId final_face = -1;  // face after the last crossing (the only face
                           // when steps is empty)
  std::size_t crossings() const { return steps.size(); }
  std::vector<FaceId> face_sequence() const {
    std::vector<FaceId> fs;
    for (const auto& s : steps) fs.push_back(s.face);
    fs.push_back(final_face);
    return fs;
  }
};

struct DualEdge {
  EdgeId edge;  // interior path edge
  FaceId left, right;
};

class TrajectoryStream;

/// Combinatorial planar map of a nest: terminal anchors on a boundary
/// cycle in sigma order, inserted directed terminal-to-terminal paths,
/// degree-4 crossing vertices, and a rotation system from which faces are
/// derived. Ids are assigned in creation order; undo restores them exactly.
class PlanarNest {
 public:
  PlanarNest() = default;
  static PlanarNest empty_nest(const std::vector<std::string>& terminals,
                               const CircularOrdering& sigma);

  const CircularOrdering& sigma() const { return sigma_; }
  const std::vector<std::string>& terminals() const { return terminals_; }
  VertexId terminal_vertex(const std::string& name) const;

  bool vertex_alive(VertexId v) const { return vertex_alive_[v]; }
  bool edge_alive(EdgeId e) const { return edge_alive_[e]; }
  const NestVertex& vertex(VertexId v) const { return vertices_[v]; }
  const NestEdge& edge(EdgeId e) const { return edges_[e]; }
  const NestPath& path(PathId p) const { return paths_.at(p); }
  bool has_path(PathId p) const { return p >= 0 && p < (int)paths_.size(); }

  std::vector<VertexId> live_vertices() const;
  /// Live edges including boundary arcs.
  std::vector<EdgeId> live_edges() const;
  /// Directed graph edges (the union of the registered paths).
  std::vector<EdgeId> graph_edges() const;
  std::vector<PathId> path_ids() const;
  /// The registered path for an ordered terminal pair, if any.
  std::optional<PathId> path_for(const std::string& src, const std::string& dst) const;
  const std::vector<EdgeId>& boundary_arcs() const { return boundary_arcs_; }

  VertexId dart_vertex(Dart d) const;
  const std::vector<Dart>& rotation(VertexId v) const { return rotation_[v]; }

  /// Faces derived from the rotation system, sorted by id; recomputed after
  /// each mutation.
  const std::vector<Face>& faces() const;
  FaceId face_of(Dart d) const;
  FaceId outer_face() const;
  FaceId left_face(EdgeId e) const { return face_of(head_dart(e)); }
  FaceId right_face(EdgeId e) const { return face_of(tail_dart(e)); }
  /// Faces with a corner at v, in rotation scan order, deduplicated.
  std::vector<FaceId> faces_at(VertexId v) const;
  /// Face adjacency across interior path edges.
  std::vector<DualEdge> dual_graph() const;

  /// Threads a new directed path src->dst through the crossings described
  /// by the trajectory. Every crossed edge is split at a fresh degree-4
  /// vertex. Throws std::invalid_argument on malformed trajectories and
  /// leaves the nest unchanged; the Euler check rejects face sequences not
  /// realizable by a simple curve.
  PathId insert_path(const std::string& src, const std::string& dst, const Trajectory& traj);

  /// Exact inverse of the most recent insert_path (ids included).
  void undo_last_insert();
  bool can_undo() const { return !journal_.empty(); }

  struct SplitInfo {
    EdgeId old_edge, e1, e2;
  };
  /// The edge splits performed by the most recent insert_path, in order.
  std::vector<SplitInfo> last_insert_splits() const;

  /// Structural invariant audit: rotation/dart consistency, crossing-vertex
  /// alternation, registry walks, edge-disjointness, Euler relation, outer
  /// face integrity, boundary order. Empty result = sound.
  std::vector<std::string> structural_problems() const;

  std::size_t vertex_count() const;
  std::size_t edge_count() const;  // includes boundary arcs

 private:
  friend class TrajectoryStream;

  CircularOrdering sigma_;
  std::vector<std::string> terminals_;
  std::map<std::string, VertexId> terminal_vertex_;
  std::vector<NestVertex> vertices_;
  std::vector<char> vertex_alive_;
  std::vector<NestEdge> edges_;
  std::vector<char> edge_alive_;
  std::vector<std::vector<Dart>> rotation_;
  std::vector<NestPath> paths_;
  std::vector<EdgeId> boundary_arcs_;

  struct SplitRecord {
    EdgeId old_edge;
    EdgeId e1, e2;
    VertexId x;
  };
  struct InsertRecord {
    PathId path;
    std::vector<SplitRecord> splits;
  };
  std::vector<InsertRecord> journal_;

  mutable bool faces_dirty_ = true;
  mutable std::vector<Face> faces_cache_;
  mutable std::map<Dart, FaceId> face_of_cache_;

  VertexId new_vertex(bool is_terminal, std::string name);
  EdgeId new_edge(VertexId from, VertexId to, bool boundary, PathId path, int index);
  void reindex_path(PathId p);
  void invalidate_faces() { faces_dirty_ = true; }
  void compute_faces() const;
  void check_rotation_member(VertexId v, Dart d) const;
};

/// Lazy ordered stream of trajectories between two carved terminal discs:
/// breadth-first over the dual graph, so step counts are nondecreasing.
/// With max_face_revisits = 0 exactly the simple dual paths are emitted; a
/// level of r allows each face to be visited r+1 times. Trajectories that
/// would cross one edge twice are skipped (their drawing is ambiguous).
class TrajectoryStream {
 public:
  TrajectoryStream(const PlanarNest& nest, const std::string& src, const std::string& dst,
                   int max_face_revisits);

  /// Next trajectory, or nullopt when the space is exhausted.
  std::optional<Trajectory> next();

 private:
  struct State {
    std::vector<FaceId> faces;
    std::vector<TrajectoryStep> steps;
  };

  const PlanarNest& nest_;
  int max_revisits_;
  FaceId outer_;
  std::vector<FaceId> dst_faces_;
  std::map<FaceId, std::vector<std::pair<EdgeId, FaceId>>> adjacency_;
  std::deque<State> queue_;
  std::deque<Trajectory> ready_;
};

}  // namespace osreal
