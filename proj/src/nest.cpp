#include "osreal/nest.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace osreal {

// ---------------------------------------------------------------------------
// Construction

PlanarNest PlanarNest::empty_nest(const std::vector<std::string>& terminals,
                                  const CircularOrdering& sigma) {
  if (terminals.size() < 2) throw std::invalid_argument("a nest needs at least two terminals");
  for (const auto& t : terminals)
    if (!sigma.contains(t)) throw std::invalid_argument("ordering does not cover terminal " + t);
  if (sigma.size() != terminals.size())
    throw std::invalid_argument("ordering and terminal set differ");

  PlanarNest nest;
  nest.sigma_ = sigma;
  nest.terminals_ = sigma.sequence();
  const std::size_t k = nest.terminals_.size();
  for (const auto& t : nest.terminals_) {
    VertexId v = nest.new_vertex(true, t);
    nest.terminal_vertex_[t] = v;
  }
  for (std::size_t i = 0; i < k; ++i) {
    EdgeId a = nest.new_edge(static_cast<VertexId>(i), static_cast<VertexId>((i + 1) % k), true,
                             -1, -1);
    nest.boundary_arcs_.push_back(a);
  }
  // Rotation at terminal i: [arc to next, arc from previous, interior...].
  // The walk over head darts of arcs is then the outer face, and it stays
  // the outer face because interior darts only land after position 1.
  for (std::size_t i = 0; i < k; ++i) {
    EdgeId out = nest.boundary_arcs_[i];
    EdgeId in = nest.boundary_arcs_[(i + k - 1) % k];
    nest.rotation_[i] = {tail_dart(out), head_dart(in)};
  }
  nest.invalidate_faces();
  return nest;
}

VertexId PlanarNest::new_vertex(bool is_terminal, std::string name) {
  NestVertex v;
  v.id = static_cast<VertexId>(vertices_.size());
  v.is_terminal = is_terminal;
  v.name = std::move(name);
  vertices_.push_back(v);
  vertex_alive_.push_back(1);
  rotation_.emplace_back();
  return v.id;
}

EdgeId PlanarNest::new_edge(VertexId from, VertexId to, bool boundary, PathId path, int index) {
  NestEdge e;
  e.id = static_cast<EdgeId>(edges_.size());
  e.from = from;
  e.to = to;
  e.boundary = boundary;
  e.path = path;
  e.index = index;
  edges_.push_back(e);
  edge_alive_.push_back(1);
  return e.id;
}

VertexId PlanarNest::terminal_vertex(const std::string& name) const {
  auto it = terminal_vertex_.find(name);
  if (it == terminal_vertex_.end()) throw std::invalid_argument("unknown terminal: " + name);
  return it->second;
}

VertexId PlanarNest::dart_vertex(Dart d) const {
  const NestEdge& e = edges_[dart_edge(d)];
  return (d & 1) ? e.to : e.from;
}

std::vector<VertexId> PlanarNest::live_vertices() const {
  std::vector<VertexId> out;
  for (std::size_t v = 0; v < vertices_.size(); ++v)
    if (vertex_alive_[v]) out.push_back(static_cast<VertexId>(v));
  return out;
}

std::vector<EdgeId> PlanarNest::live_edges() const {
  std::vector<EdgeId> out;
  for (std::size_t e = 0; e < edges_.size(); ++e)
    if (edge_alive_[e]) out.push_back(static_cast<EdgeId>(e));
  return out;
}

std::vector<EdgeId> PlanarNest::graph_edges() const {
  std::vector<EdgeId> out;
  for (EdgeId e : live_edges())
    if (!edges_[e].boundary) out.push_back(e);
  return out;
}

std::vector<PathId> PlanarNest::path_ids() const {
  std::vector<PathId> out;
  for (std::size_t p = 0; p < paths_.size(); ++p) out.push_back(static_cast<PathId>(p));
  return out;
}

std::optional<PathId> PlanarNest::path_for(const std::string& src, const std::string& dst) const {
  for (const auto& p : paths_)
    if (p.src == src && p.dst == dst) return p.id;
  return std::nullopt;
}

std::size_t PlanarNest::vertex_count() const {
  std::size_t n = 0;
  for (char a : vertex_alive_) n += a != 0;
  return n;
}

std::size_t PlanarNest::edge_count() const {
  std::size_t n = 0;
  for (char a : edge_alive_) n += a != 0;
  return n;
}

// ---------------------------------------------------------------------------
// Faces

void PlanarNest::compute_faces() const {
  faces_cache_.clear();
  face_of_cache_.clear();
  std::set<Dart> pending;
  for (std::size_t e = 0; e < edges_.size(); ++e)
    if (edge_alive_[e]) {
      pending.insert(tail_dart(static_cast<EdgeId>(e)));
      pending.insert(head_dart(static_cast<EdgeId>(e)));
    }
  // Successor of d: the dart after twin(d) in the rotation at d's head.
  auto successor = [&](Dart d) -> Dart {
    Dart t = twin(d);
    VertexId v = dart_vertex(t);
    const auto& rot = rotation_[v];
    auto it = std::find(rot.begin(), rot.end(), t);
    if (it == rot.end()) throw std::logic_error("rotation system is corrupt");
    ++it;
    return it == rot.end() ? rot.front() : *it;
  };
  while (!pending.empty()) {
    Dart start = *pending.begin();
    std::vector<Dart> walk;
    Dart d = start;
    do {
      walk.push_back(d);
      pending.erase(d);
      d = successor(d);
    } while (d != start);
    auto least = std::min_element(walk.begin(), walk.end());
    std::rotate(walk.begin(), least, walk.end());
    Face f;
    f.id = walk.front();
    f.walk = std::move(walk);
    faces_cache_.push_back(std::move(f));
  }
  std::sort(faces_cache_.begin(), faces_cache_.end(),
            [](const Face& a, const Face& b) { return a.id < b.id; });
  for (const auto& f : faces_cache_)
    for (Dart d : f.walk) face_of_cache_[d] = f.id;
  faces_dirty_ = false;
}

const std::vector<Face>& PlanarNest::faces() const {
  if (faces_dirty_) compute_faces();
  return faces_cache_;
}

FaceId PlanarNest::face_of(Dart d) const {
  if (faces_dirty_) compute_faces();
  auto it = face_of_cache_.find(d);
  if (it == face_of_cache_.end()) throw std::invalid_argument("dart is not alive");
  return it->second;
}

FaceId PlanarNest::outer_face() const {
  // Pinned: the face holding the head dart of the first boundary arc.
  return face_of(head_dart(boundary_arcs_.front()));
}

std::vector<FaceId> PlanarNest::faces_at(VertexId v) const {
  std::vector<FaceId> out;
  for (Dart d : rotation_[v]) {
    FaceId f = face_of(d);
    if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
  }
  return out;
}

std::vector<DualEdge> PlanarNest::dual_graph() const {
  std::vector<DualEdge> out;
  for (EdgeId e : graph_edges()) out.push_back({e, left_face(e), right_face(e)});
  return out;
}

// ---------------------------------------------------------------------------
// Insertion

void PlanarNest::check_rotation_member(VertexId v, Dart d) const {
  const auto& rot = rotation_[v];
  if (std::find(rot.begin(), rot.end(), d) == rot.end())
    throw std::logic_error("dart missing from rotation");
}

PathId PlanarNest::insert_path(const std::string& src, const std::string& dst,
                               const Trajectory& traj) {
  if (src == dst) throw std::invalid_argument("path endpoints must differ");
  const VertexId vs = terminal_vertex(src);
  const VertexId vd = terminal_vertex(dst);

  // --- validation against the pre-insertion map ---
  const auto face_seq = traj.face_sequence();
  {
    if (faces_dirty_) compute_faces();
    std::set<EdgeId> crossed;
    for (std::size_t i = 0; i < traj.steps.size(); ++i) {
      const auto& st = traj.steps[i];
      if (st.edge < 0 || st.edge >= (EdgeId)edges_.size() || !edge_alive_[st.edge])
        throw std::invalid_argument("trajectory crosses a dead edge");
      if (edges_[st.edge].boundary)
        throw std::invalid_argument("trajectory crosses the boundary cycle");
      if (!crossed.insert(st.edge).second)
        throw std::invalid_argument("trajectory crosses an edge twice");
      FaceId lf = left_face(st.edge), rf = right_face(st.edge);
      FaceId from = face_seq[i], to = face_seq[i + 1];
      if (!((from == lf && to == rf) || (from == rf && to == lf)))
        throw std::invalid_argument("consecutive trajectory faces are not separated by the edge");
      bool forced = from == lf;
      if (st.left_to_right != forced)
        throw std::invalid_argument("crossing orientation contradicts the face sequence");
    }
    auto starts = faces_at(vs);
    if (std::find(starts.begin(), starts.end(), face_seq.front()) == starts.end())
      throw std::invalid_argument("trajectory does not start at the source disc");
    auto ends = faces_at(vd);
    if (std::find(ends.begin(), ends.end(), face_seq.back()) == ends.end())
      throw std::invalid_argument("trajectory does not end at the target disc");
  }

  // Record the terminal corners before any mutation: position p means the
  // new dart goes between rotation[p] and rotation[p+1]. Positions survive
  // the in-place dart swaps done by edge splits.
  auto corner_position = [&](VertexId v, FaceId f) -> std::size_t {
    const auto& rot = rotation_[v];
    for (std::size_t p = 0; p < rot.size(); ++p) {
      Dart d2 = rot[(p + 1) % rot.size()];
      if (face_of(d2) == f) return p;
    }
    throw std::invalid_argument("face has no corner at the terminal");
  };
  const std::size_t src_pos = corner_position(vs, face_seq.front());
  const std::size_t dst_pos = corner_position(vd, face_seq.back());

  // --- mutation ---
  InsertRecord record;
  record.path = static_cast<PathId>(paths_.size());
  NestPath np;
  np.id = record.path;
  np.src = src;
  np.dst = dst;
  paths_.push_back(np);

  const std::size_t m = traj.steps.size();
  std::vector<VertexId> cross(m);
  // Split all crossed edges first.
  for (std::size_t i = 0; i < m; ++i) {
    const EdgeId old_e = traj.steps[i].edge;
    NestEdge old_copy = edges_[old_e];
    VertexId x = new_vertex(false, "");
    EdgeId e1 = new_edge(old_copy.from, x, false, old_copy.path, -1);
    EdgeId e2 = new_edge(x, old_copy.to, false, old_copy.path, -1);
    edge_alive_[old_e] = 0;
    // Swap darts in place at the old endpoints.
    for (Dart& d : rotation_[old_copy.from])
      if (d == tail_dart(old_e)) d = tail_dart(e1);
    for (Dart& d : rotation_[old_copy.to])
      if (d == head_dart(old_e)) d = head_dart(e2);
    auto& owner = paths_[old_copy.path];
    auto it = std::find(owner.edges.begin(), owner.edges.end(), old_e);
    if (it == owner.edges.end()) throw std::logic_error("owner registry out of sync");
    it = owner.edges.erase(it);
    it = owner.edges.insert(it, e2);
    owner.edges.insert(it, e1);
    reindex_path(old_copy.path);
    cross[i] = x;
    record.splits.push_back({old_e, e1, e2, x});
  }

  // Thread the new path's own edges.
  auto& self = paths_[record.path];
  for (std::size_t i = 0; i <= m; ++i) {
    VertexId from = i == 0 ? vs : cross[i - 1];
    VertexId to = i == m ? vd : cross[i];
    EdgeId e = new_edge(from, to, false, record.path, static_cast<int>(i));
    self.edges.push_back(e);
  }

  // Rotations at the fresh crossing vertices. With the crossed edge split
  // into e1 -> x -> e2 and the new path passing n_in -> x -> n_out, the
  // counterclockwise order is [e1 head, n_out tail, e2 tail, n_in head]
  // for a left-to-right crossing and [e1 head, n_in head, e2 tail, n_out
  // tail] otherwise.
  for (std::size_t i = 0; i < m; ++i) {
    const auto& sp = record.splits[i];
    EdgeId n_in = self.edges[i];
    EdgeId n_out = self.edges[i + 1];
    if (traj.steps[i].left_to_right)
      rotation_[cross[i]] = {head_dart(sp.e1), tail_dart(n_out), tail_dart(sp.e2),
                             head_dart(n_in)};
    else
      rotation_[cross[i]] = {head_dart(sp.e1), head_dart(n_in), tail_dart(sp.e2),
                             tail_dart(n_out)};
  }

  // Attach the endpoints inside the recorded corners.
  rotation_[vs].insert(rotation_[vs].begin() + static_cast<long>(src_pos) + 1,
                       tail_dart(self.edges.front()));
  rotation_[vd].insert(rotation_[vd].begin() + static_cast<long>(dst_pos) + 1,
                       head_dart(self.edges.back()));

  invalidate_faces();
  journal_.push_back(record);

  // A face sequence that cannot be drawn as a simple curve shows up as a
  // broken Euler relation (the rotation system would have positive genus).
  const long v_count = static_cast<long>(vertex_count());
  const long e_count = static_cast<long>(edge_count());
  const long f_count = static_cast<long>(faces().size());
  if (v_count - e_count + f_count != 2) {
    undo_last_insert();
    throw std::invalid_argument("trajectory is not drawable as a simple curve");
  }
  return record.path;
}

void PlanarNest::reindex_path(PathId p) {
  auto& path = paths_[p];
  for (std::size_t i = 0; i < path.edges.size(); ++i) {
    edges_[path.edges[i]].path = p;
    edges_[path.edges[i]].index = static_cast<int>(i);
  }
}

std::vector<PlanarNest::SplitInfo> PlanarNest::last_insert_splits() const {
  if (journal_.empty()) throw std::logic_error("no insertion on record");
  std::vector<SplitInfo> out;
  for (const auto& s : journal_.back().splits) out.push_back({s.old_edge, s.e1, s.e2});
  return out;
}

void PlanarNest::undo_last_insert() {
  if (journal_.empty()) throw std::logic_error("nothing to undo");
  InsertRecord record = journal_.back();
  journal_.pop_back();

  // Detach the inserted path's endpoint darts.
  const NestPath self = paths_[record.path];
  const VertexId vs = terminal_vertex(self.src);
  const VertexId vd = terminal_vertex(self.dst);
  auto erase_dart = [&](VertexId v, Dart d) {
    auto& rot = rotation_[v];
    rot.erase(std::remove(rot.begin(), rot.end(), d), rot.end());
  };
  erase_dart(vs, tail_dart(self.edges.front()));
  erase_dart(vd, head_dart(self.edges.back()));

  // Unsplit in reverse order, restoring original edge ids in place.
  for (auto it = record.splits.rbegin(); it != record.splits.rend(); ++it) {
    const NestEdge e1 = edges_[it->e1];
    const NestEdge e2 = edges_[it->e2];
    for (Dart& d : rotation_[e1.from])
      if (d == tail_dart(it->e1)) d = tail_dart(it->old_edge);
    for (Dart& d : rotation_[e2.to])
      if (d == head_dart(it->e2)) d = head_dart(it->old_edge);
    edge_alive_[it->old_edge] = 1;
    edge_alive_[it->e1] = 0;
    edge_alive_[it->e2] = 0;
    vertex_alive_[it->x] = 0;
    rotation_[it->x].clear();
    PathId owner = edges_[it->old_edge].path;
    auto& oe = paths_[owner].edges;
    auto pos = std::find(oe.begin(), oe.end(), it->e1);
    if (pos == oe.end()) throw std::logic_error("undo: owner registry out of sync");
    pos = oe.erase(pos);     // e1
    pos = oe.erase(pos);     // e2
    oe.insert(pos, it->old_edge);
    reindex_path(owner);
  }

  // Drop the path's own edges and the registry entry. The path was the
  // youngest, so ids pop back off cleanly.
  for (EdgeId e : self.edges) {
    edge_alive_[e] = 0;
  }
  // Remove trailing dead ids created by this insertion.
  while (!edges_.empty() && !edge_alive_.empty() && !edge_alive_.back()) {
    edges_.pop_back();
    edge_alive_.pop_back();
  }
  while (!vertices_.empty() && !vertex_alive_.back()) {
    vertices_.pop_back();
    vertex_alive_.pop_back();
    rotation_.pop_back();
  }
  paths_.pop_back();
  invalidate_faces();
}

// ---------------------------------------------------------------------------
// Structural audit

std::vector<std::string> PlanarNest::structural_problems() const {
  std::vector<std::string> out;
  auto complain = [&](std::string msg) { out.push_back(std::move(msg)); };

  // Rotation darts partition the live edge ends.
  std::map<Dart, int> seen;
  for (VertexId v : live_vertices())
    for (Dart d : rotation_[v]) {
      ++seen[d];
      EdgeId e = dart_edge(d);
      if (e < 0 || e >= (EdgeId)edges_.size() || !edge_alive_[e])
        complain("rotation holds a dead dart");
      else if (dart_vertex(d) != v)
        complain("dart listed at the wrong vertex");
    }
  for (EdgeId e : live_edges()) {
    for (Dart d : {tail_dart(e), head_dart(e)}) {
      auto it = seen.find(d);
      if (it == seen.end() || it->second != 1) complain("edge end missing from rotations");
    }
  }

  // Crossing vertices: degree 4, two owning paths alternating.
  for (VertexId v : live_vertices()) {
    const auto& vx = vertices_[v];
    if (vx.is_terminal) continue;
    const auto& rot = rotation_[v];
    if (rot.size() != 4) {
      complain("interior vertex without degree 4");
      continue;
    }
    std::array<PathId, 4> owners;
    for (int i = 0; i < 4; ++i) owners[i] = edges_[dart_edge(rot[i])].path;
    if (!(owners[0] == owners[2] && owners[1] == owners[3] && owners[0] != owners[1]))
      complain("crossing vertex without alternating path ownership");
  }

  // Registry paths: directed terminal-to-terminal walks, edge-disjoint,
  // covering exactly the live interior edges.
  std::map<EdgeId, int> used;
  for (const auto& p : paths_) {
    if (p.edges.empty()) {
      complain("registered path with no edges");
      continue;
    }
    VertexId expect = -1;
    for (std::size_t i = 0; i < p.edges.size(); ++i) {
      EdgeId e = p.edges[i];
      ++used[e];
      if (!edge_alive_[e]) {
        complain("registered path uses a dead edge");
        continue;
      }
      if (edges_[e].path != p.id || edges_[e].index != (int)i)
        complain("edge ownership label out of sync");
      if (i > 0 && edges_[e].from != expect) complain("registered path is not a walk");
      expect = edges_[e].to;
    }
    if (edges_[p.edges.front()].from != terminal_vertex_.at(p.src) ||
        edges_[p.edges.back()].to != terminal_vertex_.at(p.dst))
      complain("registered path endpoints disagree with its pair");
  }
  for (auto& [e, n] : used)
    if (n != 1) complain("edge used by more than one registered path");
  for (EdgeId e : graph_edges())
    if (!used.count(e)) complain("interior edge not owned by any path");

  // Euler relation and outer face integrity.
  const long v_count = static_cast<long>(vertex_count());
  const long e_count = static_cast<long>(edge_count());
  const long f_count = static_cast<long>(faces().size());
  if (v_count - e_count + f_count != 2) complain("Euler relation violated");
  std::size_t outer_len = 0;
  for (const auto& f : faces())
    if (f.id == outer_face()) outer_len = f.walk.size();
  if (outer_len != boundary_arcs_.size()) complain("outer face does not match the boundary cycle");

  // Boundary order equals sigma.
  for (std::size_t i = 0; i < boundary_arcs_.size(); ++i) {
    const auto& e = edges_[boundary_arcs_[i]];
    if (!e.boundary) complain("boundary arc lost its marker");
    if (vertices_[e.from].name != sigma_.sequence()[i]) complain("boundary order disagrees");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Trajectory enumeration

TrajectoryStream::TrajectoryStream(const PlanarNest& nest, const std::string& src,
                                   const std::string& dst, int max_face_revisits)
    : nest_(nest), max_revisits_(max_face_revisits) {
  if (src == dst) throw std::invalid_argument("trajectory endpoints must differ");
  outer_ = nest.outer_face();
  for (const auto& de : nest.dual_graph()) {
    adjacency_[de.left].push_back({de.edge, de.right});
    adjacency_[de.right].push_back({de.edge, de.left});
  }
  for (auto& [f, adj] : adjacency_) std::sort(adj.begin(), adj.end());
  dst_faces_ = nest.faces_at(nest.terminal_vertex(dst));
  for (FaceId f : nest.faces_at(nest.terminal_vertex(src))) {
    if (f == outer_) continue;
    State s;
    s.faces = {f};
    queue_.push_back(std::move(s));
  }
}

std::optional<Trajectory> TrajectoryStream::next() {
  for (;;) {
    if (!ready_.empty()) {
      Trajectory t = ready_.front();
      ready_.pop_front();
      return t;
    }
    if (queue_.empty()) return std::nullopt;
    State s = queue_.front();
    queue_.pop_front();
    const FaceId cur = s.faces.back();
    if (std::find(dst_faces_.begin(), dst_faces_.end(), cur) != dst_faces_.end()) {
      Trajectory t;
      t.steps = s.steps;
      t.final_face = cur;
      ready_.push_back(std::move(t));
    }
    auto it = adjacency_.find(cur);
    if (it == adjacency_.end()) continue;
    for (const auto& [e, nxt] : it->second) {
      if (nxt == outer_) continue;
      bool edge_reused = false;
      for (const auto& st : s.steps)
        if (st.edge == e) {
          edge_reused = true;
          break;
        }
      if (edge_reused) continue;
      int visits = 0;
      for (FaceId f : s.faces) visits += f == nxt;
      if (visits > max_revisits_) continue;
      State n = s;
      n.steps.push_back({cur, e, nest_.left_face(e) == cur});
      n.faces.push_back(nxt);
      queue_.push_back(std::move(n));
    }
  }
}

}  // namespace osreal
