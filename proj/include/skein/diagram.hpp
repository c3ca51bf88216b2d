#pragma once

// Oriented planar link diagrams as 4-valent plane graphs with a rotation
// system. A crossing has four ports listed counterclockwise; port 0 is the
// incoming under-strand end, port 2 the outgoing under-strand end, and the
// over-strand occupies ports 1 and 3 (over_in names its incoming port).
//
// A dart is an edge end, encoded 4*crossing + port. The port determines the
// dart's role: ports 0 and over_in receive an edge head, port 2 and the
// remaining over port emit an edge tail. Edges are named by their tail dart.
//
// Sign convention (modern right-hand rule): over_in == 3 is positive,
// over_in == 1 is negative.
//
// Diagrams are immutable values; every operation returns a new diagram and
// re-validates it (involution, roles, per-piece Euler count V - E + F = 2).
// Components carry a stable order which operations preserve; crossing-free
// components are tracked only as a count of free loops and sit at the end of
// the component order.

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "skein/error.hpp"

namespace skein {

class Diagram {
 public:
  struct Crossing {
    std::array<int, 4> adj{-1, -1, -1, -1};  // adj[p] = mate dart of port p
    int over_in = 3;                         // 1 or 3
    int label = 0;                           // stable display id
  };

  Diagram() = default;

  static Diagram make(std::vector<Crossing> crossings, int free_loops) {
    Diagram d;
    d.cr_ = std::move(crossings);
    d.free_loops_ = free_loops;
    d.finish();
    return d;
  }

  static Diagram unlink(int n) {
    Diagram d;
    d.free_loops_ = n;
    d.finish();
    return d;
  }

  // --- basic accessors ------------------------------------------------------

  int num_crossings() const { return static_cast<int>(cr_.size()); }
  int free_loops() const { return free_loops_; }
  const Crossing& crossing(int c) const { return cr_.at(c); }
  int crossing_label(int c) const { return cr_.at(c).label; }

  static int dart(int c, int p) { return 4 * c + p; }
  static int dart_crossing(int d) { return d >> 2; }
  static int dart_port(int d) { return d & 3; }

  int mate(int d) const { return cr_[dart_crossing(d)].adj[dart_port(d)]; }
  int over_in(int c) const { return cr_[c].over_in; }
  int over_out(int c) const { return 4 - cr_[c].over_in; }

  bool is_head_port(int c, int p) const { return p == 0 || p == cr_[c].over_in; }
  bool is_tail_dart(int d) const { return !is_head_port(dart_crossing(d), dart_port(d)); }

  // +1 or -1
  int sign(int c) const { return cr_[c].over_in == 3 ? +1 : -1; }

  int writhe() const {
    int w = 0;
    for (int c = 0; c < num_crossings(); ++c) w += sign(c);
    return w;
  }

  // Strand continuation: entering head port -> leaving tail port.
  int continuation_port(int c, int in_port) const {
    if (in_port == 0) return 2;
    check(in_port == cr_[c].over_in, Err::Internal, "not a head port");
    return over_out(c);
  }

  // Edges are tail darts. The successor edge continues the strand.
  int next_edge(int e) const {
    int h = mate(e);
    int c = dart_crossing(h);
    return dart(c, continuation_port(c, dart_port(h)));
  }

  // Tail dart of the edge incident to port p of crossing c.
  int edge_at(int c, int p) const {
    int d = dart(c, p);
    return is_tail_dart(d) ? d : mate(d);
  }

  const std::vector<int>& edges() const { return edges_; }
  bool has_edge(int e) const {
    return std::binary_search(edges_.begin(), edges_.end(), e);
  }

  // Strand components in their stable order; each lists its edges in
  // traversal order starting from the component's minimal edge. Crossing-free
  // loops are not listed; they occupy the trailing component indices.
  int num_strand_components() const { return static_cast<int>(comps_.size()); }
  int num_components() const { return num_strand_components() + free_loops_; }
  const std::vector<int>& component_edges(int k) const { return comps_[order_[k]]; }
  // Order position of the component containing edge e.
  int component_of_edge(int e) const { return pos_of_comp_[comp_of_edge_.at(e)]; }

  // True when the component never passes under a crossing; the bare PD tuples
  // cannot encode such a component's orientation, so serialization appends an
  // orientation tag for it.
  bool component_all_over(int k) const {
    for (int e : component_edges(k))
      if (dart_port(mate(e)) == 0) return false;
    return true;
  }

  // --- faces ----------------------------------------------------------------

  // Face traversal permutation of darts: phi(d) = rotate(mate(d)). Orbits are
  // the faces of the (sphere) embedding; the orbit size is the face's vertex
  // count, counted with multiplicity.
  int face_next(int d) const {
    int m = mate(d);
    return dart(dart_crossing(m), (dart_port(m) + 1) & 3);
  }

  // All face orbits (works per connected piece); deterministic order.
  const std::vector<std::vector<int>>& face_orbits() const { return faces_; }
  int face_of_dart(int d) const { return face_of_.at(d); }

  // Public face census, restricted to connected diagrams as specified.
  const std::vector<std::vector<int>>& faces() const {
    check(connected_pieces() <= 1, Err::Disconnected,
          "face census requires a connected diagram");
    return faces_;
  }

  int connected_pieces() const { return num_pieces_; }
  int piece_of_crossing(int c) const { return piece_of_.at(c); }

  // --- serialization --------------------------------------------------------

  // PD text with a fixed choice of starting edge per strand component (given
  // in component order). Edge labels are 1-based and follow the traversal,
  // component by component. For every all-over component a tag '^L' or '_L'
  // is appended: L is the component's first label and '^' ('_') says the
  // label's first occurrence in reading order is the edge's head (tail).
  std::string serialize(const std::vector<int>& start_edges) const {
    auto tuples = label_tuples(start_edges);
    return render(tuples);
  }

  std::string serialize() const {
    std::vector<int> starts;
    for (int k = 0; k < num_strand_components(); ++k)
      starts.push_back(component_edges(k).front());
    return serialize(starts);
  }

  // Minimal serialization over all component-order-preserving relabelings
  // (every choice of starting edge per component). Memoization key.
  std::string canonical_key() const;

  friend bool operator==(const Diagram& a, const Diagram& b) {
    return a.canonical_key() == b.canonical_key();
  }

  static Diagram parse_pd(const std::string& text);

  // --- crossing-level operations ---------------------------------------------

  // Toggle over/under at crossing c. Ports rotate so that the new under-in
  // sits at port 0; use switch_dart_map to track darts across the operation.
  Diagram with_switch(int c) const {
    check(c >= 0 && c < num_crossings(), Err::UnknownCrossing, std::to_string(c));
    Diagram d;
    d.cr_ = cr_;
    d.free_loops_ = free_loops_;
    int shift = cr_[c].over_in == 1 ? 1 : 3;
    Crossing nc;
    nc.label = cr_[c].label;
    nc.over_in = cr_[c].over_in == 1 ? 3 : 1;
    for (int q = 0; q < 4; ++q) nc.adj[q] = cr_[c].adj[(q + shift) & 3];
    d.cr_[c] = nc;
    for (auto& cross : d.cr_)
      for (auto& a : cross.adj) a = switch_dart_map(c, a);
    d.finish();
    d.inherit_order(*this, [&](int e) { return switch_dart_map(c, e); });
    return d;
  }

  int switch_dart_map(int c, int d) const {
    if (dart_crossing(d) != c) return d;
    int shift = cr_[c].over_in == 1 ? 1 : 3;
    return dart(c, (dart_port(d) - shift) & 3);
  }

  Diagram mirrored() const {
    Diagram d;
    d.cr_ = cr_;
    d.free_loops_ = free_loops_;
    std::vector<int> shift(num_crossings());
    for (int c = 0; c < num_crossings(); ++c) {
      shift[c] = cr_[c].over_in == 1 ? 1 : 3;
      Crossing nc;
      nc.label = cr_[c].label;
      nc.over_in = cr_[c].over_in == 1 ? 3 : 1;
      for (int q = 0; q < 4; ++q) nc.adj[q] = cr_[c].adj[(q + shift[c]) & 3];
      d.cr_[c] = nc;
    }
    auto dmap = [&](int a) {
      return dart(dart_crossing(a), (dart_port(a) - shift[dart_crossing(a)]) & 3);
    };
    for (auto& cross : d.cr_)
      for (auto& a : cross.adj) a = dmap(a);
    d.finish();
    d.inherit_order(*this, dmap);
    return d;
  }

  // Oriented smoothing: the crossing disappears, incoming under joins
  // outgoing over and incoming over joins outgoing under.
  Diagram with_smooth(int c) const {
    check(c >= 0 && c < num_crossings(), Err::UnknownCrossing, std::to_string(c));
    RemovalPlan plan;
    auto& pass = plan[c];
    pass.fill(-1);
    pass[0] = over_out(c);
    pass[cr_[c].over_in] = 2;
    return remove_crossings(plan);
  }

  // --- diagram combinators ----------------------------------------------------

  friend Diagram disjoint_union(const Diagram& a, const Diagram& b) {
    Diagram d;
    d.cr_ = a.cr_;
    int off = 4 * a.num_crossings();
    for (const auto& c : b.cr_) {
      Crossing nc = c;
      for (auto& x : nc.adj) x += off;
      d.cr_.push_back(nc);
    }
    d.free_loops_ = a.free_loops_ + b.free_loops_;
    d.finish();
    std::vector<int> reps;
    for (int k = 0; k < a.num_strand_components(); ++k)
      reps.push_back(a.component_edges(k).front());
    for (int k = 0; k < b.num_strand_components(); ++k)
      reps.push_back(b.component_edges(k).front() + off);
    d.set_order_from_reps(reps);
    return d;
  }

  // Cut edge e1 of a and e2 of b and splice them respecting orientation. The
  // merged component takes e1's position in a's order; b's other components
  // follow a's.
  friend Diagram connected_sum(const Diagram& a, int e1, const Diagram& b, int e2) {
    check(a.has_edge(e1), Err::UnknownEdge, "e1");
    check(b.has_edge(e2), Err::UnknownEdge, "e2");
    int off = 4 * a.num_crossings();
    Diagram d;
    d.cr_ = a.cr_;
    for (const auto& c : b.cr_) {
      Crossing nc = c;
      for (auto& x : nc.adj) x += off;
      d.cr_.push_back(nc);
    }
    d.free_loops_ = a.free_loops_ + b.free_loops_;
    int h1 = a.mate(e1), t2 = e2 + off, h2 = b.mate(e2) + off;
    d.set_adj(e1, h2);
    d.set_adj(t2, h1);
    d.finish();
    std::vector<int> reps;
    for (int k = 0; k < a.num_strand_components(); ++k)
      reps.push_back(a.component_edges(k).front());
    int bpos = b.component_of_edge(e2);
    for (int k = 0; k < b.num_strand_components(); ++k)
      if (k != bpos) reps.push_back(b.component_edges(k).front() + off);
    // a's representative edge for the merged component might be e1 itself;
    // it survives as a tail dart, so reps stay valid.
    d.set_order_from_reps(reps);
    return d;
  }

  // Same diagram with the stable order of strand components permuted:
  // position k of the result holds the component at position perm[k] here.
  Diagram with_component_order(const std::vector<int>& perm) const {
    check(perm.size() == static_cast<size_t>(num_strand_components()), Err::Internal,
          "permutation size mismatch");
    Diagram d = *this;
    std::vector<int> reps;
    for (int k : perm) reps.push_back(component_edges(k).front());
    d.set_order_from_reps(reps);
    return d;
  }

  // Keep the selected components (indices into the stable component order;
  // strand components first, then free loops). Remaining components keep
  // their relative order.
  Diagram delete_components(const std::set<int>& keep) const {
    check(!keep.empty(), Err::EmptySelection, "keep set is empty");
    int n = num_components();
    for (int k : keep)
      check(k >= 0 && k < n, Err::UnknownEdge, "component index " + std::to_string(k));
    int kept_free = 0;
    for (int k : keep)
      if (k >= num_strand_components()) ++kept_free;
    std::vector<bool> keep_strand(num_strand_components(), false);
    for (int k : keep)
      if (k < num_strand_components()) keep_strand[k] = true;

    RemovalPlan plan;
    for (int c = 0; c < num_crossings(); ++c) {
      int under_comp = component_of_edge(edge_at(c, 2));
      int over_comp = component_of_edge(edge_at(c, over_out(c)));
      bool ku = keep_strand[under_comp], ko = keep_strand[over_comp];
      if (ku && ko) continue;
      auto& pass = plan[c];
      pass.fill(-1);
      if (ku) pass[0] = 2;
      if (ko) pass[cr_[c].over_in] = over_out(c);
    }
    return remove_crossings_counting(plan, kept_free);
  }

  // --- shared removal machinery (used by smoothing, R-moves, deletion) -------

  // For each removed crossing, pass[in_port] = out_port routes a surviving
  // strand straight through; ports mapped to -1 are dropped together with
  // their (necessarily internal) edges.
  using RemovalPlan = std::map<int, std::array<int, 4>>;

  Diagram remove_crossings(const RemovalPlan& plan) const {
    return remove_crossings_counting(plan, free_loops_);
  }

  // Internal: build directly from pieces (used by the move layer).
  static Diagram from_parts(std::vector<Crossing> crossings, int free_loops,
                            const Diagram& order_source,
                            const std::vector<std::pair<int, int>>& dart_map);

 private:
  Diagram remove_crossings_counting(const RemovalPlan& plan, int base_free_loops) const {
    std::vector<int> newidx(num_crossings(), -1);
    int nkeep = 0;
    for (int c = 0; c < num_crossings(); ++c)
      if (!plan.count(c)) newidx[c] = nkeep++;

    Diagram d;
    d.cr_.resize(nkeep);
    for (int c = 0; c < num_crossings(); ++c)
      if (newidx[c] >= 0) {
        d.cr_[newidx[c]].over_in = cr_[c].over_in;
        d.cr_[newidx[c]].label = cr_[c].label;
      }

    // new edge (tail dart) -> old tail dart it starts at
    std::map<int, int> origin;
    std::set<std::pair<int, int>> used_out;  // (removed crossing, out port)
    for (int c = 0; c < num_crossings(); ++c) {
      if (newidx[c] < 0) continue;
      for (int p = 0; p < 4; ++p) {
        int dd = dart(c, p);
        if (!is_tail_dart(dd)) continue;
        int cur = mate(dd);
        while (newidx[dart_crossing(cur)] < 0) {
          int rc = dart_crossing(cur), rp = dart_port(cur);
          auto it = plan.find(rc);
          check(it != plan.end(), Err::Internal, "walk escaped plan");
          int out = it->second[rp];
          check(out >= 0, Err::Internal, "strand walk hit a dropped port");
          used_out.insert({rc, out});
          cur = mate(dart(rc, out));
        }
        int a = dart(newidx[c], p);
        int b = dart(newidx[dart_crossing(cur)], dart_port(cur));
        d.cr_[newidx[c]].adj[p] = b;
        d.cr_[dart_crossing(b)].adj[dart_port(b)] = a;
        origin[a] = dd;
      }
    }

    // Pairing cycles never reached from a kept crossing are strands that lost
    // all their crossings: they close up into free loops.
    int loops = 0;
    for (const auto& [rc, pass] : plan)
      for (int in = 0; in < 4; ++in) {
        int out = pass[in];
        if (out < 0 || used_out.count({rc, out})) continue;
        loops++;
        int c2 = rc, o2 = out;
        while (true) {
          used_out.insert({c2, o2});
          int cur = mate(dart(c2, o2));
          int nc = dart_crossing(cur);
          check(newidx[nc] < 0, Err::Internal, "free-loop walk reached kept crossing");
          c2 = nc;
          o2 = plan.at(nc)[dart_port(cur)];
          check(o2 >= 0, Err::Internal, "free-loop walk hit dropped port");
          if (c2 == rc && o2 == out) break;
        }
      }

    d.free_loops_ = base_free_loops + loops;
    d.finish();

    // Order: sort new components by (old order position, old edge) of their
    // earliest surviving edge.
    std::vector<std::pair<std::pair<int, int>, int>> keyed;
    for (size_t ci = 0; ci < d.comps_.size(); ++ci) {
      std::pair<int, int> best{1 << 30, 1 << 30};
      for (int e : d.comps_[ci]) {
        int old = origin.at(e);
        best = std::min(best, {component_of_edge(old), old});
      }
      keyed.push_back({best, static_cast<int>(ci)});
    }
    std::sort(keyed.begin(), keyed.end());
    d.order_.clear();
    for (const auto& [k, ci] : keyed) d.order_.push_back(ci);
    d.rebuild_pos();
    return d;
  }

  void set_adj(int a, int b) {
    cr_[dart_crossing(a)].adj[dart_port(a)] = b;
    cr_[dart_crossing(b)].adj[dart_port(b)] = a;
  }

  template <class DartMap>
  void inherit_order(const Diagram& src, DartMap&& dmap) {
    std::vector<int> reps;
    for (int k = 0; k < src.num_strand_components(); ++k)
      reps.push_back(dmap(src.component_edges(k).front()));
    set_order_from_reps(reps);
  }

  void set_order_from_reps(const std::vector<int>& reps) {
    check(reps.size() == comps_.size(), Err::Internal, "component count changed");
    order_.clear();
    std::vector<bool> seen(comps_.size(), false);
    for (int e : reps) {
      int ci = comp_of_edge_.at(e);
      check(!seen[ci], Err::Internal, "duplicate component representative");
      seen[ci] = true;
      order_.push_back(ci);
    }
    rebuild_pos();
  }

  void rebuild_pos() {
    pos_of_comp_.assign(comps_.size(), -1);
    for (size_t k = 0; k < order_.size(); ++k) pos_of_comp_[order_[k]] = static_cast<int>(k);
  }

  std::vector<std::array<int, 4>> label_tuples(const std::vector<int>& start_edges) const;
  std::string render(const std::vector<std::array<int, 4>>& tuples) const;

  void finish() {
    validate_structure();
    derive_components();
    derive_faces_and_pieces();
    validate_euler();
  }

  void validate_structure() const {
    for (int c = 0; c < num_crossings(); ++c) {
      check(cr_[c].over_in == 1 || cr_[c].over_in == 3, Err::Internal, "bad over_in");
      for (int p = 0; p < 4; ++p) {
        int d = cr_[c].adj[p];
        check(d >= 0 && d < 4 * num_crossings(), Err::Internal, "dangling dart");
        check(d != dart(c, p), Err::Internal, "self-mated dart");
        check(mate(d) == dart(c, p), Err::Internal, "mate not involutive");
        bool h1 = is_head_port(c, p);
        bool h2 = is_head_port(dart_crossing(d), dart_port(d));
        check(h1 != h2, Err::InconsistentOrientation, "edge with two heads or two tails");
      }
    }
  }

  void derive_components() {
    edges_.clear();
    comps_.clear();
    comp_of_edge_.clear();
    for (int c = 0; c < num_crossings(); ++c)
      for (int p = 0; p < 4; ++p)
        if (is_tail_dart(dart(c, p))) edges_.push_back(dart(c, p));
    std::sort(edges_.begin(), edges_.end());
    std::set<int> seen;
    for (int e : edges_) {
      if (seen.count(e)) continue;
      std::vector<int> comp;
      int cur = e;
      do {
        comp.push_back(cur);
        seen.insert(cur);
        cur = next_edge(cur);
      } while (cur != e);
      comps_.push_back(std::move(comp));
    }
    for (size_t i = 0; i < comps_.size(); ++i)
      for (int e : comps_[i]) comp_of_edge_[e] = static_cast<int>(i);
    order_.resize(comps_.size());
    std::iota(order_.begin(), order_.end(), 0);
    rebuild_pos();
  }

  void derive_faces_and_pieces() {
    faces_.clear();
    face_of_.clear();
    int nd = 4 * num_crossings();
    std::vector<char> seen(nd, 0);
    for (int d = 0; d < nd; ++d) {
      if (seen[d]) continue;
      std::vector<int> orbit;
      int cur = d;
      do {
        orbit.push_back(cur);
        seen[cur] = 1;
        cur = face_next(cur);
      } while (cur != d);
      faces_.push_back(std::move(orbit));
    }
    for (size_t f = 0; f < faces_.size(); ++f)
      for (int d : faces_[f]) face_of_[d] = static_cast<int>(f);

    piece_of_.assign(num_crossings(), -1);
    num_pieces_ = 0;
    for (int c = 0; c < num_crossings(); ++c) {
      if (piece_of_[c] >= 0) continue;
      std::vector<int> stack{c};
      piece_of_[c] = num_pieces_;
      while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int p = 0; p < 4; ++p) {
          int v = dart_crossing(cr_[u].adj[p]);
          if (piece_of_[v] < 0) {
            piece_of_[v] = num_pieces_;
            stack.push_back(v);
          }
        }
      }
      ++num_pieces_;
    }
  }

  void validate_euler() const {
    if (num_crossings() == 0) return;
    std::vector<int> v(num_pieces_, 0), f(num_pieces_, 0);
    for (int c = 0; c < num_crossings(); ++c) v[piece_of_[c]]++;
    for (const auto& orbit : faces_) f[piece_of_[dart_crossing(orbit[0])]]++;
    for (int i = 0; i < num_pieces_; ++i) {
      // E = 2V for a 4-valent graph, so planarity demands F = V + 2.
      check(f[i] == v[i] + 2, Err::NonPlanar,
            "Euler check failed: piece " + std::to_string(i) + " has V=" +
                std::to_string(v[i]) + " F=" + std::to_string(f[i]));
    }
  }

  std::vector<Crossing> cr_;
  int free_loops_ = 0;

  // derived
  std::vector<int> edges_;
  std::vector<std::vector<int>> comps_;   // by internal index (min edge code)
  std::map<int, int> comp_of_edge_;       // edge -> internal component index
  std::vector<int> order_;                // order position -> internal index
  std::vector<int> pos_of_comp_;          // internal index -> order position
  std::vector<std::vector<int>> faces_;
  std::map<int, int> face_of_;
  std::vector<int> piece_of_;
  int num_pieces_ = 0;
};

inline Diagram Diagram::from_parts(std::vector<Crossing> crossings, int free_loops,
                                   const Diagram& order_source,
                                   const std::vector<std::pair<int, int>>& dart_map) {
  Diagram d;
  d.cr_ = std::move(crossings);
  d.free_loops_ = free_loops;
  d.finish();
  std::vector<int> reps;
  for (int k = 0; k < order_source.num_strand_components(); ++k) {
    int e = order_source.component_edges(k).front();
    for (const auto& [from, to] : dart_map)
      if (from == e) {
        e = to;
        break;
      }
    reps.push_back(e);
  }
  // New components not represented (created by the operation) are appended in
  // internal order.
  std::vector<bool> seen(d.comps_.size(), false);
  std::vector<int> ord;
  for (int e : reps) {
    int ci = d.comp_of_edge_.at(e);
    if (!seen[ci]) {
      seen[ci] = true;
      ord.push_back(ci);
    }
  }
  for (size_t ci = 0; ci < d.comps_.size(); ++ci)
    if (!seen[ci]) ord.push_back(static_cast<int>(ci));
  d.order_ = ord;
  d.rebuild_pos();
  return d;
}

// --- labeling and serialization ----------------------------------------------

inline std::vector<std::array<int, 4>> Diagram::label_tuples(
    const std::vector<int>& start_edges) const {
  check(start_edges.size() == comps_.size(), Err::Internal, "one start per component");
  std::map<int, int> label;
  int next = 1;
  for (size_t k = 0; k < comps_.size(); ++k) {
    int e = start_edges[k];
    check(comp_of_edge_.at(e) == order_[k], Err::Internal,
          "start edge not in its component");
    int cur = e;
    do {
      label[cur] = next++;
      cur = next_edge(cur);
    } while (cur != e);
  }
  std::vector<std::array<int, 4>> tuples;
  tuples.reserve(cr_.size());
  for (int c = 0; c < num_crossings(); ++c)
    tuples.push_back({label.at(edge_at(c, 0)), label.at(edge_at(c, 1)),
                      label.at(edge_at(c, 2)), label.at(edge_at(c, 3))});
  return tuples;
}

inline std::string Diagram::render(const std::vector<std::array<int, 4>>& tuples) const {
  std::vector<int> idx(num_crossings());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return tuples[a] < tuples[b]; });
  std::string out;
  for (int c : idx) {
    const auto& t = tuples[c];
    if (!out.empty()) out += ' ';
    out += "X(" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," +
           std::to_string(t[2]) + "," + std::to_string(t[3]) + ")";
  }
  for (int i = 0; i < free_loops_; ++i) {
    if (!out.empty()) out += ' ';
    out += 'O';
  }
  int offset = 1;
  for (int k = 0; k < num_strand_components(); ++k) {
    if (component_all_over(k)) {
      int lab = offset;
      bool head = false, found = false;
      for (int c : idx) {
        for (int s = 0; s < 4 && !found; ++s)
          if (tuples[c][s] == lab) {
            head = is_head_port(c, s);
            found = true;
          }
        if (found) break;
      }
      check(found, Err::Internal, "tag label not found");
      if (!out.empty()) out += ' ';
      out += (head ? '^' : '_') + std::to_string(lab);
    }
    offset += static_cast<int>(component_edges(k).size());
  }
  return out;
}

inline std::string Diagram::canonical_key() const {
  if (num_crossings() == 0) return serialize();
  // positions within each ordered component
  std::map<int, int> pos;
  for (int k = 0; k < num_strand_components(); ++k) {
    const auto& comp = component_edges(k);
    for (size_t i = 0; i < comp.size(); ++i) pos[comp[i]] = static_cast<int>(i);
  }
  std::vector<int> offset(comps_.size() + 1, 0);
  for (int k = 0; k < num_strand_components(); ++k)
    offset[k + 1] = offset[k] + static_cast<int>(component_edges(k).size());
  std::vector<char> all_over(comps_.size());
  bool any_all_over = false;
  for (int k = 0; k < num_strand_components(); ++k) {
    all_over[k] = component_all_over(k);
    any_all_over |= all_over[k];
  }

  const int ncr = num_crossings();
  // flattened: for crossing c, port p: incident edge's order position and
  // traversal position
  std::vector<int> ecomp(4 * ncr), epos(4 * ncr);
  for (int c = 0; c < ncr; ++c)
    for (int p = 0; p < 4; ++p) {
      int e = edge_at(c, p);
      ecomp[dart(c, p)] = component_of_edge(e);
      epos[dart(c, p)] = pos.at(e);
    }

  std::vector<int> choice(comps_.size(), 0);  // start position per component
  using Cand = std::pair<std::vector<std::array<int, 4>>, std::string>;
  Cand best, cand;
  cand.first.resize(ncr);
  std::vector<int> idx(ncr);
  bool have_best = false;
  while (true) {
    auto& tuples = cand.first;
    for (int c = 0; c < ncr; ++c)
      for (int p = 0; p < 4; ++p) {
        int d = dart(c, p);
        int k = ecomp[d];
        int sz = static_cast<int>(component_edges(k).size());
        int rel = epos[d] - choice[k];
        if (rel < 0) rel += sz;
        tuples[c][p] = offset[k] + rel + 1;
      }
    // cheap prefilter: a candidate whose smallest tuple already exceeds the
    // best one's head cannot win, so skip the sort
    if (have_best && !any_all_over) {
      const std::array<int, 4>* mn = &tuples[0];
      for (int c = 1; c < ncr; ++c)
        if (tuples[c] < *mn) mn = &tuples[c];
      if (best.first[0] < *mn) {
        size_t k0 = 0;
        while (k0 < choice.size()) {
          if (++choice[k0] < static_cast<int>(component_edges(static_cast<int>(k0)).size()))
            break;
          choice[k0++] = 0;
        }
        if (k0 == choice.size()) break;
        continue;
      }
    }
    cand.second.clear();
    if (any_all_over) {
      std::iota(idx.begin(), idx.end(), 0);
      std::sort(idx.begin(), idx.end(),
                [&](int a, int b) { return tuples[a] < tuples[b]; });
      for (int k = 0; k < num_strand_components(); ++k) {
        if (!all_over[k]) continue;
        int lab = offset[k] + 1;
        bool head = false, found = false;
        for (int c : idx) {
          for (int s = 0; s < 4 && !found; ++s)
            if (tuples[c][s] == lab) {
              head = is_head_port(c, s);
              found = true;
            }
          if (found) break;
        }
        cand.second += (head ? '^' : '_') + std::to_string(lab);
        cand.second += ' ';
      }
    }
    std::sort(tuples.begin(), tuples.end());
    if (!have_best || cand < best) {
      best = cand;
      have_best = true;
    }
    // next choice vector
    size_t k = 0;
    while (k < choice.size()) {
      if (++choice[k] < static_cast<int>(component_edges(static_cast<int>(k)).size()))
        break;
      choice[k++] = 0;
    }
    if (k == choice.size()) break;
  }

  std::string out;
  for (const auto& t : best.first) {
    if (!out.empty()) out += ' ';
    out += "X(" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," +
           std::to_string(t[2]) + "," + std::to_string(t[3]) + ")";
  }
  for (int i = 0; i < free_loops_; ++i) {
    if (!out.empty()) out += ' ';
    out += 'O';
  }
  if (!best.second.empty()) {
    std::string tags = best.second;
    if (tags.back() == ' ') tags.pop_back();
    if (!out.empty()) out += ' ';
    out += tags;
  }
  return out;
}

// --- PD parsing --------------------------------------------------------------

inline Diagram Diagram::parse_pd(const std::string& text) {
  struct Tuple {
    std::array<long, 4> lab;
  };
  std::vector<Tuple> tuples;
  int loops = 0;
  size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() &&
           (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ','))
      ++i;
  };
  std::vector<std::pair<long, bool>> tags;  // (label, first occurrence is head)
  while (true) {
    skip_ws();
    if (i >= text.size()) break;
    char c = text[i];
    if (c == 'O' || c == 'o') {
      ++loops;
      ++i;
      continue;
    }
    if (c == '^' || c == '_') {
      ++i;
      skip_ws();
      check(i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])),
            Err::SyntaxError, "expected label after orientation tag");
      long v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
        v = v * 10 + (text[i++] - '0');
      tags.emplace_back(v, c == '^');
      continue;
    }
    check(c == 'X' || c == 'x', Err::SyntaxError,
          std::string("unexpected character '") + c + "'");
    ++i;
    skip_ws();
    check(i < text.size() && (text[i] == '(' || text[i] == '['), Err::SyntaxError,
          "expected '(' after X");
    char close = text[i] == '(' ? ')' : ']';
    ++i;
    Tuple t{};
    for (int k = 0; k < 4; ++k) {
      skip_ws();
      check(i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])),
            Err::SyntaxError, "expected edge label");
      long v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
        v = v * 10 + (text[i++] - '0');
      check(v >= 1, Err::SyntaxError, "edge labels are positive");
      t.lab[k] = v;
    }
    skip_ws();
    check(i < text.size() && text[i] == close, Err::SyntaxError, "expected closing bracket");
    ++i;
    tuples.push_back(t);
  }

  int ncr = static_cast<int>(tuples.size());
  if (ncr == 0) return Diagram::unlink(loops);

  // occurrences of each label, in reading order
  std::map<long, std::vector<int>> occ;  // label -> darts
  for (int c = 0; c < ncr; ++c)
    for (int p = 0; p < 4; ++p) occ[tuples[c].lab[p]].push_back(dart(c, p));
  for (const auto& [lab, ds] : occ)
    check(ds.size() == 2, Err::BadValence,
          "edge label " + std::to_string(lab) + " appears " + std::to_string(ds.size()) +
              " times (expected 2)");

  // role inference: +1 head (edge arrives), -1 tail (edge leaves)
  std::vector<std::array<int, 4>> role(ncr, {0, 0, 0, 0});
  for (int c = 0; c < ncr; ++c) {
    role[c][0] = +1;
    role[c][2] = -1;
  }
  auto other_occ = [&](int d) {
    const auto& ds = occ.at(tuples[dart_crossing(d)].lab[dart_port(d)]);
    return ds[0] == d ? ds[1] : ds[0];
  };
  auto get_role = [&](int d) { return role[dart_crossing(d)][dart_port(d)]; };
  std::vector<int> work;
  auto set_role = [&](int d, int r) {
    int& slot = role[dart_crossing(d)][dart_port(d)];
    if (slot == 0) {
      slot = r;
      work.push_back(d);
      return;
    }
    check(slot == r, Err::InconsistentOrientation,
          "edge label " + std::to_string(tuples[dart_crossing(d)].lab[dart_port(d)]));
  };
  auto propagate = [&] {
    while (!work.empty()) {
      int d = work.back();
      work.pop_back();
      int r = get_role(d);
      set_role(other_occ(d), -r);
      int c = dart_crossing(d), p = dart_port(d);
      if (p == 1) set_role(dart(c, 3), -r);
      if (p == 3) set_role(dart(c, 1), -r);
    }
  };
  for (int c = 0; c < ncr; ++c) {
    work.push_back(dart(c, 0));
    work.push_back(dart(c, 2));
  }
  propagate();

  // Orientation tags pin components that never pass under (propagation cannot
  // reach them); they refer to the label's first occurrence in reading order.
  for (const auto& [lab, head_first] : tags) {
    auto it = occ.find(lab);
    check(it != occ.end(), Err::SyntaxError, "tag for unknown label " + std::to_string(lab));
    set_role(it->second[0], head_first ? +1 : -1);
    propagate();
  }

  // Sequential heuristic for untagged all-over components, then a
  // deterministic fallback; final validation rejects anything inconsistent.
  for (int c = 0; c < ncr; ++c) {
    if (role[c][1] != 0) continue;
    long lb = tuples[c].lab[1], ld = tuples[c].lab[3];
    if (ld == lb + 1) set_role(dart(c, 1), +1);
    else if (lb == ld + 1) set_role(dart(c, 3), +1);
    propagate();
  }
  for (int c = 0; c < ncr; ++c) {
    if (role[c][1] != 0) continue;
    set_role(dart(c, 1), +1);
    propagate();
  }

  std::vector<Crossing> crossings(ncr);
  for (int c = 0; c < ncr; ++c) {
    crossings[c].label = c + 1;
    check(role[c][1] * role[c][3] == -1, Err::InconsistentOrientation,
          "over-strand ports at crossing " + std::to_string(c + 1));
    crossings[c].over_in = role[c][1] == +1 ? 1 : 3;
  }
  for (const auto& [lab, ds] : occ) {
    int r0 = get_role(ds[0]);
    check(r0 * get_role(ds[1]) == -1, Err::InconsistentOrientation,
          "edge label " + std::to_string(lab));
    crossings[dart_crossing(ds[0])].adj[dart_port(ds[0])] = ds[1];
    crossings[dart_crossing(ds[1])].adj[dart_port(ds[1])] = ds[0];
  }

  Diagram d;
  d.cr_ = std::move(crossings);
  d.free_loops_ = loops;
  d.finish();

  // Reorder components by their minimal original label so the stable order
  // reflects the input, and renumber crossings along that traversal for a
  // deterministic value.
  std::vector<std::pair<long, int>> comp_min;  // (min original label, start edge)
  for (size_t ci = 0; ci < d.comps_.size(); ++ci) {
    long m = -1;
    int start = -1;
    for (int e : d.comps_[ci]) {
      long lab = tuples[dart_crossing(e)].lab[dart_port(e)];
      if (m < 0 || lab < m) {
        m = lab;
        start = e;
      }
    }
    comp_min.push_back({m, start});
  }
  std::sort(comp_min.begin(), comp_min.end());
  std::vector<int> rank(ncr, -1);
  int next_rank = 0;
  for (const auto& [m, start] : comp_min) {
    int cur = start;
    do {
      int hc = dart_crossing(d.mate(cur));
      if (rank[hc] < 0) rank[hc] = next_rank++;
      cur = d.next_edge(cur);
    } while (cur != start);
  }
  check(next_rank == ncr, Err::Internal, "renumber traversal missed crossings");
  std::vector<Crossing> re(ncr);
  for (int c = 0; c < ncr; ++c) {
    re[rank[c]] = d.cr_[c];
    re[rank[c]].label = rank[c] + 1;
    for (auto& a : re[rank[c]].adj) a = dart(rank[dart_crossing(a)], dart_port(a));
  }
  Diagram out;
  out.cr_ = std::move(re);
  out.free_loops_ = loops;
  out.finish();
  std::vector<int> reps;
  for (const auto& [m, start] : comp_min)
    reps.push_back(dart(rank[dart_crossing(start)], dart_port(start)));
  out.set_order_from_reps(reps);
  return out;
}

// --- braid words -------------------------------------------------------------

struct BraidWord {
  int strands = 1;
  std::vector<int> letters;  // nonzero, |l| < strands; sign = generator vs inverse

  static BraidWord parse(const std::string& text) {
    auto colon = text.find(':');
    check(colon != std::string::npos, Err::SyntaxError, "braid input needs 'k: letters'");
    BraidWord w;
    try {
      w.strands = std::stoi(text.substr(0, colon));
    } catch (...) {
      fail(Err::SyntaxError, "bad strand count");
    }
    check(w.strands >= 1, Err::SyntaxError, "strand count must be >= 1");
    std::istringstream in(text.substr(colon + 1));
    std::string tok;
    while (in >> tok) {
      int v = 0;
      try {
        v = std::stoi(tok);
      } catch (...) {
        fail(Err::SyntaxError, "bad braid letter '" + tok + "'");
      }
      check(v != 0 && std::abs(v) < w.strands, Err::SyntaxError,
            "braid letter out of range: " + tok);
      w.letters.push_back(v);
    }
    return w;
  }

  // Permutation of strand positions induced by the word.
  std::vector<int> permutation() const {
    std::vector<int> perm(strands);
    std::iota(perm.begin(), perm.end(), 0);
    for (int l : letters) std::swap(perm[std::abs(l) - 1], perm[std::abs(l)]);
    return perm;
  }

  int permutation_cycles() const {
    auto p = permutation();
    std::vector<bool> seen(strands, false);
    int cycles = 0;
    for (int s = 0; s < strands; ++s) {
      if (seen[s]) continue;
      ++cycles;
      int c = s;
      while (!seen[c]) {
        seen[c] = true;
        c = p[c];
      }
    }
    return cycles;
  }
};

// Closure of a braid word. Positive letters give positive crossings; strands
// run top to bottom, and the strand entering from the right passes over.
inline Diagram close_braid(const BraidWord& w) {
  int ncr = static_cast<int>(w.letters.size());
  std::vector<Diagram::Crossing> cr(ncr);
  // geometric ports per letter sign: NW, NE, SW, SE -> port index
  auto port_nw = [&](int c) { return w.letters[c] > 0 ? 0 : 1; };
  auto port_ne = [&](int c) { return w.letters[c] > 0 ? 3 : 0; };
  auto port_sw = [&](int c) { return w.letters[c] > 0 ? 1 : 2; };
  auto port_se = [&](int c) { return w.letters[c] > 0 ? 2 : 3; };

  std::vector<int> pending(w.strands, -1);   // dangling tail dart per position
  std::vector<int> first_in(w.strands, -1);  // first head dart per position
  std::vector<std::pair<int, int>> welds;
  for (int c = 0; c < ncr; ++c) {
    cr[c].label = c + 1;
    cr[c].over_in = w.letters[c] > 0 ? 3 : 1;
    int i = std::abs(w.letters[c]) - 1;
    int in_l = Diagram::dart(c, port_nw(c)), in_r = Diagram::dart(c, port_ne(c));
    int out_l = Diagram::dart(c, port_sw(c)), out_r = Diagram::dart(c, port_se(c));
    if (pending[i] < 0) first_in[i] = in_l; else welds.push_back({pending[i], in_l});
    if (pending[i + 1] < 0) first_in[i + 1] = in_r; else welds.push_back({pending[i + 1], in_r});
    pending[i] = out_l;
    pending[i + 1] = out_r;
  }
  int free_loops = 0;
  for (int s = 0; s < w.strands; ++s) {
    if (pending[s] < 0) {
      ++free_loops;
      continue;
    }
    welds.push_back({pending[s], first_in[s]});
  }
  for (auto [t, h] : welds) {
    cr[Diagram::dart_crossing(t)].adj[Diagram::dart_port(t)] = h;
    cr[Diagram::dart_crossing(h)].adj[Diagram::dart_port(h)] = t;
  }
  return Diagram::make(std::move(cr), free_loops);
}

}  // namespace skein
