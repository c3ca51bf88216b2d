#pragma once

// i-gon census at the region level and the reduction of untangled diagrams
// to zero crossings by Reidemeister moves that never increase the crossing
// count.
//
// An i-gon is a closed plane region bounded by i strand-straight arcs meeting
// at i corner crossings; other strands may cross its boundary transversally
// and its interior may meet the diagram (unlike a face). f-gons are i-gons
// with i <= 2; an innermost f-gon contains no other f-gon. Innermost 1-gons
// are necessarily empty; an innermost 2-gon with content always contains an
// empty 3-gon face touching its boundary, which supports a third Reidemeister
// move that pulls one crossing out of the region.

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "skein/diagram.hpp"
#include "skein/error.hpp"
#include "skein/moves.hpp"
#include "skein/resolve.hpp"

namespace skein {

struct FGonWitness {
  int kind = 0;                // 0-, 1- or 2-gon
  std::vector<int> corners;    // corner crossings (empty for 0-gons)
  std::vector<int> boundary;   // boundary edges (tail darts)
  std::set<int> region;        // face ids strictly inside (empty for free loops)
  bool innermost = false;
};

namespace detail {

// Simple strand-straight path: consecutive edges under next_edge whose
// interior crossings are distinct and avoid both endpoints.
struct StraightPath {
  std::vector<int> edges;
  int from = -1, to = -1;       // endpoint crossings
  int start_port = -1;          // port of edges.front() at `from`
  int end_port = -1;            // port of mate(edges.back()) at `to`
};

inline int strand_of_port(const Diagram&, int, int p) {
  return (p == 0 || p == 2) ? 0 : 1;  // under-strand pair vs over pair
}

// All simple straight paths of the diagram (length >= 1), including closed
// ones (from == to).
inline std::vector<StraightPath> straight_paths(const Diagram& d) {
  std::vector<StraightPath> out;
  for (int e : d.edges()) {
    StraightPath p;
    p.from = Diagram::dart_crossing(e);
    p.start_port = Diagram::dart_port(e);
    std::set<int> interior;
    int cur = e;
    while (true) {
      p.edges.push_back(cur);
      int h = d.mate(cur);
      int hc = Diagram::dart_crossing(h);
      p.to = hc;
      p.end_port = Diagram::dart_port(h);
      out.push_back(p);  // path ending here
      if (hc == p.from || interior.count(hc)) break;  // endpoints may not repeat
      interior.insert(hc);
      cur = d.next_edge(cur);
      if (cur == e) break;  // came all the way around
    }
  }
  return out;
}

// Faces on the inner side of a simple closed boundary curve: those not
// reachable from the outer face without crossing a boundary edge.
inline std::set<int> region_faces(const Diagram& d, const std::set<int>& boundary_edges,
                                  int outer_face) {
  std::set<int> outside;
  std::vector<int> stack{outer_face};
  outside.insert(outer_face);
  while (!stack.empty()) {
    int f = stack.back();
    stack.pop_back();
    for (int dart : d.face_orbits()[f]) {
      int e = d.is_tail_dart(dart) ? dart : d.mate(dart);
      if (boundary_edges.count(e)) continue;
      int g = d.face_of_dart(d.mate(dart));
      if (!outside.count(g)) {
        outside.insert(g);
        stack.push_back(g);
      }
    }
  }
  std::set<int> inside;
  for (size_t f = 0; f < d.face_orbits().size(); ++f)
    if (!outside.count(static_cast<int>(f))) inside.insert(static_cast<int>(f));
  return inside;
}

}  // namespace detail

// The face adjacent to the head end of a piece's least edge serves as the
// plane embedding's outer face (the combinatorial diagram only fixes the
// sphere). The choice is overridable at the CLI.
inline int default_outer_face(const Diagram& d, int piece) {
  for (int e : d.edges())
    if (d.piece_of_crossing(Diagram::dart_crossing(e)) == piece)
      return d.face_of_dart(d.mate(e));
  fail(Err::Internal, "piece without edges");
}

// All f-gon candidates of one connected piece, with regions relative to the
// given outer face. Whole components that are simple closed curves enter as
// 0-gon candidates (they bound regions and block innermost-ness).
inline std::vector<FGonWitness> fgon_candidates(const Diagram& d, int piece,
                                                int outer_face) {
  std::vector<FGonWitness> out;
  auto in_piece = [&](int crossing) { return d.piece_of_crossing(crossing) == piece; };
  auto paths = detail::straight_paths(d);
  paths.erase(std::remove_if(paths.begin(), paths.end(),
                             [&](const detail::StraightPath& p) {
                               return !in_piece(p.from);
                             }),
              paths.end());

  auto push_candidate = [&](int kind, std::vector<int> corners, std::set<int> edges) {
    FGonWitness w;
    w.kind = kind;
    w.corners = std::move(corners);
    w.boundary.assign(edges.begin(), edges.end());
    w.region = detail::region_faces(d, edges, outer_face);
    out.push_back(std::move(w));
  };

  // 0-gons: components forming simple closed curves (their full strand walk
  // revisits no crossing).
  for (int k = 0; k < d.num_strand_components(); ++k) {
    const auto& comp = d.component_edges(k);
    if (!in_piece(Diagram::dart_crossing(comp.front()))) continue;
    std::set<int> crossings;
    bool simple = true;
    for (int e : comp) {
      int c = Diagram::dart_crossing(e);
      if (crossings.count(c)) {
        simple = false;
        break;
      }
      crossings.insert(c);
    }
    if (simple) push_candidate(0, {}, std::set<int>(comp.begin(), comp.end()));
  }

  // 1-gons: closed straight simple paths with a corner at the base crossing.
  for (const auto& p : paths) {
    if (p.from != p.to) continue;
    if (detail::strand_of_port(d, p.from, p.start_port) ==
        detail::strand_of_port(d, p.to, p.end_port))
      continue;  // straight through: not a corner
    std::set<int> edges(p.edges.begin(), p.edges.end());
    if (edges.size() != p.edges.size()) continue;
    push_candidate(1, {p.from}, std::move(edges));
  }

  // 2-gons: two disjoint simple straight paths with corners at both shared
  // endpoint crossings.
  for (size_t i = 0; i < paths.size(); ++i) {
    const auto& a = paths[i];
    if (a.from == a.to) continue;
    for (size_t j = i + 1; j < paths.size(); ++j) {
      const auto& b = paths[j];
      if (b.from == b.to) continue;
      bool parallel = b.from == a.from && b.to == a.to;
      bool anti = b.from == a.to && b.to == a.from;
      if (!parallel && !anti) continue;
      // corner condition at both endpoints: the two boundary arcs arrive on
      // different strands
      int b_port_at_afrom = parallel ? b.start_port : b.end_port;
      int b_port_at_ato = parallel ? b.end_port : b.start_port;
      if (detail::strand_of_port(d, a.from, a.start_port) ==
          detail::strand_of_port(d, a.from, b_port_at_afrom))
        continue;
      if (detail::strand_of_port(d, a.to, a.end_port) ==
          detail::strand_of_port(d, a.to, b_port_at_ato))
        continue;
      // interiors must avoid each other and both endpoints
      std::set<int> crossings;
      bool ok = true;
      auto scan_interior = [&](const detail::StraightPath& p) {
        for (size_t t = 0; t + 1 < p.edges.size() && ok; ++t) {
          int c = Diagram::dart_crossing(d.mate(p.edges[t]));
          if (c == a.from || c == a.to || crossings.count(c)) ok = false;
          crossings.insert(c);
        }
      };
      scan_interior(a);
      scan_interior(b);
      if (!ok) continue;
      std::set<int> edges(a.edges.begin(), a.edges.end());
      for (int e : b.edges) edges.insert(e);
      if (edges.size() != a.edges.size() + b.edges.size()) continue;
      push_candidate(2, {a.from, a.to}, std::move(edges));
    }
  }
  return out;
}

// Innermost f-gon of the piece containing the least edge (or a 0-gon witness
// when the diagram has free loops, which the model keeps position-free).
inline FGonWitness find_innermost_fgon(const Diagram& d) {
  if (d.free_loops() > 0) {
    FGonWitness w;
    w.kind = 0;
    w.innermost = true;
    return w;
  }
  check(d.num_crossings() >= 1, Err::NoFGon, "no crossings and no free loops");
  int piece = d.piece_of_crossing(Diagram::dart_crossing(d.edges().front()));
  int outer = default_outer_face(d, piece);
  auto cands = fgon_candidates(d, piece, outer);
  check(!cands.empty(), Err::NoFGon, "diagram piece has no f-gon");
  // innermost: no other candidate's region strictly inside; deterministic pick
  std::sort(cands.begin(), cands.end(), [](const FGonWitness& a, const FGonWitness& b) {
    if (a.region.size() != b.region.size()) return a.region.size() < b.region.size();
    if (a.kind != b.kind) return a.kind < b.kind;
    return a.boundary < b.boundary;
  });
  for (auto& w : cands) {
    bool blocked = false;
    for (const auto& other : cands) {
      if (&other == &w) continue;
      if (other.region == w.region && other.boundary == w.boundary) continue;
      if (other.region.size() < w.region.size() &&
          std::includes(w.region.begin(), w.region.end(), other.region.begin(),
                        other.region.end())) {
        blocked = true;
        break;
      }
    }
    if (!blocked) {
      w.innermost = true;
      return w;
    }
  }
  fail(Err::Internal, "no innermost f-gon among candidates");
}

// Empty 3-gon (a triangular face) inside the witness region touching its
// boundary; innermost 2-gons with content always contain one.
inline int find_empty_triangle(const Diagram& d, const FGonWitness& x) {
  check(x.kind == 2, Err::NoTriangle, "witness is not a 2-gon");
  check(x.region.size() > 1, Err::NoTriangle, "2-gon interior is empty");
  std::set<int> boundary(x.boundary.begin(), x.boundary.end());
  int fallback = -1;
  for (int f : x.region) {
    const auto& orbit = d.face_orbits()[f];
    if (orbit.size() != 3) continue;
    std::set<int> cr, ed;
    for (int dart : orbit) {
      cr.insert(Diagram::dart_crossing(dart));
      ed.insert(d.is_tail_dart(dart) ? dart : d.mate(dart));
    }
    if (cr.size() != 3 || ed.size() != 3) continue;
    bool shares_edge = false, shares_corner = false;
    for (int e : ed)
      if (boundary.count(e)) shares_edge = true;
    for (int c : cr)
      if (std::find(x.corners.begin(), x.corners.end(), c) != x.corners.end() ||
          [&] {
            for (int e : boundary)
              if (Diagram::dart_crossing(e) == c ||
                  Diagram::dart_crossing(d.mate(e)) == c)
                return true;
            return false;
          }())
        shares_corner = true;
    if (shares_edge) return f;
    if (shares_corner && fallback < 0) fallback = f;
  }
  check(fallback >= 0, Err::NoTriangle,
        "no empty 3-gon touches the filled innermost 2-gon's boundary");
  return fallback;
}

// One emitted reduction step.
struct ReductionMove {
  Move move;
  int crossings_before = 0;
  int crossings_after = 0;
  std::string describe(const Diagram& before) const {
    std::string out = "{\"move\":\"" + move_name(move.kind) + "\"";
    switch (move.kind) {
      case Move::Kind::R1Remove:
        out += ",\"crossing\":" + std::to_string(before.crossing_label(move.a));
        break;
      case Move::Kind::R2Remove:
        out += ",\"crossings\":[" + std::to_string(before.crossing_label(move.a)) + "," +
               std::to_string(before.crossing_label(move.b)) + "]";
        break;
      case Move::Kind::R3: {
        out += ",\"face\":[";
        const auto& orbit = before.face_orbits()[move.a];
        for (size_t i = 0; i < orbit.size(); ++i) {
          if (i) out += ",";
          out += std::to_string(before.crossing_label(Diagram::dart_crossing(orbit[i])));
        }
        out += "]";
        break;
      }
      default: break;
    }
    out += ",\"crossings_after\":" + std::to_string(crossings_after) + "}";
    return out;
  }
};

struct ReductionResult {
  Diagram result;
  std::vector<ReductionMove> moves;
  std::vector<std::string> script;  // JSON lines
};

// Reduction of an untangled diagram to zero crossings by
// crossing-non-increasing moves. Directly removable face-level f-gons are
// taken first; when none exist, an R3 move across an empty triangle inside
// the innermost filled 2-gon frees one up.
inline ReductionResult reduce_untangled(const Diagram& start, const BasePoints& bp) {
  check(is_untangled(start, bp), Err::NotUntangled, "reduce_untangled needs L^u");
  ReductionResult res;
  res.result = start;
  Diagram d = start;
  long cap = 100 + 20L * start.num_crossings() * start.num_crossings();
  while (d.num_crossings() > 0) {
    check(cap-- > 0, Err::Internal, "reduction did not terminate");
    std::optional<Move> chosen;
    for (int c = 0; c < d.num_crossings() && !chosen; ++c)
      if (r1_removable(d, c)) chosen = Move{Move::Kind::R1Remove, c, -1, false, false};
    if (!chosen)
      for (size_t f = 0; f < d.face_orbits().size() && !chosen; ++f)
        if (r2_removable_face(d, static_cast<int>(f))) {
          const auto& orbit = d.face_orbits()[f];
          chosen = Move{Move::Kind::R2Remove, Diagram::dart_crossing(orbit[0]),
                        Diagram::dart_crossing(orbit[1]), false, false};
        }
    if (!chosen) {
      FGonWitness w = find_innermost_fgon(d);
      check(w.kind == 2, Err::Internal,
            "innermost f-gon with no removable face must be a filled 2-gon");
      int tri = find_empty_triangle(d, w);
      check(r3_applicable_face(d, tri), Err::Internal,
            "triangle in an untangled region does not support R3 (blocked middle strand)");
      chosen = Move{Move::Kind::R3, tri, -1, false, false};
    }
    Diagram next = apply_move(d, *chosen);
    check(next.num_crossings() <= d.num_crossings(), Err::Internal,
          "reduction move increased the crossing count");
    ReductionMove rm{*chosen, d.num_crossings(), next.num_crossings()};
    res.script.push_back(rm.describe(d));
    res.moves.push_back(rm);
    d = std::move(next);
  }
  res.result = d;
  return res;
}

}  // namespace skein
