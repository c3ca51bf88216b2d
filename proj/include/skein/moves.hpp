#pragma once

// Reidemeister moves on diagrams. Every move validates its face-level
// precondition, returns a fresh validated diagram, and preserves component
// order and crossing labels where the crossings survive.

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "skein/diagram.hpp"
#include "skein/error.hpp"

namespace skein {

// --- R1 -----------------------------------------------------------------------

// The crossing bounds a 1-gon: one of its edges is a loop between
// CCW-adjacent ports.
inline bool r1_removable(const Diagram& d, int c) {
  for (int p = 0; p < 4; ++p)
    if (d.mate(Diagram::dart(c, p)) == Diagram::dart(c, (p + 1) & 3)) return true;
  return false;
}

inline Diagram apply_r1_remove(const Diagram& d, int c) {
  check(c >= 0 && c < d.num_crossings(), Err::UnknownCrossing, std::to_string(c));
  int lp = -1;
  for (int p = 0; p < 4 && lp < 0; ++p)
    if (d.mate(Diagram::dart(c, p)) == Diagram::dart(c, (p + 1) & 3)) lp = p;
  check(lp >= 0, Err::MovePreconditionFailed,
        "crossing " + std::to_string(d.crossing_label(c)) + " does not bound a 1-gon");
  // loop occupies ports lp, lp+1; the strand passes straight through the
  // other two.
  int q1 = (lp + 2) & 3, q2 = (lp + 3) & 3;
  int in_port = d.is_head_port(c, q1) ? q1 : q2;
  int out_port = in_port == q1 ? q2 : q1;
  check(d.is_head_port(c, in_port) && !d.is_head_port(c, out_port), Err::Internal,
        "kink through-strand roles");
  Diagram::RemovalPlan plan;
  auto& pass = plan[c];
  pass.fill(-1);
  pass[in_port] = out_port;
  return d.remove_crossings(plan);
}

// Add a kink on edge e. If under_first, the strand passes under at the first
// visit of the new crossing; positive selects the crossing sign. The four
// combinations realize the four kink types (which side the loop lies on is
// determined by under_first together with the sign).
inline Diagram apply_r1_add(const Diagram& d, int e, bool under_first, bool positive) {
  check(d.has_edge(e), Err::UnknownEdge, std::to_string(e));
  int n = d.num_crossings();
  std::vector<Diagram::Crossing> cr;
  cr.reserve(n + 1);
  for (int c = 0; c < n; ++c) cr.push_back(d.crossing(c));
  Diagram::Crossing nc;
  nc.over_in = positive ? 3 : 1;
  int max_label = 0;
  for (int c = 0; c < n; ++c) max_label = std::max(max_label, d.crossing_label(c));
  nc.label = max_label + 1;
  int over_in = nc.over_in, over_out = 4 - over_in;
  int in1 = under_first ? 0 : over_in;
  int out1 = under_first ? 2 : over_out;
  int in2 = under_first ? over_in : 0;
  int out2 = under_first ? over_out : 2;
  int h = d.mate(e);
  auto set = [&](int a, int b) {
    cr[Diagram::dart_crossing(a)].adj[Diagram::dart_port(a)] = b;
    cr[Diagram::dart_crossing(b)].adj[Diagram::dart_port(b)] = a;
  };
  cr.push_back(nc);
  set(e, Diagram::dart(n, in1));
  set(Diagram::dart(n, out1), Diagram::dart(n, in2));
  set(Diagram::dart(n, out2), h);
  return Diagram::from_parts(std::move(cr), d.free_loops(), d, {});
}

// --- R2 -----------------------------------------------------------------------

// A face orbit of size two bounded by two distinct edges between two distinct
// crossings, one edge passing over at both corners and the other under.
inline bool r2_removable_face(const Diagram& d, int face_id) {
  const auto& orbit = d.face_orbits()[face_id];
  if (orbit.size() != 2) return false;
  int e1 = d.edge_at(Diagram::dart_crossing(orbit[0]), Diagram::dart_port(orbit[0]));
  int e2 = d.edge_at(Diagram::dart_crossing(orbit[1]), Diagram::dart_port(orbit[1]));
  if (e1 == e2) return false;
  int c1 = Diagram::dart_crossing(orbit[0]), c2 = Diagram::dart_crossing(orbit[1]);
  if (c1 == c2) return false;
  auto over_at = [&](int dart) { return (Diagram::dart_port(dart) & 1) == 1; };
  auto coherent = [&](int e) {
    bool a = over_at(e), b = over_at(d.mate(e));
    return a == b;
  };
  if (!coherent(e1) || !coherent(e2)) return false;
  bool o1 = over_at(e1), o2 = over_at(e2);
  return o1 != o2;
}

inline Diagram apply_r2_remove(const Diagram& d, int c1, int c2) {
  check(c1 >= 0 && c1 < d.num_crossings() && c2 >= 0 && c2 < d.num_crossings() && c1 != c2,
        Err::UnknownCrossing, "r2_remove crossings");
  int found = -1;
  for (size_t f = 0; f < d.face_orbits().size(); ++f) {
    const auto& orbit = d.face_orbits()[f];
    if (orbit.size() != 2) continue;
    int a = Diagram::dart_crossing(orbit[0]), b = Diagram::dart_crossing(orbit[1]);
    if ((a == c1 && b == c2) || (a == c2 && b == c1)) {
      if (r2_removable_face(d, static_cast<int>(f))) {
        found = static_cast<int>(f);
        break;
      }
    }
  }
  check(found >= 0, Err::MovePreconditionFailed,
        "no coherent 2-gon between the crossings");
  Diagram::RemovalPlan plan;
  for (int c : {c1, c2}) {
    auto& pass = plan[c];
    pass.fill(-1);
    pass[0] = 2;
    pass[d.over_in(c)] = d.over_out(c);
  }
  return d.remove_crossings(plan);
}

// Push edge(d1) over edge(d2) across the face both darts border. d1 and d2
// are face-orbit darts (travel along edge from the dart's end to its mate's).
inline Diagram apply_r2_add_at(const Diagram& d, int d1, int d2) {
  check(d.face_of_dart(d1) == d.face_of_dart(d2), Err::MovePreconditionFailed,
        "edges do not border a common face");
  auto edge_of = [&](int dd) { return d.is_tail_dart(dd) ? dd : d.mate(dd); };
  int e1 = edge_of(d1), e2 = edge_of(d2);
  check(e1 != e2, Err::MovePreconditionFailed, "cannot poke an edge across itself");

  bool o1 = d.is_tail_dart(d1);  // orientation of e1 agrees with face travel
  bool o2 = d.is_tail_dart(d2);
  int t1 = e1, h1 = d.mate(e1), t2 = e2, h2 = d.mate(e2);

  int n = d.num_crossings();
  int P = n, Q = n + 1;  // P: first crossing hit by the overpass along travel
  std::vector<Diagram::Crossing> cr;
  cr.reserve(n + 2);
  for (int c = 0; c < n; ++c) cr.push_back(d.crossing(c));
  int max_label = 0;
  for (int c = 0; c < n; ++c) max_label = std::max(max_label, d.crossing_label(c));

  // geometric directions E,N,W,S -> ports, per crossing, fixed by the under
  // strand's entry side (e2 is the under strand at both new crossings)
  // under enters from the west when o2, from the east otherwise.
  auto geo = [&](bool under_from_west) {
    // returns port of E,N,W,S
    std::array<int, 4> g{};
    if (under_from_west) {
      g[2] = 0;  // W
      g[3] = 1;  // S
      g[0] = 2;  // E
      g[1] = 3;  // N
    } else {
      g[0] = 0;  // E
      g[1] = 1;  // N
      g[2] = 2;  // W
      g[3] = 3;  // S
    }
    return g;
  };
  auto gP = geo(o2), gQ = geo(o2);
  Diagram::Crossing cp, cq;
  cp.label = max_label + 1;
  cq.label = max_label + 2;
  // over strand (e1) enters P at S when o1 (ascends first at P), else at N;
  // at Q it is the other way round.
  int p_over_in_geo = o1 ? 3 : 1;  // S : N
  int q_over_in_geo = o1 ? 1 : 3;
  cp.over_in = gP[p_over_in_geo];
  cq.over_in = gQ[q_over_in_geo];
  check(cp.over_in == 1 || cp.over_in == 3, Err::Internal, "r2 port layout");
  check(cq.over_in == 1 || cq.over_in == 3, Err::Internal, "r2 port layout");
  cr.push_back(cp);
  cr.push_back(cq);

  auto set = [&](int a, int b) {
    cr[Diagram::dart_crossing(a)].adj[Diagram::dart_port(a)] = b;
    cr[Diagram::dart_crossing(b)].adj[Diagram::dart_port(b)] = a;
  };
  auto PD = [&](int g) { return Diagram::dart(P, gP[g]); };
  auto QD = [&](int g) { return Diagram::dart(Q, gQ[g]); };
  constexpr int E = 0, N = 1, W = 2, S = 3;

  // under strand e2: travels east (Q first) when o2, west (P first) otherwise
  if (o2) {
    set(t2, QD(W));
    set(QD(E), PD(W));
    set(PD(E), h2);
  } else {
    set(t2, PD(E));
    set(PD(W), QD(E));
    set(QD(W), h2);
  }
  // over strand e1: travels west; ascends at P when o1 (P first), else enters
  // at Q from the south.
  if (o1) {
    set(t1, PD(S));
    set(PD(N), QD(N));
    set(QD(S), h1);
  } else {
    set(t1, QD(S));
    set(QD(N), PD(N));
    set(PD(S), h1);
  }
  return Diagram::from_parts(std::move(cr), d.free_loops(), d, {});
}

// Convenience wrapper: picks the lowest common face and its first dart pair.
inline Diagram apply_r2_add(const Diagram& d, int e1, int e2) {
  check(d.has_edge(e1), Err::UnknownEdge, std::to_string(e1));
  check(d.has_edge(e2), Err::UnknownEdge, std::to_string(e2));
  check(e1 != e2, Err::MovePreconditionFailed, "cannot poke an edge across itself");
  for (size_t f = 0; f < d.face_orbits().size(); ++f) {
    const auto& orbit = d.face_orbits()[f];
    int d1 = -1, d2 = -1;
    for (int dd : orbit) {
      int e = d.is_tail_dart(dd) ? dd : d.mate(dd);
      if (e == e1 && d1 < 0) d1 = dd;
      if (e == e2 && d2 < 0) d2 = dd;
    }
    if (d1 >= 0 && d2 >= 0) return apply_r2_add_at(d, d1, d2);
  }
  fail(Err::MovePreconditionFailed, "edges do not border a common face");
}

// --- R3 -----------------------------------------------------------------------

struct TrianglePass {
  int in, out;  // darts of one strand passage through a crossing
  friend bool operator==(const TrianglePass& a, const TrianglePass& b) {
    return a.in == b.in && a.out == b.out;
  }
};

// The 3-gon face supports an R3 move iff one of its boundary strands passes
// entirely over or entirely under the other two at its two corners.
inline bool r3_applicable_face(const Diagram& d, int face_id) {
  const auto& orbit = d.face_orbits()[face_id];
  if (orbit.size() != 3) return false;
  std::set<int> crossings, edges;
  for (int dd : orbit) {
    crossings.insert(Diagram::dart_crossing(dd));
    edges.insert(d.is_tail_dart(dd) ? dd : d.mate(dd));
  }
  if (crossings.size() != 3 || edges.size() != 3) return false;
  for (int e : edges) {
    bool ot = (Diagram::dart_port(e) & 1) == 1;
    bool oh = (Diagram::dart_port(d.mate(e)) & 1) == 1;
    if (ot == oh) return true;
  }
  return false;
}

inline Diagram apply_r3(const Diagram& d, int face_id) {
  check(face_id >= 0 && face_id < static_cast<int>(d.face_orbits().size()),
        Err::MovePreconditionFailed, "no such face");
  const auto& orbit = d.face_orbits()[face_id];
  check(orbit.size() == 3, Err::MovePreconditionFailed, "face is not a 3-gon");
  std::set<int> crossing_set;
  std::vector<int> edges;
  for (int dd : orbit) {
    crossing_set.insert(Diagram::dart_crossing(dd));
    int e = d.is_tail_dart(dd) ? dd : d.mate(dd);
    if (std::find(edges.begin(), edges.end(), e) == edges.end()) edges.push_back(e);
  }
  check(crossing_set.size() == 3 && edges.size() == 3, Err::MovePreconditionFailed,
        "degenerate 3-gon");
  // slide strand: over at both corners preferred, else under at both
  std::sort(edges.begin(), edges.end());
  int slide = -1;
  for (int want_over = 1; want_over >= 0 && slide < 0; --want_over)
    for (int e : edges) {
      bool ot = (Diagram::dart_port(e) & 1) == 1;
      bool oh = (Diagram::dart_port(d.mate(e)) & 1) == 1;
      if (ot == oh && ot == (want_over == 1)) {
        slide = e;
        break;
      }
    }
  check(slide >= 0, Err::MovePreconditionFailed,
        "3-gon has no strand passing over or under both opposite strands");

  auto pass_at = [&](int dart_on_strand) {
    int c = Diagram::dart_crossing(dart_on_strand);
    int p = Diagram::dart_port(dart_on_strand);
    TrianglePass ps;
    if (p == 0 || p == 2) {
      ps.in = Diagram::dart(c, 0);
      ps.out = Diagram::dart(c, 2);
    } else {
      ps.in = Diagram::dart(c, d.over_in(c));
      ps.out = Diagram::dart(c, d.over_out(c));
    }
    return ps;
  };

  // Flipping the triangle swaps, along each of the three boundary strands,
  // its two passes through the triangle's corners (for an edge with tail at
  // ct and head at ch the strand passes ct then ch; afterwards ch comes
  // first). The slide strand only carries the precondition.
  std::vector<std::pair<TrianglePass, TrianglePass>> swaps;
  for (int e : edges) {
    TrianglePass first = pass_at(e);
    TrianglePass second = pass_at(d.mate(e));
    swaps.push_back({first, second});
  }
  check(swaps.size() == 3, Err::Internal, "expected three pass swaps");

  // Walk the strand cycles containing the swapped passes and rebuild their
  // succession with each swap applied.
  std::vector<std::pair<int, int>> new_adj;
  std::set<int> visited_in;
  auto strand_next_in = [&](const TrianglePass& ps) { return d.mate(ps.out); };
  auto pass_of_in = [&](int in_dart) {
    int c = Diagram::dart_crossing(in_dart);
    int p = Diagram::dart_port(in_dart);
    TrianglePass ps;
    ps.in = in_dart;
    ps.out = Diagram::dart(c, d.continuation_port(c, p));
    return ps;
  };
  for (const auto& [first, second] : swaps) {
    if (visited_in.count(first.in)) continue;
    std::vector<TrianglePass> cycle;
    TrianglePass cur = first;
    do {
      cycle.push_back(cur);
      visited_in.insert(cur.in);
      cur = pass_of_in(strand_next_in(cur));
    } while (!(cur == first));
    // apply every swap whose passes live in this cycle
    for (const auto& [a, b] : swaps) {
      auto ia = std::find(cycle.begin(), cycle.end(), a);
      if (ia == cycle.end()) continue;
      auto ib = std::find(cycle.begin(), cycle.end(), b);
      check(ib != cycle.end(), Err::Internal, "swap pair split across strands");
      std::iter_swap(ia, ib);
    }
    for (size_t i = 0; i < cycle.size(); ++i) {
      const auto& u = cycle[i];
      const auto& w = cycle[(i + 1) % cycle.size()];
      new_adj.push_back({u.out, w.in});
    }
  }

  std::vector<Diagram::Crossing> cr;
  cr.reserve(d.num_crossings());
  for (int c = 0; c < d.num_crossings(); ++c) cr.push_back(d.crossing(c));
  for (auto [a, b] : new_adj) {
    cr[Diagram::dart_crossing(a)].adj[Diagram::dart_port(a)] = b;
    cr[Diagram::dart_crossing(b)].adj[Diagram::dart_port(b)] = a;
  }
  return Diagram::from_parts(std::move(cr), d.free_loops(), d, {});
}

// --- move enumeration (for property tests and the reducer) --------------------

struct Move {
  enum class Kind { R1Add, R1Remove, R2Add, R2Remove, R3 } kind;
  int a = -1, b = -1;      // move-specific: edges, crossings or face
  bool flag1 = false, flag2 = false;
};

inline Diagram apply_move(const Diagram& d, const Move& m) {
  switch (m.kind) {
    case Move::Kind::R1Add: return apply_r1_add(d, m.a, m.flag1, m.flag2);
    case Move::Kind::R1Remove: return apply_r1_remove(d, m.a);
    case Move::Kind::R2Add: return apply_r2_add_at(d, m.a, m.b);
    case Move::Kind::R2Remove: return apply_r2_remove(d, m.a, m.b);
    case Move::Kind::R3: return apply_r3(d, m.a);
  }
  fail(Err::Internal, "bad move kind");
}

inline std::string move_name(Move::Kind k) {
  switch (k) {
    case Move::Kind::R1Add: return "R1+";
    case Move::Kind::R1Remove: return "R1-";
    case Move::Kind::R2Add: return "R2+";
    case Move::Kind::R2Remove: return "R2-";
    case Move::Kind::R3: return "R3";
  }
  return "?";
}

// All applicable moves; additions are enumerated only when allow_adds.
inline std::vector<Move> applicable_moves(const Diagram& d, bool allow_adds) {
  std::vector<Move> out;
  for (int c = 0; c < d.num_crossings(); ++c)
    if (r1_removable(d, c)) out.push_back({Move::Kind::R1Remove, c, -1, false, false});
  for (size_t f = 0; f < d.face_orbits().size(); ++f) {
    if (r2_removable_face(d, static_cast<int>(f))) {
      const auto& orbit = d.face_orbits()[f];
      out.push_back({Move::Kind::R2Remove, Diagram::dart_crossing(orbit[0]),
                     Diagram::dart_crossing(orbit[1]), false, false});
    }
    if (r3_applicable_face(d, static_cast<int>(f)))
      out.push_back({Move::Kind::R3, static_cast<int>(f), -1, false, false});
  }
  if (allow_adds) {
    for (int e : d.edges())
      for (bool uf : {false, true})
        for (bool pos : {false, true})
          out.push_back({Move::Kind::R1Add, e, -1, uf, pos});
    for (const auto& orbit : d.face_orbits()) {
      for (size_t i = 0; i < orbit.size(); ++i)
        for (size_t j = 0; j < orbit.size(); ++j) {
          if (i == j) continue;
          int d1 = orbit[i], d2 = orbit[j];
          auto edge_of = [&](int dd) { return d.is_tail_dart(dd) ? dd : d.mate(dd); };
          if (edge_of(d1) == edge_of(d2)) continue;
          out.push_back({Move::Kind::R2Add, d1, d2, false, false});
        }
    }
  }
  return out;
}

}  // namespace skein
