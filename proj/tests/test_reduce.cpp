#include <doctest.h>

#include <random>

#include "skein/reduce.hpp"
#include "support.hpp"

using namespace skein;
using namespace skein::test;

TEST_CASE("fgon witnesses on simple diagrams") {
  // kink: the 1-gon
  Diagram k = Diagram::parse_pd("X(1,2,2,1)");
  FGonWitness w = find_innermost_fgon(k);
  CHECK(w.kind == 1);
  CHECK(w.innermost);
  CHECK(w.corners.size() == 1);

  // hopf: 2-gon witness
  Diagram hopf = close_braid(BraidWord::parse("2: 1 1"));
  FGonWitness wh = find_innermost_fgon(hopf);
  CHECK(wh.kind == 2);
  CHECK(wh.corners.size() == 2);

  // free loop: 0-gon
  FGonWitness w0 = find_innermost_fgon(Diagram::unlink(2));
  CHECK(w0.kind == 0);
  CHECK_THROWS_AS(find_innermost_fgon(Diagram{}), Error);
}

TEST_CASE("empty triangle preconditions") {
  Diagram hopf = close_braid(BraidWord::parse("2: 1 1"));
  FGonWitness wh = find_innermost_fgon(hopf);
  REQUIRE(wh.kind == 2);
  // empty 2-gon: precondition violation
  CHECK_THROWS_AS(find_empty_triangle(hopf, wh), Error);
}

TEST_CASE("filled 2-gon yields a triangle touching its boundary") {
  // The untangled octahedral shadow has no face-level f-gon at all: every
  // innermost f-gon is a region 2-gon crossed by arcs, so the filled-2-gon
  // triangle machinery must fire and return a boundary-touching empty 3-gon.
  Diagram d0 = close_braid(BraidWord::parse("3: 1 -2 1 -2 1 -2"));
  auto [d, bp] = make_untangled(d0, default_base_points(d0));
  FGonWitness w = find_innermost_fgon(d);
  REQUIRE(w.kind == 2);
  REQUIRE(w.region.size() > 1);
  int tri = find_empty_triangle(d, w);
  CHECK(d.face_orbits()[tri].size() == 3);
  CHECK(w.region.count(tri) > 0);
  // the triangle shares an edge with the 2-gon boundary
  std::set<int> boundary(w.boundary.begin(), w.boundary.end());
  bool shares = false;
  for (int dart : d.face_orbits()[tri]) {
    int e = d.is_tail_dart(dart) ? dart : d.mate(dart);
    if (boundary.count(e)) shares = true;
  }
  CHECK(shares);
  CHECK(r3_applicable_face(d, tri));
}

TEST_CASE("reduce untangled kink in one move") {
  Diagram k = Diagram::parse_pd("X(1,2,2,1)");
  BasePoints bp = default_base_points(k);
  auto [u, nbp] = make_untangled(k, bp);
  ReductionResult r = reduce_untangled(u, nbp);
  CHECK(r.result.num_crossings() == 0);
  CHECK(r.result.num_components() == 1);
  CHECK(r.moves.size() == 1);
  CHECK(r.moves[0].move.kind == Move::Kind::R1Remove);
}

TEST_CASE("reduce untangled trefoil and figure-eight closures") {
  for (const char* braid : {"2: 1 1 1", "3: 1 -2 1 -2"}) {
    Diagram d = close_braid(BraidWord::parse(braid));
    auto [u, bp] = make_untangled(d, default_base_points(d));
    ReductionResult r = reduce_untangled(u, bp);
    CHECK(r.result.num_crossings() == 0);
    CHECK(r.result.num_components() == d.num_components());
    for (const auto& m : r.moves) CHECK(m.crossings_after <= m.crossings_before);
  }
  Diagram fig8 = Diagram::parse_pd("X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)");
  auto [u8, bp8] = make_untangled(fig8, default_base_points(fig8));
  ReductionResult r8 = reduce_untangled(u8, bp8);
  CHECK(r8.result.num_crossings() == 0);
  CHECK(r8.result.num_components() == 1);
}

TEST_CASE("reduction requires untangled input") {
  Diagram tre = close_braid(BraidWord::parse("2: 1 1 1"));
  CHECK_THROWS_AS(reduce_untangled(tre, default_base_points(tre)), Error);
}

TEST_CASE("octahedral shadow reduces through the region machinery") {
  // closure of (s1 s2^-1)^3: the Borromean-rings shadow, all 8 faces are
  // 3-gons, so no face-level f-gon exists and the region 2-gon/triangle
  // step must fire.
  Diagram d = close_braid(BraidWord::parse("3: 1 -2 1 -2 1 -2"));
  auto [u, bp] = make_untangled(d, default_base_points(d));
  ReductionResult r = reduce_untangled(u, bp);
  CHECK(r.result.num_crossings() == 0);
  CHECK(r.result.num_components() == d.num_components());
  bool used_r3 = false;
  for (const auto& m : r.moves)
    if (m.move.kind == Move::Kind::R3) used_r3 = true;
  CHECK(used_r3);
}

TEST_CASE("random untangled diagrams reduce to zero crossings") {
  std::mt19937 rng(20260808);
  for (int it = 0; it < 40; ++it) {
    Diagram d = random_diagram(rng, 12);
    auto [u, bp] = make_untangled(d, default_base_points(d));
    ReductionResult r = reduce_untangled(u, bp);
    CHECK(r.result.num_crossings() == 0);
    CHECK(r.result.num_components() == d.num_components());
    CHECK(r.script.size() == r.moves.size());
    int prev = u.num_crossings();
    for (const auto& m : r.moves) {
      CHECK(m.crossings_before == prev);
      CHECK(m.crossings_after <= m.crossings_before);
      prev = m.crossings_after;
    }
  }
}
