#include "latgeo/polytope.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace latgeo;

namespace {

Polytope cube3() {
  std::vector<IntVec> v;
  for (int a : {-1, 1})
    for (int b : {-1, 1})
      for (int c : {-1, 1}) v.push_back({a, b, c});
  return Polytope::from_vertices(v);
}

Polytope octahedron() {
  return Polytope::from_vertices({{1, 0, 0},
                                  {-1, 0, 0},
                                  {0, 1, 0},
                                  {0, -1, 0},
                                  {0, 0, 1},
                                  {0, 0, -1}});
}

Polytope hexagon() {
  return Polytope::from_vertices({{1, 0}, {0, 1}, {-1, 0}, {0, -1}, {1, 1}, {-1, -1}});
}

}  // namespace

TEST_CASE("cross-polytope has 8 facets with normals (+-1,+-1,+-1) at offset -1") {
  Polytope p = octahedron();
  REQUIRE(p.vertices().size() == 6);
  REQUIRE(p.facets().size() == 8);
  for (const Facet& f : p.facets()) {
    REQUIRE(f.offset == -1);
    for (const Int& x : f.normal) REQUIRE((x == 1 || x == -1));
  }
}

TEST_CASE("cube from halfspaces has 8 vertices") {
  std::vector<Facet> hs;
  for (std::size_t i = 0; i < 3; ++i) {
    hs.push_back(Facet{unit_vector(3, i), -1});
    hs.push_back(Facet{negate(unit_vector(3, i)), -1});
  }
  Polytope p = Polytope::from_halfspaces(hs, {}, 3);
  REQUIRE(p.vertices().size() == 8);
  REQUIRE(p.facets().size() == 6);
  REQUIRE(p.is_lattice());
}

TEST_CASE("V->H->V round-trip on random 0/1-polytopes") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> bit(0, 1);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<IntVec> pts;
    for (int k = 0; k < 6; ++k) pts.push_back({bit(rng), bit(rng), bit(rng)});
    Polytope p = Polytope::from_vertices(pts);
    Polytope q = Polytope::from_halfspaces(p.facets(), p.equations(), 3);
    REQUIRE(p.vertices() == q.vertices());
  }
}

TEST_CASE("unbounded halfspace systems are rejected") {
  std::vector<Facet> hs{Facet{{1, 0}, 0}, Facet{{0, 1}, 0}};
  REQUIRE_THROWS_AS(Polytope::from_halfspaces(hs, {}, 2), domain_error);
}

TEST_CASE("infeasible halfspace systems give the explicit empty polytope") {
  std::vector<Facet> hs{Facet{{1}, 1}, Facet{{-1}, 1}};
  Polytope p = Polytope::from_halfspaces(hs, {}, 1);
  REQUIRE(p.is_empty());
}

TEST_CASE("polar dual of the cube is the octahedron") {
  Polytope d = cube3().polar_dual();
  REQUIRE(d.vertices() == octahedron().vertices());
}

TEST_CASE("polar dual is an involution on reflexive simplices") {
  Polytope s = Polytope::from_vertices({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}});
  REQUIRE(s.is_reflexive());
  Polytope dd = s.polar_dual().polar_dual();
  REQUIRE(dd.vertices() == s.vertices());
}

TEST_CASE("reflexivity and lattice point counts of the cube") {
  Polytope c = cube3();
  REQUIRE(c.is_reflexive());
  REQUIRE(c.lattice_points().size() == 27);
  auto interior = c.interior_lattice_points();
  REQUIRE(interior.size() == 1);
  REQUIRE(interior[0] == IntVec{0, 0, 0});
  REQUIRE_FALSE(c.is_hollow());
}

TEST_CASE("twice the standard triangle is hollow") {
  Polytope t = Polytope::from_vertices({{0, 0}, {2, 0}, {0, 2}});
  REQUIRE(t.is_hollow());
}

TEST_CASE("the hexagon is reflexive") { REQUIRE(hexagon().is_reflexive()); }

TEST_CASE("tangent cone at a cube vertex") {
  Cone c = cube3().tangent_cone(IntVec{1, 1, 1});
  REQUIRE(c.lineality.empty());
  std::vector<IntVec> gens = c.generators;
  std::sort(gens.begin(), gens.end());
  std::vector<IntVec> expect{{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}};
  std::sort(expect.begin(), expect.end());
  REQUIRE(gens == expect);
}

TEST_CASE("tangent cone at a facet-interior point is a halfspace") {
  Cone c = cube3().tangent_cone(IntVec{1, 0, 0});
  REQUIRE(c.lineality.size() == 2);
  REQUIRE(c.generators.size() == 1);
  REQUIRE(c.halfspaces == std::vector<IntVec>{{-1, 0, 0}});
}

TEST_CASE("tangent cone rejects outside points") {
  REQUIRE_THROWS_AS(cube3().tangent_cone(IntVec{2, 0, 0}), domain_error);
}

TEST_CASE("tangent cone edge directions of a sharp simplex") {
  Polytope s = Polytope::from_vertices({{1, 0}, {0, 1}, {-1, -2}});
  Cone c = s.tangent_cone(IntVec{-1, -2});
  std::vector<IntVec> gens = c.generators;
  std::sort(gens.begin(), gens.end());
  REQUIRE(gens == std::vector<IntVec>{{1, 1}, {1, 3}});
}

TEST_CASE("unimodularity of standard examples") {
  Polytope unit_cube = Polytope::from_vertices(
      {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}});
  REQUIRE(is_unimodular_polytope(unit_cube));
  Polytope simplex = Polytope::from_vertices({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  REQUIRE(is_unimodular_polytope(simplex));
  Polytope bad = Polytope::from_vertices({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 2}});
  REQUIRE_FALSE(is_unimodular_polytope(bad));
}

TEST_CASE("unimodularity in the lattice of the affine hull") {
  // a segment placed diagonally in Z^2; segments always pass
  Polytope seg = Polytope::from_vertices({{0, 0}, {1, 1}});
  REQUIRE(is_unimodular_polytope(seg));
  REQUIRE(is_unimodular_polytope(Polytope::from_vertices({{0, 0}, {2, 2}})));
  // area-two triangles with a basis cone at every vertex also pass
  REQUIRE(is_unimodular_polytope(Polytope::from_vertices({{0, 0}, {2, 0}, {0, 2}})));
  // a triangle with an index-2 vertex cone fails, also when embedded
  REQUIRE_FALSE(is_unimodular_polytope(Polytope::from_vertices({{0, 0}, {1, 0}, {1, 2}})));
  REQUIRE_FALSE(
      is_unimodular_polytope(Polytope::from_vertices({{0, 0, 0}, {1, 0, 1}, {1, 2, 1}})));
}

TEST_CASE("edge count at vertices of unimodular polytopes equals dim") {
  Polytope c = cube3();
  REQUIRE(is_unimodular_polytope(c));
  for (const RatVec& v : c.vertices()) {
    Cone t = c.tangent_cone(v);
    REQUIRE(t.generators.size() == c.dim());
  }
}

TEST_CASE("faces of the cube") {
  Polytope c = cube3();
  REQUIRE(c.faces(2).size() == 6);
  REQUIRE(c.faces(1).size() == 12);
  REQUIRE(c.faces(0).size() == 8);
}

TEST_CASE("intersections") {
  Polytope c = cube3();
  Polytope half = c.intersect({Facet{{1, 0, 0}, 0}});
  REQUIRE(half.vertices().size() == 8);
  for (const RatVec& v : half.vertices()) REQUIRE(v[0] >= 0);

  // octahedron cut to the positive orthant is the standard simplex
  Polytope oct = octahedron();
  std::vector<Facet> orthant;
  for (std::size_t i = 0; i < 3; ++i) orthant.push_back(Facet{unit_vector(3, i), 0});
  Polytope sim = oct.intersect(orthant);
  std::vector<RatVec> expect = Polytope::from_vertices({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}})
                                   .vertices();
  REQUIRE(sim.vertices() == expect);

  // empty intersection is an explicit empty result
  Polytope none = c.intersect({Facet{{1, 0, 0}, 5}});
  REQUIRE(none.is_empty());

  // intersection with a superset region is the identity
  Polytope same = c.intersect(std::vector<Facet>{});
  REQUIRE(same.vertices() == c.vertices());
}

TEST_CASE("lattice points agree with brute force on fixtures") {
  Polytope hex = hexagon();
  auto pts = hex.lattice_points();
  std::vector<IntVec> brute;
  for (Int x = -2; x <= 2; ++x)
    for (Int y = -2; y <= 2; ++y)
      if (hex.contains(IntVec{x, y})) brute.push_back({x, y});
  std::sort(brute.begin(), brute.end());
  REQUIRE(pts == brute);
  REQUIRE(pts.size() == 7);
}

TEST_CASE("lower-dimensional polytopes carry equations") {
  Polytope face = Polytope::from_vertices({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  REQUIRE(face.dim() == 2);
  REQUIRE(face.equations().size() == 1);
  REQUIRE(face.contains(IntVec{1, 0, 0}));
  REQUIRE_FALSE(face.contains(IntVec{0, 0, 0}));
}

TEST_CASE("rational vertices survive a round trip") {
  std::vector<Facet> hs{Facet{{2, 0}, -1}, Facet{{-2, 0}, -1}, Facet{{0, 1}, 0},
                        Facet{{0, -1}, -1}};
  Polytope p = Polytope::from_halfspaces(hs, {}, 2);
  REQUIRE_FALSE(p.is_lattice());
  REQUIRE(p.vertices().size() == 4);
}
