#include "latgeo/fan.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace latgeo;

namespace {

Polytope octahedron() {
  return Polytope::from_vertices(
      {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}});
}

Polytope cube3() {
  std::vector<IntVec> v;
  for (int a : {-1, 1})
    for (int b : {-1, 1})
      for (int c : {-1, 1}) v.push_back({a, b, c});
  return Polytope::from_vertices(v);
}

}  // namespace

TEST_CASE("P1 has rays +1 and -1") {
  ShapeFan s = shape_projective_space(1);
  std::vector<IntVec> rays = s.fan.rays;
  std::sort(rays.begin(), rays.end());
  REQUIRE(rays == std::vector<IntVec>{{-1}, {1}});
  REQUIRE(is_complete(s.fan));
  REQUIRE(is_unimodular(s.fan));
}

TEST_CASE("ray map of P2") {
  IntMat m = ray_map(shape_projective_space(2));
  REQUIRE(m.rows() == 2);
  REQUIRE(m.cols() == 3);
  REQUIRE(m.col(0) == IntVec{1, 0});
  REQUIRE(m.col(1) == IntVec{0, 1});
  REQUIRE(m.col(2) == IntVec{-1, -1});
}

TEST_CASE("P1xP1 rays and factor partition") {
  ShapeFan s = shape_product(shape_projective_space(1), shape_projective_space(1));
  REQUIRE(s.fan.rays.size() == 4);
  REQUIRE(s.fan.max_cones.size() == 4);
  REQUIRE(s.factors.size() == 2);
  REQUIRE(s.factors[0] == std::vector<std::size_t>{0, 1});
  REQUIRE(s.factors[1] == std::vector<std::size_t>{2, 3});
  REQUIRE(s.product_of_projective_spaces);
  REQUIRE(is_complete(s.fan));
  REQUIRE(is_unimodular(s.fan));
  REQUIRE(is_valid_fan(s.fan));
  // ray map is block-diagonal in the factor partition
  IntMat m = ray_map(s);
  for (std::size_t r : s.factors[0]) REQUIRE(m(1, r) == 0);
  for (std::size_t r : s.factors[1]) REQUIRE(m(0, r) == 0);
}

TEST_CASE("completeness fails when a cone is dropped") {
  ShapeFan s = shape_product(shape_projective_space(1), shape_projective_space(1));
  Fan broken = s.fan;
  broken.max_cones.pop_back();
  REQUIRE(is_complete(s.fan));
  REQUIRE_FALSE(is_complete(broken));
}

TEST_CASE("dP7 is the star subdivision of P1xP1 at e1+e2") {
  ShapeFan s = shape_dp7();
  REQUIRE(s.fan.rays.size() == 5);
  REQUIRE(s.fan.rays.back() == IntVec{1, 1});
  REQUIRE(s.fan.max_cones.size() == 5);
  REQUIRE(is_complete(s.fan));
  REQUIRE(is_unimodular(s.fan));
  REQUIRE(is_valid_fan(s.fan));
}

TEST_CASE("dP6 and dP5' constructors") {
  for (const ShapeFan& s : {shape_dp6(), shape_dp5_prime()}) {
    REQUIRE(is_complete(s.fan));
    REQUIRE(is_unimodular(s.fan));
    REQUIRE(is_valid_fan(s.fan));
  }
  REQUIRE(shape_dp6().fan.rays.size() == 6);
  REQUIRE(shape_dp5_prime().fan.rays.size() == 7);
}

TEST_CASE("star subdivision at an existing ray is rejected") {
  ShapeFan s = shape_projective_space(2);
  REQUIRE_THROWS_AS(star_subdivision(s.fan, IntVec{1, 0}), domain_error);
}

TEST_CASE("shape labels") {
  REQUIRE(shape_by_label("P1xP1xP1").fan.rays.size() == 6);
  REQUIRE(shape_by_label("P2xP1").fan.rays.size() == 5);
  REQUIRE(shape_by_label("dP6xP1").fan.rays.size() == 8);
  REQUIRE(shape_by_label("pt").fan.dim == 0);
  REQUIRE_THROWS_AS(shape_by_label("Q3"), domain_error);
}

TEST_CASE("spanning fan of the octahedron is the orthant fan") {
  Fan f = spanning_fan(octahedron());
  REQUIRE(f.max_cones.size() == 8);
  REQUIRE(f.rays.size() == 6);
  REQUIRE(is_complete(f));
  REQUIRE(is_unimodular(f));
}

TEST_CASE("normal fan of the cube equals the spanning fan of the octahedron") {
  Fan nf = normal_fan(cube3());
  Fan sp = spanning_fan(octahedron());
  std::vector<IntVec> a = nf.rays, b = sp.rays;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  REQUIRE(a == b);
  REQUIRE(nf.max_cones.size() == sp.max_cones.size());
}

TEST_CASE("spanning fan of the hexagon is the dP6 fan") {
  Polytope hex = Polytope::from_vertices({{1, 0}, {0, 1}, {-1, 0}, {0, -1}, {1, 1}, {-1, -1}});
  Fan f = spanning_fan(hex);
  REQUIRE(f.max_cones.size() == 6);
  REQUIRE(is_unimodular(f));
  std::vector<IntVec> a = f.rays, b = shape_dp6().fan.rays;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  REQUIRE(a == b);
}

TEST_CASE("normal fan of a dilate is unimodular when the original is") {
  std::vector<IntVec> v;
  for (int a : {-2, 2})
    for (int b : {-2, 2})
      for (int c : {-2, 2}) v.push_back({a, b, c});
  REQUIRE(is_unimodular(normal_fan(Polytope::from_vertices(v))));
}

TEST_CASE("promote adds lineality and removes rays from 1-cones") {
  Fan p1 = shape_projective_space(1).fan;
  Fan f = promote(p1, 2);
  REQUIRE(f.dim == 3);
  REQUIRE(f.lineality.size() == 2);
  REQUIRE(f.max_cones.size() == 2);
  REQUIRE(is_complete(f));
  REQUIRE(is_unimodular(f));
  // quotient round-trips
  Fan q = quotient_fan(f);
  REQUIRE(q.dim == 1);
  std::vector<IntVec> rays = q.rays;
  std::sort(rays.begin(), rays.end());
  REQUIRE(rays == std::vector<IntVec>{{-1}, {1}});
}

TEST_CASE("quotient of promoted dP6 fan round-trips") {
  Fan f = promote(shape_dp6().fan, 1);
  Fan q = quotient_fan(f);
  std::vector<IntVec> a = q.rays, b = shape_dp6().fan.rays;
  REQUIRE(a == b);
  REQUIRE(q.max_cones.size() == 6);
}

TEST_CASE("fan automorphisms of the orthant fan form the full signed permutation group") {
  Fan f = spanning_fan(octahedron());
  auto aut = fan_automorphisms(f);
  REQUIRE(aut.size() == 48);
}

TEST_CASE("fan automorphisms of P2 form S3") {
  auto aut = fan_automorphisms(shape_projective_space(2).fan);
  REQUIRE(aut.size() == 6);
}
