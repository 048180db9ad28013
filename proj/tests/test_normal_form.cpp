#include "latgeo/normal_form.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace latgeo;

namespace {

// random element of GL(n,Z) as a product of elementary operations
IntMat random_unimodular(std::mt19937& rng, std::size_t n, int steps = 12) {
  IntMat a = IntMat::identity(n);
  std::uniform_int_distribution<int> pick(0, int(n) - 1);
  std::uniform_int_distribution<int> coef(-2, 2);
  std::uniform_int_distribution<int> op(0, 2);
  for (int s = 0; s < steps; ++s) {
    int i = pick(rng), j = pick(rng);
    switch (op(rng)) {
      case 0:
        if (i != j) a.add_multiple(i, coef(rng), j);
        break;
      case 1:
        if (i != j) a.swap_rows(i, j);
        break;
      default:
        a.negate_row(i);
    }
  }
  return a;
}

Polytope apply(const IntMat& a, const Polytope& p) {
  std::vector<IntVec> img;
  for (const IntVec& v : p.lattice_vertices()) img.push_back(matvec(a, v));
  return Polytope::from_vertices(img);
}

Polytope cube3() {
  std::vector<IntVec> v;
  for (int a : {-1, 1})
    for (int b : {-1, 1})
      for (int c : {-1, 1}) v.push_back({a, b, c});
  return Polytope::from_vertices(v);
}

}  // namespace

TEST_CASE("normal form is invariant under random unimodular maps") {
  std::mt19937 rng(42);
  Polytope fixtures[] = {
      cube3(),
      Polytope::from_vertices({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}}),
      Polytope::from_vertices({{1, 0}, {0, 1}, {-1, 0}, {0, -1}, {1, 1}, {-1, -1}}),
  };
  for (const Polytope& p : fixtures) {
    NormalFormKey k = normal_form(p, NormalFormMode::linear);
    for (int t = 0; t < 100; ++t) {
      IntMat a = random_unimodular(rng, p.ambient_dim());
      REQUIRE(normal_form(apply(a, p), NormalFormMode::linear) == k);
    }
  }
}

TEST_CASE("affine normal form also absorbs translations") {
  std::mt19937 rng(43);
  Polytope p = Polytope::from_vertices({{0, 0}, {1, 0}, {0, 1}, {2, 1}});
  NormalFormKey k = normal_form(p, NormalFormMode::affine);
  std::uniform_int_distribution<int> shift(-3, 3);
  for (int t = 0; t < 100; ++t) {
    IntMat a = random_unimodular(rng, 2);
    IntVec offset{shift(rng), shift(rng)};
    std::vector<IntVec> img;
    for (const IntVec& v : p.lattice_vertices()) img.push_back(add(matvec(a, v), offset));
    REQUIRE(normal_form(Polytope::from_vertices(img), NormalFormMode::affine) == k);
  }
  // linear mode distinguishes a translate with 0 inside from one outside
  REQUIRE(normal_form(p, NormalFormMode::affine) == k);
}

TEST_CASE("normal form separates non-isomorphic polytopes") {
  Polytope cube = cube3();
  Polytope simplex = Polytope::from_vertices({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}});
  REQUIRE(normal_form(cube, NormalFormMode::linear) !=
          normal_form(simplex, NormalFormMode::linear));
  // the hexagon is self-dual up to GL(2,Z)
  Polytope hex = Polytope::from_vertices({{1, 0}, {0, 1}, {-1, 0}, {0, -1}, {1, 1}, {-1, -1}});
  REQUIRE(normal_form(hex, NormalFormMode::linear) ==
          normal_form(hex.polar_dual(), NormalFormMode::linear));
}

TEST_CASE("linear normal form distinguishes positions of the origin") {
  Polytope a = Polytope::from_vertices({{0, 0}, {1, 0}, {0, 1}});
  Polytope b = Polytope::from_vertices({{-1, 0}, {0, 0}, {1, 1}, {0, -1}});
  (void)b;
  Polytope a_shift = Polytope::from_vertices({{1, 0}, {2, 0}, {1, 1}});
  REQUIRE(normal_form(a, NormalFormMode::affine) == normal_form(a_shift, NormalFormMode::affine));
  REQUIRE(normal_form(a, NormalFormMode::linear) != normal_form(a_shift, NormalFormMode::linear));
}

TEST_CASE("lower-dimensional normal form via the hull lattice") {
  Polytope seg1 = Polytope::from_vertices({{0, 0}, {1, 1}});
  Polytope seg2 = Polytope::from_vertices({{0, 0}, {1, 0}});
  REQUIRE(normal_form_any_dim(seg1, NormalFormMode::affine) ==
          normal_form_any_dim(seg2, NormalFormMode::affine));
  Polytope seg3 = Polytope::from_vertices({{0, 0}, {2, 2}});
  REQUIRE(normal_form_any_dim(seg1, NormalFormMode::affine) !=
          normal_form_any_dim(seg3, NormalFormMode::affine));
}
