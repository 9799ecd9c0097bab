// Tests for the graded ring of a complete simplicial fan: exact volume
// polynomials by chamber-verified interpolation, operator rings with their
// Poincare pairings, polytope classes as support vectors, top pairings as
// normalized mixed volumes, and simplicial common refinements.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"
#include "trop/cycle.hpp"
#include "trop/kp.hpp"

#include <map>
#include <vector>

using namespace trop;
using namespace troptest;

namespace {

Polytope hull(const std::vector<std::vector<long>>& pts) {
  return convex_hull(rpoints(pts));
}

Polytope unit_square() { return hull({{0, 0}, {1, 0}, {0, 1}, {1, 1}}); }
Polytope simplex2() { return hull({{0, 0}, {1, 0}, {0, 1}}); }
Polytope simplex3() { return hull({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}); }
Polytope unit_cube() {
  return hull({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}});
}

// conv{0, -e1, -e2}: its normal fan has rays e1, e2, -e1-e2.
Polytope lower_triangle() { return hull({{0, 0}, {-1, 0}, {0, -1}}); }

Polytope dilate(const Polytope& p, const Rat& s) {
  std::vector<RatVec> pts;
  for (const auto& v : p.vertices) pts.push_back(vec_scale(s, v));
  return convex_hull(pts);
}

Fan plane_fan() { return normal_fan(lower_triangle()); }
Fan square_fan() { return normal_fan(unit_square()); }

size_t ray_pos(const std::vector<IntVec>& rays, const std::vector<long>& v) {
  const IntVec target = ivec(v);
  for (size_t i = 0; i < rays.size(); ++i)
    if (rays[i] == target) return i;
  REQUIRE(false);
  return 0;
}

Exponent exponent_at(size_t m, const std::vector<size_t>& positions) {
  Exponent e(m, 0);
  for (size_t p : positions) ++e[p];
  return e;
}

Rat coeff_of(const Poly& p, const Exponent& e) {
  const auto it = p.find(e);
  return it == p.end() ? Rat(0) : it->second;
}

}  // namespace

TEST_SUITE("volume polynomials") {
  TEST_CASE("the plane fan gives half the square of the total support") {
    const Fan f = plane_fan();
    const RatVec h0 = class_of_polytope(f, lower_triangle());
    const VolumePolynomial v = volume_polynomial(f, h0);
    CHECK(v.num_rays == 3);
    CHECK(v.degree == 2);
    // V = (h1 + h2 + h3)^2 / 2, symmetric in all three rays.
    const size_t m = 3;
    for (size_t a = 0; a < m; ++a)
      for (size_t b = 0; b < m; ++b) {
        const Rat expect = a == b ? Rat(1) / Rat(2) : Rat(1);
        CHECK(coeff_of(v.coefficients, exponent_at(m, {a, b})) == expect);
      }
    CHECK(evaluate_poly(v.coefficients, h0) == Rat(1) / Rat(2));
    CHECK(evaluate_poly(v.coefficients, vec_scale(Rat(3), h0)) == Rat(9) / Rat(2));
  }

  TEST_CASE("the square fan gives the product of the side lengths") {
    const Fan f = square_fan();
    const std::vector<IntVec> rays = fan_rays(f);
    REQUIRE(rays.size() == 4);
    const size_t e1 = ray_pos(rays, {1, 0}), e1n = ray_pos(rays, {-1, 0});
    const size_t e2 = ray_pos(rays, {0, 1}), e2n = ray_pos(rays, {0, -1});
    const RatVec h0 = class_of_polytope(f, unit_square());
    const VolumePolynomial v = volume_polynomial(f, h0);
    // V = (h(e1) + h(-e1)) * (h(e2) + h(-e2)): one cross term for each way
    // of picking a horizontal and a vertical ray, and nothing else.
    for (size_t a : {e1, e1n})
      for (size_t b : {e2, e2n})
        CHECK(coeff_of(v.coefficients, exponent_at(4, {a, b})) == 1);
    CHECK(coeff_of(v.coefficients, exponent_at(4, {e1, e1n})) == 0);
    CHECK(coeff_of(v.coefficients, exponent_at(4, {e2, e2n})) == 0);
    CHECK(coeff_of(v.coefficients, exponent_at(4, {e1, e1})) == 0);
    CHECK(evaluate_poly(v.coefficients, h0) == 1);
  }

  TEST_CASE("the one-dimensional complete fan gives the segment length") {
    const Fan f = normal_fan(hull({{0}, {1}}));
    const VolumePolynomial v = volume_polynomial(f, {Rat(1), Rat(1)});
    CHECK(v.degree == 1);
    CHECK(coeff_of(v.coefficients, {1, 0}) == 1);
    CHECK(coeff_of(v.coefficients, {0, 1}) == 1);
  }

  TEST_CASE("any reference in the same chamber gives the same polynomial") {
    const Fan f = plane_fan();
    const RatVec a = class_of_polytope(f, lower_triangle());
    const VolumePolynomial va = volume_polynomial(f, a);
    const std::vector<IntVec> rays = fan_rays(f);
    RatVec b(3, Rat(1));
    b[ray_pos(rays, {-1, -1})] = Rat(-1) / Rat(2);
    const VolumePolynomial vb = volume_polynomial(f, b);
    CHECK(va.coefficients == vb.coefficients);
  }

  TEST_CASE("degenerate references are rejected") {
    const Fan f = plane_fan();
    CHECK_THROWS_AS(volume_polynomial(f, RatVec(3, Rat(0))), DomainError);
    CHECK_THROWS_AS(volume_polynomial(f, RatVec(2, Rat(1))), DomainError);
  }

  TEST_CASE("incomplete and non-simplicial fans are rejected") {
    const Fan incomplete = make_fan(2, {icone(2, {{1, 0}, {0, 1}})});
    CHECK_THROWS_AS(volume_polynomial(incomplete, RatVec(2, Rat(1))), DomainError);
    const Fan nonsimplicial = normal_fan(minkowski_sum(simplex3(), unit_cube()));
    CHECK_FALSE(is_simplicial(nonsimplicial));
    const RatVec h(fan_rays(nonsimplicial).size(), Rat(1));
    CHECK_THROWS_AS(volume_polynomial(nonsimplicial, h), DomainError);
  }
}

TEST_SUITE("graded rings of polynomials") {
  TEST_CASE("the monomial h1*h2 gives dimensions 1, 2, 1 and a hyperbolic pairing") {
    Poly p;
    p[{1, 1}] = Rat(1);
    const GradedRing ring = build_ring(p, 2, 2);
    CHECK(ring.dims == std::vector<size_t>{1, 2, 1});
    REQUIRE(ring.basis[1].size() == 2);
    CHECK(ring.basis[1][0] == Exponent{1, 0});
    CHECK(ring.basis[1][1] == Exponent{0, 1});
    CHECK(ring.pairing[1](0, 0) == 0);
    CHECK(ring.pairing[1](0, 1) == 1);
    CHECK(ring.pairing[1](1, 0) == 1);
    CHECK(ring.pairing[1](1, 1) == 0);
  }

  TEST_CASE("the squared total support collapses the middle degree to one") {
    // (h1 + h2 + h3)^2: all first partials coincide.
    Poly p;
    for (size_t a = 0; a < 3; ++a)
      for (size_t b = 0; b < 3; ++b) p[exponent_at(3, {a, b})] += Rat(1);
    const GradedRing ring = build_ring(p, 3, 2);
    CHECK(ring.dims == std::vector<size_t>{1, 1, 1});
  }

  TEST_CASE("the product of two binomials gives dimensions 1, 2, 1") {
    // 2 * (h1 + h2) * (h3 + h4).
    Poly p;
    for (size_t a : {0, 1})
      for (size_t b : {2, 3}) p[exponent_at(4, {a, b})] = Rat(2);
    const GradedRing ring = build_ring(p, 4, 2);
    CHECK(ring.dims == std::vector<size_t>{1, 2, 1});
  }

  TEST_CASE("scaling the polynomial scales the pairing but not the ring") {
    Poly p;
    for (size_t a = 0; a < 3; ++a)
      for (size_t b = 0; b < 3; ++b) p[exponent_at(3, {a, b})] += Rat(1);
    Poly q;
    for (const auto& [alpha, c] : p) q[alpha] = Rat(5) * c;
    const GradedRing rp = build_ring(p, 3, 2);
    const GradedRing rq = build_ring(q, 3, 2);
    CHECK(rp.dims == rq.dims);
    CHECK(rp.basis == rq.basis);
    for (size_t k = 0; k <= 2; ++k)
      for (size_t a = 0; a < rp.dims[k]; ++a)
        for (size_t b = 0; b < rp.dims[2 - k]; ++b)
          CHECK(rq.pairing[k](a, b) == Rat(5) * rp.pairing[k](a, b));
  }

  TEST_CASE("degenerate inputs are rejected") {
    CHECK_THROWS_AS(build_ring({}, 2, 2), DomainError);
    Poly inhomogeneous;
    inhomogeneous[{1, 0}] = Rat(1);
    CHECK_THROWS_AS(build_ring(inhomogeneous, 2, 2), DomainError);
    Poly wrong_arity;
    wrong_arity[{1, 1, 0}] = Rat(1);
    CHECK_THROWS_AS(build_ring(wrong_arity, 2, 2), DomainError);
  }
}

TEST_SUITE("polytope classes") {
  TEST_CASE("support values of the defining polytope") {
    const Fan f = plane_fan();
    const std::vector<IntVec> rays = fan_rays(f);
    const RatVec h = class_of_polytope(f, lower_triangle());
    CHECK(h[ray_pos(rays, {1, 0})] == 0);
    CHECK(h[ray_pos(rays, {0, 1})] == 0);
    CHECK(h[ray_pos(rays, {-1, -1})] == 1);
  }

  TEST_CASE("the unit square against its own fan") {
    const Fan f = square_fan();
    const std::vector<IntVec> rays = fan_rays(f);
    const RatVec h = class_of_polytope(f, unit_square());
    CHECK(h[ray_pos(rays, {1, 0})] == 1);
    CHECK(h[ray_pos(rays, {-1, 0})] == 0);
    CHECK(h[ray_pos(rays, {0, 1})] == 1);
    CHECK(h[ray_pos(rays, {0, -1})] == 0);
  }

  TEST_CASE("points are classes on any fan") {
    const Fan f = plane_fan();
    const std::vector<IntVec> rays = fan_rays(f);
    const RatVec h = class_of_polytope(f, hull({{2, 3}}));
    CHECK(h[ray_pos(rays, {1, 0})] == 2);
    CHECK(h[ray_pos(rays, {0, 1})] == 3);
    CHECK(h[ray_pos(rays, {-1, -1})] == -5);
  }

  TEST_CASE("segments are classes on the square fan") {
    const Fan f = square_fan();
    const std::vector<IntVec> rays = fan_rays(f);
    const RatVec h = class_of_polytope(f, hull({{0, 0}, {1, 0}}));
    CHECK(h[ray_pos(rays, {1, 0})] == 1);
    CHECK(h[ray_pos(rays, {-1, 0})] == 0);
    CHECK(h[ray_pos(rays, {0, 1})] == 0);
    CHECK(h[ray_pos(rays, {0, -1})] == 0);
  }

  TEST_CASE("non-linear support functions are rejected with the cone named") {
    // The square's support breaks across the ray -e1-e2 inside the plane
    // fan's third quadrant cone, and vice versa for the triangle on the
    // square fan.
    CHECK_THROWS_WITH_AS(static_cast<void>(class_of_polytope(plane_fan(), unit_square())),
                         doctest::Contains("not linear"), DomainError);
    CHECK_THROWS_AS(static_cast<void>(class_of_polytope(square_fan(), lower_triangle())),
                    DomainError);
  }
}

TEST_SUITE("top pairings") {
  TEST_CASE("the triangle squared on the plane fan") {
    const Fan f = plane_fan();
    const RatVec h = class_of_polytope(f, lower_triangle());
    const VolumePolynomial v = volume_polynomial(f, h);
    CHECK(top_pairing(f, v, {h, h}) == 1);
    const RatVec h2 = class_of_polytope(f, dilate(lower_triangle(), Rat(2)));
    CHECK(top_pairing(f, v, {h2, h2}) == 4);
    CHECK(top_pairing(f, v, {h, h2}) == 2);
  }

  TEST_CASE("two transverse segments pair to one on the square fan") {
    const Fan f = square_fan();
    const VolumePolynomial v = volume_polynomial(f, class_of_polytope(f, unit_square()));
    const RatVec hx = class_of_polytope(f, hull({{0, 0}, {1, 0}}));
    const RatVec hy = class_of_polytope(f, hull({{0, 0}, {0, 1}}));
    CHECK(top_pairing(f, v, {hx, hy}) == 1);
    CHECK(top_pairing(f, v, {hx, hx}) == 0);
    CHECK(top_pairing(f, v, {hy, hy}) == 0);
  }

  TEST_CASE("polarization: pairing a class with itself gives n! volumes") {
    const Fan f = square_fan();
    const VolumePolynomial v = volume_polynomial(f, class_of_polytope(f, unit_square()));
    for (const auto& q : {unit_square(), hull({{0, 0}, {2, 0}, {0, 1}, {2, 1}})}) {
      const RatVec h = class_of_polytope(f, q);
      CHECK(top_pairing(f, v, {h, h}) == Rat(2) * volume(q));
    }
  }

  TEST_CASE("argument counts and lengths are checked") {
    const Fan f = plane_fan();
    const RatVec h = class_of_polytope(f, lower_triangle());
    const VolumePolynomial v = volume_polynomial(f, h);
    CHECK_THROWS_AS(top_pairing(f, v, {h}), DomainError);
    CHECK_THROWS_AS(top_pairing(f, v, {h, RatVec(2, Rat(0))}), DomainError);
  }
}

TEST_SUITE("rings of fans") {
  TEST_CASE("the plane fan has Betti-like dimensions 1, 1, 1") {
    const Fan f = plane_fan();
    const GradedRing ring = ring_of_fan(f, class_of_polytope(f, lower_triangle()));
    CHECK(ring.dims == std::vector<size_t>{1, 1, 1});
    CHECK(ring.smooth_fan);
  }

  TEST_CASE("the square fan has dimensions 1, 2, 1") {
    const Fan f = square_fan();
    const GradedRing ring = ring_of_fan(f, class_of_polytope(f, unit_square()));
    CHECK(ring.dims == std::vector<size_t>{1, 2, 1});
    CHECK(ring.smooth_fan);
  }

  TEST_CASE("the segment fan has dimensions 1, 1") {
    const Fan f = normal_fan(hull({{0}, {3}}));
    const GradedRing ring = ring_of_fan(f, class_of_polytope(f, hull({{0}, {3}})));
    CHECK(ring.dims == std::vector<size_t>{1, 1});
    CHECK(ring.smooth_fan);
  }

  TEST_CASE("a non-unimodular simplicial fan is flagged as not smooth") {
    // Normal fan of conv{0, 2e1-e2, -e2}: simplicial but one cone has index 2.
    const Polytope q = hull({{0, 0}, {2, -1}, {0, -1}});
    const Fan f = normal_fan(q);
    REQUIRE(is_simplicial(f));
    const GradedRing ring = ring_of_fan(f, class_of_polytope(f, q));
    CHECK_FALSE(ring.smooth_fan);
    CHECK(ring.dims[0] == 1);
    CHECK(ring.dims[2] == 1);
  }
}

TEST_SUITE("simplicial common refinements") {
  TEST_CASE("the simplex and cube in 3-space get a common simplicial fan") {
    const auto refined = simplicial_common_refinement({simplex3(), unit_cube()});
    CHECK(is_complete(refined.fan));
    CHECK(is_simplicial(refined.fan));
    // Classes of both polytopes exist on it, so it refines both normal fans.
    const RatVec hs = class_of_polytope(refined.fan, simplex3());
    const RatVec hc = class_of_polytope(refined.fan, unit_cube());
    const VolumePolynomial v = volume_polynomial(refined.fan, refined.chamber_reference);
    CHECK(top_pairing(refined.fan, v, {hs, hc, hs}) == 3);
    CHECK(top_pairing(refined.fan, v, {hs, hs, hs}) == 1);
    CHECK(top_pairing(refined.fan, v, {hc, hc, hc}) == 6);
  }

  TEST_CASE("construction is deterministic for a fixed seed") {
    const auto a = simplicial_common_refinement({simplex3(), unit_cube()}, 7);
    const auto b = simplicial_common_refinement({simplex3(), unit_cube()}, 7);
    CHECK(a.chamber_reference == b.chamber_reference);
    CHECK(a.fan.cones.size() == b.fan.cones.size());
    CHECK(fan_rays(a.fan) == fan_rays(b.fan));
  }

  TEST_CASE("lower-dimensional sums are rejected") {
    CHECK_THROWS_AS(simplicial_common_refinement({hull({{1, 2}})}), DomainError);
    CHECK_THROWS_AS(simplicial_common_refinement({}), DomainError);
  }
}

TEST_SUITE("triple cross-checks") {
  TEST_CASE("square against triangle: all three intersection counts agree") {
    const Polytope a = unit_square();
    const Polytope b = lower_triangle();
    const auto refined = simplicial_common_refinement({a, b});
    const VolumePolynomial v = volume_polynomial(refined.fan, refined.chamber_reference);
    const Rat kp = top_pairing(refined.fan, v,
                               {class_of_polytope(refined.fan, a), class_of_polytope(refined.fan, b)});
    const Rat mv2 = Rat(2) * mixed_volume({a, b});
    const Rat tropical = intersection_number_of_hypersurfaces({a, b});
    CHECK(kp == 2);
    CHECK(mv2 == 2);
    CHECK(tropical == 2);
  }

  TEST_CASE("dilated simplices on the plane fan") {
    const Fan f = plane_fan();
    const VolumePolynomial v = volume_polynomial(f, class_of_polytope(f, lower_triangle()));
    const Polytope p2 = dilate(lower_triangle(), Rat(2));
    const Polytope p3 = dilate(lower_triangle(), Rat(3));
    const Rat kp =
        top_pairing(f, v, {class_of_polytope(f, p2), class_of_polytope(f, p3)});
    CHECK(kp == 6);
    CHECK(kp == Rat(2) * mixed_volume({p2, p3}));
    CHECK(kp == intersection_number_of_hypersurfaces({p2, p3}));
  }

  TEST_CASE("simplex and cube in 3-space across all three routes") {
    const auto refined = simplicial_common_refinement({simplex3(), unit_cube()});
    const VolumePolynomial v = volume_polynomial(refined.fan, refined.chamber_reference);
    const RatVec hs = class_of_polytope(refined.fan, simplex3());
    const RatVec hc = class_of_polytope(refined.fan, unit_cube());
    const Rat kp = top_pairing(refined.fan, v, {hs, hc, hs});
    const Rat mv = Rat(6) * mixed_volume({simplex3(), unit_cube(), simplex3()});
    const Rat tropical =
        intersection_number_of_hypersurfaces({simplex3(), unit_cube(), simplex3()});
    CHECK(kp == 3);
    CHECK(mv == 3);
    CHECK(tropical == 3);
  }
}
