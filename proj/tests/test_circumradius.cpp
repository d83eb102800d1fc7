#include "circum/circumradius.hpp"

#include <doctest.h>

#include <algorithm>
#include <array>

#include "test_support.hpp"

using namespace circum;
using namespace circum::testing;

namespace {

// Direct 4-factor product, no cancellation care: the oracle for the stable
// kernel on well-conditioned triples.
double neg_cm_naive(double a, double b, double c) {
  return (a + b + c) * (a + b - c) * (a - b + c) * (-a + b + c);
}

}  // namespace

TEST_CASE("cayley_menger golden values") {
  CHECK(cayley_menger(TriangleSides{1, 1, 1}) == -neg_cm_naive(1, 1, 1));
  CHECK(cayley_menger(TriangleSides{1, 1, 1}) == -3.0);
  CHECK(cayley_menger(TriangleSides{1, 1, 2}) == 0.0);
  CHECK(cayley_menger(TriangleSides{3, 4, 5}) == -neg_cm_naive(3, 4, 5));
  CHECK(cayley_menger(TriangleSides{3, 4, 5}) == -576.0);
  // D <= 0 on random metric triples; agreement with the naive product on
  // well-conditioned triangles (needles are exactly where the naive product
  // loses digits, so the oracle comparison stays on fat ones).
  RandomStream rng(11);
  for (int i = 0; i < 200; ++i) {
    const auto tri = random_triangle(rng, 0.5);
    TriangleSides s{(tri[0] - tri[1]).norm(), (tri[1] - tri[2]).norm(),
                    (tri[2] - tri[0]).norm()};
    CHECK(cayley_menger(s) <= 0.0);
    CHECK(rel_close(-cayley_menger(s), neg_cm_naive(s.a, s.b, s.c), 1e-12));
  }
}

TEST_CASE("cayley_menger rejects non-metric sides") {
  CHECK_THROWS_AS(cayley_menger(TriangleSides{1, 1, 2.1}), InvalidMetric);
  CHECK_THROWS_AS(cayley_menger(TriangleSides{10, 4, 5}), InvalidMetric);
  CHECK_THROWS_AS(cayley_menger(TriangleSides{-1, 1, 1}), InvalidMetric);
  // Violations inside the 1e-9 * perimeter band clamp to collinear.
  CHECK(cayley_menger(TriangleSides{1, 1, 2 + 1e-12}) == 0.0);
}

TEST_CASE("circumradius golden values") {
  const ExtendedRadius equilateral = circumradius(TriangleSides{1, 1, 1});
  REQUIRE(equilateral.is_finite());
  CHECK(rel_close(equilateral.value(), 1.0 / std::sqrt(3.0), 1e-15));
  CHECK(rel_close(equilateral.value(), 0.5773502691896258, 1e-15));

  CHECK(circumradius(TriangleSides{1, 1, 2}).is_infinite());

  const ExtendedRadius isosceles = circumradius(TriangleSides{2, 2, 2});
  CHECK(rel_close(isosceles.value(), 2.0 / std::sqrt(3.0), 1e-15));
  CHECK(rel_close(isosceles.value(), 1.1547005383792515, 1e-15));

  CHECK(circumradius(TriangleSides{3, 4, 5}).value() == 2.5);  // Thales
}

TEST_CASE("circumradius error cases") {
  CHECK_THROWS_AS(circumradius(TriangleSides{0, 1, 1}), CoincidentPoints);
  CHECK_THROWS_AS(circumradius(TriangleSides{1, 0, 1}), CoincidentPoints);
  CHECK_THROWS_AS(circumradius(TriangleSides{1, 1, 3}), InvalidMetric);
}

TEST_CASE("circumradius permutation invariance is bitwise") {
  RandomStream rng(12);
  for (int i = 0; i < 100; ++i) {
    const auto tri = random_triangle(rng);
    const double a = (tri[0] - tri[1]).norm();
    const double b = (tri[1] - tri[2]).norm();
    const double c = (tri[2] - tri[0]).norm();
    std::array<double, 3> s{a, b, c};
    std::sort(s.begin(), s.end());
    const double reference =
        circumradius(TriangleSides{s[0], s[1], s[2]}).value();
    do {
      CHECK(circumradius(TriangleSides{s[0], s[1], s[2]}).value() ==
            reference);
    } while (std::next_permutation(s.begin(), s.end()));
  }
}

TEST_CASE("circumradius scale equivariance") {
  RandomStream rng(13);
  for (int i = 0; i < 100; ++i) {
    const auto tri = random_triangle(rng);
    TriangleSides s{(tri[0] - tri[1]).norm(), (tri[1] - tri[2]).norm(),
                    (tri[2] - tri[0]).norm()};
    const double r = circumradius(s).value();
    // Power-of-two scalings are exact.
    for (double c : {0.5, 2.0}) {
      CHECK(circumradius(TriangleSides{c * s.a, c * s.b, c * s.c}).value() ==
            c * r);
    }
    for (double c : {3.0, 10.0, 0.1}) {
      CHECK(rel_close(
          circumradius(TriangleSides{c * s.a, c * s.b, c * s.c}).value(),
          c * r, 1e-12));
    }
  }
}

TEST_CASE("circumradius lower bound: at least half the longest side") {
  RandomStream rng(14);
  for (int i = 0; i < 500; ++i) {
    const auto tri = random_triangle(rng, 1e-6);
    TriangleSides s{(tri[0] - tri[1]).norm(), (tri[1] - tri[2]).norm(),
                    (tri[2] - tri[0]).norm()};
    const ExtendedRadius r = circumradius(s);
    if (r.is_finite()) {
      const double longest = std::max({s.a, s.b, s.c});
      CHECK(r.value() >= longest / 2.0 - 1e-12);
    }
  }
}

TEST_CASE("circumradius agrees with the perpendicular-bisector oracle") {
  RandomStream rng(15);
  for (int i = 0; i < 1000; ++i) {
    const auto tri = random_triangle(rng);
    TriangleSides s{(tri[0] - tri[1]).norm(), (tri[1] - tri[2]).norm(),
                    (tri[2] - tri[0]).norm()};
    const double from_sides = circumradius(s).value();
    const double from_coords =
        circumradius_from_coordinates(tri[0], tri[1], tri[2]);
    CHECK(rel_close(from_sides, from_coords, 1e-9));
  }
}

TEST_CASE("degeneracy threshold keeps needles finite until the cutoff") {
  // A needle just off collinear: huge but finite radius.
  const double eps = 1e-10;
  const ExtendedRadius near_needle =
      circumradius(TriangleSides{1, 1, 2 * (1 - eps)});
  REQUIRE(near_needle.is_finite());
  CHECK(near_needle.value() > 1e4);
  // Exactly collinear at other scales: infinite.
  CHECK(circumradius(TriangleSides{0.5, 0.5, 1.0}).is_infinite());
  CHECK(circumradius(TriangleSides{3e100, 3e100, 6e100}).is_infinite());
  // The cutoff is configurable.
  CircumradiusOptions loose;
  loose.degeneracy_threshold = 1e-3;
  CHECK(circumradius(TriangleSides{1, 1, 2 * (1 - eps)}, loose).is_infinite());
}

TEST_CASE("circumradius_points matches sides route and ignores translation") {
  const NormSpec euclid = NormSpec::p_norm(2, 2.0);
  RandomStream rng(16);
  for (int i = 0; i < 200; ++i) {
    const auto tri = random_triangle(rng);
    const ExtendedRadius direct =
        circumradius_points(euclid, tri[0], tri[1], tri[2]);
    const Vector t = rng.uniform_vector(2, -20.0, 20.0);
    const ExtendedRadius shifted =
        circumradius_points(euclid, tri[0] + t, tri[1] + t, tri[2] + t);
    CHECK(rel_close(shifted.value(), direct.value(), 1e-12));
    CHECK(rel_close(direct.value(),
                    circumradius_from_coordinates(tri[0], tri[1], tri[2]),
                    1e-9));
  }
}

TEST_CASE("circumradius_points: Example-3 style degenerate sup-norm triple") {
  const NormSpec linf = NormSpec::p_norm(2, kInfinity);
  CHECK(circumradius_points(linf, vec2(0, 1), vec2(1, 0), vec2(-1, 0))
            .is_infinite());
  CHECK_THROWS_AS(
      circumradius_points(linf, vec2(0, 1), vec2(0, 1), vec2(-1, 0)),
      CoincidentPoints);
}

TEST_CASE("circumradius_points: Euclidean circle triples give the radius") {
  const NormSpec euclid = NormSpec::p_norm(2, 2.0);
  RandomStream rng(17);
  for (int i = 0; i < 200; ++i) {
    const double r = rng.uniform(0.1, 10.0);
    std::array<double, 3> th;
    for (auto& t : th) t = rng.uniform(0.0, 6.283185307179586);
    const Vector u = vec2(r * std::cos(th[0]), r * std::sin(th[0]));
    const Vector v = vec2(r * std::cos(th[1]), r * std::sin(th[1]));
    const Vector w = vec2(r * std::cos(th[2]), r * std::sin(th[2]));
    if ((u - v).norm() < 1e-6 || (v - w).norm() < 1e-6 ||
        (w - u).norm() < 1e-6)
      continue;
    CHECK(rel_close(circumradius_points(euclid, u, v, w).value(), r, 1e-10));
  }
}

TEST_CASE("kernels instantiate for other scalar types") {
  const TriangleSidesT<float> sides{3.0f, 4.0f, 5.0f};
  CHECK(cayley_menger(sides) == -576.0f);
  const ExtendedRadiusT<float> r = circumradius(sides);
  REQUIRE(r.is_finite());
  CHECK(r.value() == 2.5f);
  CHECK(circumradius(TriangleSidesT<float>{1.0f, 1.0f, 2.0f}).is_infinite());
}

TEST_CASE("ell-infinity equilateral family from the unit square") {
  // u = (-1, 1-s), v = (-1+s, 1), w = (-1, 1): equilateral with side s.
  const NormSpec linf = NormSpec::p_norm(2, kInfinity);
  const double s = 1.0;
  const ExtendedRadius r = circumradius_points(
      linf, vec2(-1, 1 - s), vec2(-1 + s, 1), vec2(-1, 1));
  CHECK(rel_close(r.value(), 1.0 / std::sqrt(3.0), 1e-12));
}
