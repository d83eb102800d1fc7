#pragma once

#include <algorithm>
#include <cmath>

#include "circum/norm_space.hpp"
#include "circum/types.hpp"

namespace circum {

/// Relative thresholds for the circumradius kernels.
struct CircumradiusOptions {
  /// A triple counts as metrically collinear (infinite circumradius) when
  /// sqrt(-D) <= degeneracy_threshold * abc / max(a,b,c), i.e. when the
  /// computed radius would exceed max(a,b,c) / degeneracy_threshold. The
  /// cutoff is relative to the triangle scale so the classification is
  /// scale equivariant.
  double degeneracy_threshold = 1e-14;
  /// The triangle inequality may fail by up to metric_tolerance * perimeter
  /// before the triple is rejected; distances produced by floating-point
  /// norm evaluations carry that much rounding.
  double metric_tolerance = 1e-9;
  /// A collinearity slack b + c - a (sides sorted descending) at or below
  /// this fraction of the perimeter is rounding noise, not signal: sides of
  /// collinear points that are not exactly representable come out a few
  /// ulps off exact, and the triple must still classify as collinear.
  /// Default 64 * 2^-52.
  double collinear_slack_tolerance = 64.0 * 2.220446049250313e-16;
};

/// The three pairwise distances a = d(u,v), b = d(v,w), c = d(w,u) of a
/// point triple.
template <class Scalar>
struct TriangleSidesT {
  Scalar a{0};
  Scalar b{0};
  Scalar c{0};
};

using TriangleSides = TriangleSidesT<double>;

namespace detail {

/// -D(u,v,w) = (a+b+c)(a+b-c)(a-b+c)(-a+b+c), evaluated with the
/// cancellation-safe grouping on sides sorted a >= b >= c. Near-degenerate
/// ("needle") triples keep full relative accuracy this way; the naive
/// expansion loses every digit there. A violation of the triangle
/// inequality beyond tolerance throws; a violation inside the tolerance
/// band clamps to 0 (collinear).
template <class Scalar>
Scalar neg_cayley_menger_sorted(Scalar a, Scalar b, Scalar c,
                                const CircumradiusOptions& opts) {
  if (c < Scalar(0)) throw InvalidMetric("triangle sides must be nonnegative");
  const Scalar perimeter = a + (b + c);
  Scalar slack = c - (a - b);  // the only inequality that can fail: b+c >= a
  if (slack < -opts.metric_tolerance * perimeter)
    throw InvalidMetric("triangle inequality violated beyond tolerance");
  if (slack <= opts.collinear_slack_tolerance * perimeter) slack = Scalar(0);
  return perimeter * slack * (c + (a - b)) * (a + (b - c));
}

template <class Scalar>
void sort_sides_descending(Scalar& a, Scalar& b, Scalar& c) {
  if (a < b) std::swap(a, b);
  if (b < c) std::swap(b, c);
  if (a < b) std::swap(a, b);
}

}  // namespace detail

/// Cayley-Menger determinant D(u,v,w) = -(a+b+c)(a+b-c)(a-b+c)(-a+b+c).
/// D <= 0 for metric triples, with D = 0 exactly for collinear ones.
template <class Scalar>
Scalar cayley_menger(const TriangleSidesT<Scalar>& sides,
                     const CircumradiusOptions& opts = {}) {
  Scalar a = sides.a, b = sides.b, c = sides.c;
  detail::sort_sides_descending(a, b, c);
  return -detail::neg_cayley_menger_sorted(a, b, c, opts);
}

/// Metric circumradius r(u,v,w) = abc / sqrt(-D). Collinear triples (and
/// triples within the degeneracy band) get the infinite radius. The result
/// is bit-identical under all six side orderings and satisfies
/// r >= max(a,b,c)/2.
template <class Scalar>
ExtendedRadiusT<Scalar> circumradius(const TriangleSidesT<Scalar>& sides,
                                     const CircumradiusOptions& opts = {}) {
  Scalar a = sides.a, b = sides.b, c = sides.c;
  detail::sort_sides_descending(a, b, c);
  if (!(c > Scalar(0)))
    throw CoincidentPoints("circumradius requires mutually distinct points");
  const Scalar neg_d = detail::neg_cayley_menger_sorted(a, b, c, opts);
  const Scalar abc = a * b * c;
  const Scalar root = std::sqrt(neg_d);
  if (root <= opts.degeneracy_threshold * (abc / a))
    return ExtendedRadiusT<Scalar>::infinite();
  return ExtendedRadiusT<Scalar>::finite(abc / root);
}

/// Side lengths of the triple (u, v, w) under the spec's metric.
TriangleSides sides_between(const NormSpec& spec, const VectorRef& u,
                            const VectorRef& v, const VectorRef& w);

/// Circumradius of three points of a normed space; depends only on the
/// three pairwise distances.
ExtendedRadius circumradius_points(const NormSpec& spec, const VectorRef& u,
                                   const VectorRef& v, const VectorRef& w,
                                   const CircumradiusOptions& opts = {});

}  // namespace circum
