#pragma once

#include <cstdint>
#include <vector>

#include "circum/types.hpp"

namespace circum {

enum class NormKind { PNorm, WeightedPNorm, Quadratic, Polyhedral };

/// Declarative description of a norm on R^n. Instances are immutable after
/// construction and all evaluation is pure, so concurrent use is unrestricted.
///
/// Supported kinds:
///  - PNorm(p), p in [1, inf]; p = infinity is a distinguished value and is
///    evaluated as the coordinate maximum, never as a large finite exponent.
///  - WeightedPNorm(p, w): the p-norm of the coordinatewise scaled vector
///    (w_1 x_1, ..., w_n x_n), w_i > 0.
///  - Quadratic(Q): sqrt(x^T Q x) for symmetric positive-definite Q; Q is
///    factorized once at construction and evaluation uses the Cholesky factor.
///  - Polyhedral(V): the Minkowski functional of the symmetric polytope
///    conv(V). In the plane the facets are enumerated once at construction;
///    in higher dimension each evaluation solves the small gauge LP
///    min { sum(mu) : V mu = x, mu >= 0 }.
class NormSpec {
 public:
  static NormSpec p_norm(Index dim, double p);
  static NormSpec weighted_p_norm(double p, Vector weights);
  static NormSpec quadratic(Matrix q);
  static NormSpec polyhedral(std::vector<Vector> vertices);

  NormKind kind() const { return kind_; }
  Index dim() const { return dim_; }

  /// Exponent for the two p-norm kinds; +infinity for the max norm.
  double exponent() const { return p_; }
  const Vector& coordinate_weights() const { return weights_; }
  const Matrix& quadratic_form() const { return q_; }
  const std::vector<Vector>& polytope_vertices() const { return vertices_; }

  double operator()(const VectorRef& x) const;

  /// Sampled property check of the norm axioms (positivity, absolute
  /// homogeneity, triangle inequality) at relative tolerance 1e-12.
  /// Throws Error on first violation; intended to catch misconfigured specs.
  void validate(int samples = 1000, std::uint64_t seed = 0) const;

 private:
  NormSpec() = default;

  NormKind kind_ = NormKind::PNorm;
  Index dim_ = 0;
  double p_ = 2.0;
  Vector weights_;
  Matrix q_;
  Matrix chol_upper_;  // U with Q = U^T U
  std::vector<Vector> vertices_;
  std::vector<Vector> facet_normals_;  // 2-D polyhedral fast path
};

/// Norm of x under the spec.
double norm(const NormSpec& spec, const VectorRef& x);

/// Induced metric d(x, y) = ||x - y||.
double dist(const NormSpec& spec, const VectorRef& x, const VectorRef& y);

/// Point of the sphere dB_r(x0) in the given direction:
/// x0 + r * direction / ||direction||.
Vector sphere_point(const NormSpec& spec, const VectorRef& x0, double r,
                    const VectorRef& direction);

/// Reflection of v through x0, i.e. 2*x0 - v. By norm symmetry this maps
/// dB_r(x0) to itself.
Vector antipode(const VectorRef& x0, const VectorRef& v);

}  // namespace circum
