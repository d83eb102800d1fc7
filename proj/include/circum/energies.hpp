#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "circum/circumradius.hpp"
#include "circum/norm_space.hpp"
#include "circum/types.hpp"

namespace circum {

/// Finite point set with per-point measure weights; the discrete domain of
/// the thickness and Menger-curvature energies. The metric comes either
/// from a NormSpec or from a raw distance matrix.
class WeightedPointCloud {
 public:
  /// Empty weights mean the counting measure (all ones). Points must be
  /// mutually distinct to 1e-12 * diameter.
  static WeightedPointCloud from_points(NormSpec spec,
                                        std::vector<Vector> points,
                                        Vector weights = Vector());
  static WeightedPointCloud from_distance_matrix(Matrix distances,
                                                 Vector weights = Vector());

  Index size() const { return weights_.size(); }
  double weight(Index i) const { return weights_[i]; }
  const Vector& weights() const { return weights_; }
  double distance(Index i, Index j) const;

  bool has_points() const { return !points_.empty(); }
  const std::vector<Vector>& points() const { return points_; }
  const std::optional<NormSpec>& metric() const { return spec_; }

  /// Same cloud with positions scaled by c > 0 (all distances scale by c)
  /// and weights scaled by weight_factor.
  WeightedPointCloud scaled(double c, double weight_factor) const;

 private:
  WeightedPointCloud() = default;
  std::optional<NormSpec> spec_;
  std::vector<Vector> points_;
  Matrix distances_;  // empty when metric is a spec and cloud is large
  Vector weights_;
};

struct EnergyOptions {
  /// Exact O(n^3) triple enumeration up to this many points; above it the
  /// Menger energy switches to Monte Carlo triple sampling.
  Index max_exact = 1024;
  long mc_samples = 2'000'000;
  std::uint64_t seed = 0;
  /// Worker threads for the exact triple loops; 0 picks the hardware count.
  /// Partials merge in fixed order, so results do not depend on scheduling.
  int threads = 0;
  CircumradiusOptions circ;
};

/// Thickness: the infimum of the circumradius over all triples of distinct
/// points. Infinite when every triple is degenerate (e.g. a collinear cloud)
/// and for fewer than 3 points (empty-infimum convention).
ExtendedRadius thickness(const WeightedPointCloud& cloud,
                         const EnergyOptions& opts = {});

struct MengerEnergy {
  double value = 0;
  bool monte_carlo = false;
  double standard_error = 0;  // meaningful in Monte Carlo mode
  long triples = 0;           // enumerated or sampled ordered triples
};

/// Integral p-Menger curvature of the cloud: the sum over ordered triples of
/// mutually distinct indices of w_i w_j w_k / r(p_i, p_j, p_k)^p. Degenerate
/// triples contribute 0 (1/inf^p). Requires p > 0.
MengerEnergy menger_energy_detailed(const WeightedPointCloud& cloud, double p,
                                    const EnergyOptions& opts = {});
double menger_energy(const WeightedPointCloud& cloud, double p,
                     const EnergyOptions& opts = {});

/// Samples a closed parametrized curve at n uniform parameters in [0, 1) and
/// weights each sample with the polygonal arclength of its two surrounding
/// half-segments under the given norm (weights sum to the polygon perimeter).
WeightedPointCloud sample_curve(const NormSpec& spec,
                                const std::function<Vector(double)>& curve,
                                int n);

}  // namespace circum
