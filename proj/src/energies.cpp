#include "circum/energies.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "circum/random.hpp"

namespace circum {
namespace {

// Kahan compensated accumulator; keeps the n=512 triple sum at ~1e-15
// relative error instead of the 1e-9 plain summation can reach.
struct KahanSum {
  double sum = 0;
  double carry = 0;

  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }

  // The represented total: carry holds the excess absorbed by rounding.
  double total() const { return sum - carry; }
};

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return static_cast<int>(std::max(1u, std::min(hw, 8u)));
}

double inverse_radius_power(const ExtendedRadius& rho, double p) {
  if (rho.is_infinite()) return 0.0;
  const double r = rho.value();
  if (p == 2.0) return 1.0 / (r * r);
  if (p == 1.0) return 1.0 / r;
  return std::pow(r, -p);
}

Matrix pairwise_distances(const WeightedPointCloud& cloud) {
  const Index n = cloud.size();
  Matrix d = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) d(i, j) = d(j, i) = cloud.distance(i, j);
  return d;
}

void check_weights(const Vector& w) {
  if (!(w.array() > 0.0).all() || !w.allFinite())
    throw Error("point weights must be positive finite reals");
}

}  // namespace

WeightedPointCloud WeightedPointCloud::from_points(NormSpec spec,
                                                   std::vector<Vector> points,
                                                   Vector weights) {
  const Index n = static_cast<Index>(points.size());
  if (n < 1) throw Error("point cloud must be nonempty");
  for (const auto& p : points)
    if (p.size() != spec.dim()) throw DimensionMismatch(spec.dim(), p.size());
  if (weights.size() == 0) weights = Vector::Ones(n);
  if (weights.size() != n)
    throw Error("weight count must match point count");
  check_weights(weights);

  WeightedPointCloud cloud;
  cloud.spec_ = std::move(spec);
  cloud.points_ = std::move(points);
  cloud.weights_ = std::move(weights);

  // Distinctness to 1e-12 * diameter; the full check is quadratic, so cap it.
  if (n <= 4096) {
    double diameter = 0;
    Matrix d = Matrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
      for (Index j = i + 1; j < n; ++j) {
        d(i, j) = d(j, i) =
            dist(*cloud.spec_, cloud.points_[i], cloud.points_[j]);
        diameter = std::max(diameter, d(i, j));
      }
    }
    for (Index i = 0; i < n; ++i)
      for (Index j = i + 1; j < n; ++j)
        if (d(i, j) <= 1e-12 * diameter)
          throw CoincidentPoints("cloud points must be mutually distinct");
    cloud.distances_ = std::move(d);
  }
  return cloud;
}

WeightedPointCloud WeightedPointCloud::from_distance_matrix(Matrix distances,
                                                            Vector weights) {
  const Index n = distances.rows();
  if (n < 1 || distances.cols() != n)
    throw Error("distance matrix must be square and nonempty");
  if (!distances.allFinite())
    throw Error("distance matrix entries must be finite");
  const double scale = distances.cwiseAbs().maxCoeff();
  for (Index i = 0; i < n; ++i) {
    if (std::abs(distances(i, i)) > 1e-12 * scale)
      throw Error("distance matrix diagonal must be zero");
    for (Index j = 0; j < i; ++j) {
      if (std::abs(distances(i, j) - distances(j, i)) > 1e-12 * scale)
        throw Error("distance matrix must be symmetric");
      if (n > 1 && distances(i, j) <= 1e-12 * scale)
        throw CoincidentPoints("cloud points must be mutually distinct");
    }
  }
  if (weights.size() == 0) weights = Vector::Ones(n);
  if (weights.size() != n) throw Error("weight count must match point count");
  check_weights(weights);

  WeightedPointCloud cloud;
  cloud.distances_ = 0.5 * (distances + distances.transpose());
  cloud.distances_.diagonal().setZero();
  cloud.weights_ = std::move(weights);
  return cloud;
}

double WeightedPointCloud::distance(Index i, Index j) const {
  if (distances_.size() > 0) return distances_(i, j);
  return dist(*spec_, points_[i], points_[j]);
}

WeightedPointCloud WeightedPointCloud::scaled(double c,
                                              double weight_factor) const {
  if (!(c > 0) || !(weight_factor > 0))
    throw Error("scale factors must be positive");
  WeightedPointCloud out = *this;
  out.weights_ *= weight_factor;
  for (auto& p : out.points_) p *= c;
  if (out.distances_.size() > 0) out.distances_ *= c;
  return out;
}

ExtendedRadius thickness(const WeightedPointCloud& cloud,
                         const EnergyOptions& opts) {
  const Index n = cloud.size();
  if (n < 3) return ExtendedRadius::infinite();

  if (n <= opts.max_exact) {
    const Matrix d = pairwise_distances(cloud);
    const int threads = resolve_threads(opts.threads);
    std::vector<double> partial(threads, kInfinity);
    const auto worker = [&](int t) {
      double best = kInfinity;
      for (Index i = t; i < n; i += threads) {
        for (Index j = i + 1; j < n; ++j) {
          for (Index k = j + 1; k < n; ++k) {
            const ExtendedRadius rho = circumradius(
                TriangleSides{d(i, j), d(j, k), d(k, i)}, opts.circ);
            if (rho.is_finite()) best = std::min(best, rho.value());
          }
        }
      }
      partial[t] = best;
    };
    if (threads == 1) {
      worker(0);
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
      for (auto& th : pool) th.join();
    }
    const double best = *std::min_element(partial.begin(), partial.end());
    return std::isinf(best) ? ExtendedRadius::infinite()
                            : ExtendedRadius::finite(best);
  }

  // Sampled lower-effort mode: the minimum over uniformly sampled triples is
  // an upper bound on the thickness.
  RandomStream rng(opts.seed);
  double best = kInfinity;
  for (long s = 0; s < opts.mc_samples; ++s) {
    const Index i = static_cast<Index>(rng.uniform_index(n));
    Index j, k;
    do {
      j = static_cast<Index>(rng.uniform_index(n));
    } while (j == i);
    do {
      k = static_cast<Index>(rng.uniform_index(n));
    } while (k == i || k == j);
    const ExtendedRadius rho = circumradius(
        TriangleSides{cloud.distance(i, j), cloud.distance(j, k),
                      cloud.distance(k, i)},
        opts.circ);
    if (rho.is_finite()) best = std::min(best, rho.value());
  }
  return std::isinf(best) ? ExtendedRadius::infinite()
                          : ExtendedRadius::finite(best);
}

MengerEnergy menger_energy_detailed(const WeightedPointCloud& cloud, double p,
                                    const EnergyOptions& opts) {
  if (!(p > 0)) throw Error("Menger exponent p must be positive");
  const Index n = cloud.size();
  MengerEnergy out;
  if (n < 3) return out;

  if (n <= opts.max_exact) {
    const Matrix d = pairwise_distances(cloud);
    const Vector& w = cloud.weights();
    const int threads = resolve_threads(opts.threads);
    std::vector<KahanSum> partial(threads);
    const auto worker = [&](int t) {
      KahanSum acc;
      for (Index i = t; i < n; i += threads) {
        for (Index j = i + 1; j < n; ++j) {
          const double wij = w[i] * w[j];
          for (Index k = j + 1; k < n; ++k) {
            const ExtendedRadius rho = circumradius(
                TriangleSides{d(i, j), d(j, k), d(k, i)}, opts.circ);
            // 6 ordered triples per unordered one.
            acc.add(6.0 * wij * w[k] * inverse_radius_power(rho, p));
          }
        }
      }
      partial[t] = acc;
    };
    if (threads == 1) {
      worker(0);
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
      for (auto& th : pool) th.join();
    }
    KahanSum total;
    for (const auto& acc : partial) total.add(acc.total());
    out.value = total.total();
    out.triples = static_cast<long>(n) * (n - 1) * (n - 2);
    return out;
  }

  // Monte Carlo over ordered triples of distinct indices.
  RandomStream rng(opts.seed);
  const double count =
      static_cast<double>(n) * (n - 1.0) * (n - 2.0);
  KahanSum mean_acc, sq_acc;
  for (long s = 0; s < opts.mc_samples; ++s) {
    const Index i = static_cast<Index>(rng.uniform_index(n));
    Index j, k;
    do {
      j = static_cast<Index>(rng.uniform_index(n));
    } while (j == i);
    do {
      k = static_cast<Index>(rng.uniform_index(n));
    } while (k == i || k == j);
    const ExtendedRadius rho = circumradius(
        TriangleSides{cloud.distance(i, j), cloud.distance(j, k),
                      cloud.distance(k, i)},
        opts.circ);
    const double term = cloud.weight(i) * cloud.weight(j) * cloud.weight(k) *
                        inverse_radius_power(rho, p);
    mean_acc.add(term);
    sq_acc.add(term * term);
  }
  const double m = static_cast<double>(opts.mc_samples);
  const double mean = mean_acc.total() / m;
  const double var = std::max(0.0, sq_acc.total() / m - mean * mean);
  out.value = count * mean;
  out.standard_error = count * std::sqrt(var / m);
  out.monte_carlo = true;
  out.triples = opts.mc_samples;
  return out;
}

double menger_energy(const WeightedPointCloud& cloud, double p,
                     const EnergyOptions& opts) {
  return menger_energy_detailed(cloud, p, opts).value;
}

WeightedPointCloud sample_curve(const NormSpec& spec,
                                const std::function<Vector(double)>& curve,
                                int n) {
  if (n < 3) throw Error("curve sampling needs n >= 3");
  std::vector<Vector> pts(n);
  for (int i = 0; i < n; ++i) {
    pts[i] = curve(static_cast<double>(i) / n);
    if (pts[i].size() != spec.dim())
      throw DimensionMismatch(spec.dim(), pts[i].size());
  }
  Vector seg(n);  // seg[i] = length of edge pts[i] -> pts[i+1], cyclic
  for (int i = 0; i < n; ++i) {
    seg[i] = dist(spec, pts[i], pts[(i + 1) % n]);
    if (seg[i] == 0.0)
      throw CoincidentPoints("coincident consecutive curve samples");
  }
  Vector weights(n);
  for (int i = 0; i < n; ++i)
    weights[i] = 0.5 * (seg[(i + n - 1) % n] + seg[i]);
  return WeightedPointCloud::from_points(spec, std::move(pts),
                                         std::move(weights));
}

}  // namespace circum
