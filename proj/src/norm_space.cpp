#include "circum/norm_space.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "circum/random.hpp"

namespace circum {
namespace {

// Two-phase dense simplex for: min c.z  s.t.  A z = b, z >= 0.
// Sizes here are tiny (rows = space dimension, cols = #polytope vertices),
// so Bland's rule is used throughout; it cannot cycle. Returns the optimal
// value, or nullopt when infeasible.
class SmallSimplex {
 public:
  static std::optional<double> minimize(Matrix a, Vector b, const Vector& c) {
    const Index rows = a.rows();
    const Index cols = a.cols();
    for (Index i = 0; i < rows; ++i) {
      if (b[i] < 0) {
        b[i] = -b[i];
        a.row(i) = -a.row(i);
      }
    }

    // Tableau over original + artificial columns, artificials basic.
    Matrix t(rows, cols + rows);
    t.leftCols(cols) = a;
    t.rightCols(rows) = Matrix::Identity(rows, rows);
    std::vector<Index> basis(rows);
    for (Index i = 0; i < rows; ++i) basis[i] = cols + i;

    Vector phase1_cost = Vector::Zero(cols + rows);
    phase1_cost.tail(rows).setOnes();
    if (!run(t, b, basis, phase1_cost, cols + rows)) return std::nullopt;
    if (objective(b, basis, phase1_cost) > kFeasTol) return std::nullopt;

    // Drive leftover artificials out of the basis; a row where that is
    // impossible is redundant and can be pivoted on nothing, so we simply
    // zero it (its b is ~0 by feasibility).
    for (Index i = 0; i < rows; ++i) {
      if (basis[i] < cols) continue;
      Index enter = -1;
      for (Index j = 0; j < cols; ++j) {
        if (std::abs(t(i, j)) > kPivotTol) {
          enter = j;
          break;
        }
      }
      if (enter >= 0) pivot(t, b, basis, i, enter);
    }

    Vector phase2_cost = Vector::Zero(cols + rows);
    phase2_cost.head(cols) = c;
    if (!run(t, b, basis, phase2_cost, cols)) return std::nullopt;
    return objective(b, basis, phase2_cost);
  }

 private:
  static constexpr double kFeasTol = 1e-9;
  static constexpr double kPivotTol = 1e-11;

  static double objective(const Vector& b, const std::vector<Index>& basis,
                          const Vector& cost) {
    double v = 0;
    for (Index i = 0; i < static_cast<Index>(basis.size()); ++i)
      v += cost[basis[i]] * b[i];
    return v;
  }

  static void pivot(Matrix& t, Vector& b, std::vector<Index>& basis, Index row,
                    Index col) {
    const double pv = t(row, col);
    t.row(row) /= pv;
    b[row] /= pv;
    for (Index i = 0; i < t.rows(); ++i) {
      if (i == row) continue;
      const double f = t(i, col);
      if (f == 0.0) continue;
      t.row(i) -= f * t.row(row);
      b[i] -= f * b[row];
    }
    basis[row] = col;
  }

  static bool run(Matrix& t, Vector& b, std::vector<Index>& basis,
                  const Vector& cost, Index usable_cols) {
    const Index rows = t.rows();
    for (;;) {
      // Reduced costs; Bland: first improving column enters.
      Index enter = -1;
      for (Index j = 0; j < usable_cols; ++j) {
        double rc = cost[j];
        for (Index i = 0; i < rows; ++i) rc -= cost[basis[i]] * t(i, j);
        if (rc < -kFeasTol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;

      Index leave = -1;
      double best_ratio = 0;
      for (Index i = 0; i < rows; ++i) {
        if (t(i, enter) <= kPivotTol) continue;
        const double ratio = b[i] / t(i, enter);
        if (leave < 0 || ratio < best_ratio - kPivotTol ||
            (std::abs(ratio - best_ratio) <= kPivotTol &&
             basis[i] < basis[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave < 0) return false;  // unbounded
      pivot(t, b, basis, leave, enter);
    }
  }
};

double p_norm_of_abs(const Eigen::ArrayXd& absx, double p) {
  if (std::isinf(p)) return absx.size() ? absx.maxCoeff() : 0.0;
  if (p == 1.0) return absx.sum();
  const double m = absx.size() ? absx.maxCoeff() : 0.0;
  if (m == 0.0) return 0.0;
  if (p == 2.0) return m * std::sqrt((absx / m).square().sum());
  return m * std::pow((absx / m).pow(p).sum(), 1.0 / p);
}

// Convex hull (monotone chain) of 2-D vertices, counterclockwise.
std::vector<Vector> hull_2d(std::vector<Vector> pts) {
  std::sort(pts.begin(), pts.end(), [](const Vector& a, const Vector& b) {
    return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Vector& a, const Vector& b) {
                          return a[0] == b[0] && a[1] == b[1];
                        }),
            pts.end());
  const auto cross = [](const Vector& o, const Vector& a, const Vector& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  };
  const Index n = static_cast<Index>(pts.size());
  if (n < 3) return pts;
  std::vector<Vector> h(2 * n);
  Index k = 0;
  for (Index i = 0; i < n; ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  const Index lower = k + 1;
  for (Index i = n - 2; i >= 0; --i) {
    while (k >= lower && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

}  // namespace

NormSpec NormSpec::p_norm(Index dim, double p) {
  if (dim < 1) throw Error("norm space dimension must be >= 1");
  if (std::isnan(p) || p < 1.0) throw Error("p-norm exponent must be >= 1");
  NormSpec s;
  s.kind_ = NormKind::PNorm;
  s.dim_ = dim;
  s.p_ = p;
  return s;
}

NormSpec NormSpec::weighted_p_norm(double p, Vector weights) {
  if (weights.size() < 1) throw Error("weight vector must be nonempty");
  if (std::isnan(p) || p < 1.0) throw Error("p-norm exponent must be >= 1");
  if (!(weights.array() > 0.0).all() || !weights.allFinite())
    throw Error("coordinate weights must be positive finite reals");
  NormSpec s;
  s.kind_ = NormKind::WeightedPNorm;
  s.dim_ = weights.size();
  s.p_ = p;
  s.weights_ = std::move(weights);
  return s;
}

NormSpec NormSpec::quadratic(Matrix q) {
  if (q.rows() != q.cols() || q.rows() < 1)
    throw Error("quadratic form must be a square matrix");
  const double scale = q.cwiseAbs().maxCoeff();
  if ((q - q.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(scale, 1.0))
    throw Error("quadratic form must be symmetric");
  Matrix sym = 0.5 * (q + q.transpose());
  Eigen::LLT<Matrix> llt(sym);
  if (llt.info() != Eigen::Success)
    throw Error("quadratic form is not positive definite");
  NormSpec s;
  s.kind_ = NormKind::Quadratic;
  s.dim_ = q.rows();
  s.q_ = std::move(sym);
  s.chol_upper_ = llt.matrixU();
  return s;
}

NormSpec NormSpec::polyhedral(std::vector<Vector> vertices) {
  if (vertices.size() < 2) throw Error("polytope needs at least 2 vertices");
  const Index dim = vertices.front().size();
  if (dim < 1) throw Error("norm space dimension must be >= 1");
  double scale = 0;
  for (const auto& v : vertices) {
    if (v.size() != dim) throw DimensionMismatch(dim, v.size());
    if (!v.allFinite()) throw Error("polytope vertices must be finite");
    scale = std::max(scale, v.cwiseAbs().maxCoeff());
  }
  if (scale == 0) throw Error("polytope vertices cannot all be zero");
  for (const auto& v : vertices) {
    bool has_mirror = false;
    for (const auto& w : vertices) {
      if ((v + w).cwiseAbs().maxCoeff() <= 1e-9 * scale) {
        has_mirror = true;
        break;
      }
    }
    if (!has_mirror)
      throw Error("polytope vertex set must be symmetric (v in set => -v)");
  }

  NormSpec s;
  s.kind_ = NormKind::Polyhedral;
  s.dim_ = dim;
  s.vertices_ = std::move(vertices);

  if (dim == 2) {
    auto hull = hull_2d(s.vertices_);
    if (hull.size() < 3)
      throw Error("polytope is degenerate: origin not strictly inside hull");
    for (std::size_t i = 0; i < hull.size(); ++i) {
      const Vector& p = hull[i];
      const Vector& q = hull[(i + 1) % hull.size()];
      Eigen::Matrix2d m;
      m << p[0], p[1], q[0], q[1];
      const double det = m.determinant();
      if (std::abs(det) <= 1e-14 * scale * scale)
        throw Error("polytope is degenerate: facet through the origin");
      s.facet_normals_.push_back(m.inverse() * Eigen::Vector2d::Ones());
    }
  } else {
    // Feasibility of the gauge LP at +-e_i certifies that the (symmetric)
    // vertex set positively spans R^n, i.e. the origin is interior.
    for (Index i = 0; i < dim; ++i) {
      for (double sign : {1.0, -1.0}) {
        Vector e = Vector::Zero(dim);
        e[i] = sign;
        if (!(s(e) > 0))
          throw Error("polytope is degenerate: origin not strictly inside hull");
      }
    }
  }
  return s;
}

double NormSpec::operator()(const VectorRef& x) const {
  if (x.size() != dim_) throw DimensionMismatch(dim_, x.size());
  switch (kind_) {
    case NormKind::PNorm:
      return p_norm_of_abs(x.array().abs(), p_);
    case NormKind::WeightedPNorm:
      return p_norm_of_abs((weights_.array() * x.array()).abs(), p_);
    case NormKind::Quadratic:
      return (chol_upper_ * x).norm();
    case NormKind::Polyhedral: {
      if (!facet_normals_.empty()) {
        double g = 0;
        for (const auto& n : facet_normals_) g = std::max(g, n.dot(x));
        return g;
      }
      if (dim_ == 1) {
        double a = 0;
        for (const auto& v : vertices_) a = std::max(a, std::abs(v[0]));
        return std::abs(x[0]) / a;
      }
      const double scale = x.cwiseAbs().maxCoeff();
      if (scale == 0) return 0.0;
      Matrix a(dim_, static_cast<Index>(vertices_.size()));
      for (Index j = 0; j < a.cols(); ++j) a.col(j) = vertices_[j];
      const auto value =
          SmallSimplex::minimize(a, x / scale, Vector::Ones(a.cols()));
      if (!value)
        throw Error("gauge evaluation failed: point not in the polytope cone");
      return *value * scale;
    }
  }
  throw Error("unreachable norm kind");
}

void NormSpec::validate(int samples, std::uint64_t seed) const {
  RandomStream rng(seed);
  if (norm(*this, Vector::Zero(dim_)) != 0.0)
    throw Error("norm axiom violated: ||0|| != 0");
  for (int k = 0; k < samples; ++k) {
    const Vector x = rng.uniform_vector(dim_, -1.0, 1.0);
    const Vector y = rng.uniform_vector(dim_, -1.0, 1.0);
    const double c = rng.uniform(-3.0, 3.0);
    const double nx = norm(*this, x);
    const double ny = norm(*this, y);
    if (x.cwiseAbs().maxCoeff() > 1e-6 && !(nx > 0))
      throw Error("norm axiom violated: ||x|| = 0 for x != 0");
    const double ncx = norm(*this, c * x);
    if (std::abs(ncx - std::abs(c) * nx) > 1e-12 * std::max(ncx, 1e-300))
      throw Error("norm axiom violated: absolute homogeneity");
    const double nxy = norm(*this, x + y);
    if (nxy > nx + ny + 1e-12 * std::max(1.0, nx + ny))
      throw Error("norm axiom violated: triangle inequality");
  }
}

double norm(const NormSpec& spec, const VectorRef& x) { return spec(x); }

double dist(const NormSpec& spec, const VectorRef& x, const VectorRef& y) {
  if (x.size() != y.size()) throw DimensionMismatch(x.size(), y.size());
  return spec(x - y);
}

Vector sphere_point(const NormSpec& spec, const VectorRef& x0, double r,
                    const VectorRef& direction) {
  if (!(r > 0)) throw Error("sphere radius must be positive");
  if (x0.size() != direction.size())
    throw DimensionMismatch(x0.size(), direction.size());
  const double n = spec(direction);
  if (n == 0.0) throw Error("zero direction vector");
  return x0 + (r / n) * direction;
}

Vector antipode(const VectorRef& x0, const VectorRef& v) {
  if (x0.size() != v.size()) throw DimensionMismatch(x0.size(), v.size());
  return 2.0 * x0 - v;
}

}  // namespace circum
