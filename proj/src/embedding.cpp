#include "circum/embedding.hpp"

#include <cmath>

#include "circum/random.hpp"

namespace circum {
namespace {

Vector make_vec2(double x, double y) {
  Vector v(2);
  v << x, y;
  return v;
}

Vector make_vec3(double x, double y, double z) {
  Vector v(3);
  v << x, y, z;
  return v;
}

}  // namespace

Embedding embed_triangle(const TriangleSides& sides,
                         const CircumradiusOptions& opts) {
  if (!(sides.a > 0) || !(sides.b > 0) || !(sides.c > 0))
    throw CoincidentPoints("triangle embedding requires mutually distinct points");
  // Validates the triangle inequality as a side effect.
  (void)cayley_menger(sides, opts);
  const double a = sides.a, b = sides.b, c = sides.c;
  const double x = (a * a + c * c - b * b) / (2.0 * a);
  const double y2 = (c - x) * (c + x);
  const double y = std::sqrt(std::max(0.0, y2));
  Embedding emb;
  emb.points = {make_vec2(0.0, 0.0), make_vec2(a, 0.0), make_vec2(x, y)};
  emb.labels = {"u", "v", "w"};
  return emb;
}

Embedding center_circumcircle(const Embedding& emb) {
  if (emb.points.size() != 3 || emb.ambient_dim() != 2)
    throw Error("circumcentering expects a planar triple");
  const Vector& pa = emb.points[0];
  const Vector& pb = emb.points[1];
  const Vector& pc = emb.points[2];
  // ||O - A|| = ||O - B|| = ||O - C|| as two linear equations in O.
  Eigen::Matrix2d m;
  m.row(0) = 2.0 * (pb - pa).transpose();
  m.row(1) = 2.0 * (pc - pa).transpose();
  Eigen::Vector2d rhs(pb.squaredNorm() - pa.squaredNorm(),
                      pc.squaredNorm() - pa.squaredNorm());
  double scale = 0;
  for (const auto& p : emb.points)
    for (const auto& q : emb.points) scale = std::max(scale, (p - q).norm());
  if (std::abs(m.determinant()) <= 1e-14 * scale * scale)
    throw Error("collinear triple: circumcenter undefined");
  const Eigen::Vector2d center = m.partialPivLu().solve(rhs);
  Embedding out = emb;
  for (auto& p : out.points) p -= center;
  return out;
}

Embedding embed_sphere_triple_with_center(const TriangleSides& sides, double r,
                                          const CircumradiusOptions& opts) {
  if (!(r > 0)) throw Error("sphere radius must be positive");
  const ExtendedRadius rho = circumradius(sides, opts);
  if (rho.is_infinite()) throw NotEmbeddable(kInfinity, r);
  if (rho.value() > r * (1.0 + 1e-12)) throw NotEmbeddable(rho.value(), r);

  const Embedding centered = center_circumcircle(embed_triangle(sides, opts));
  const double height2 = (r - rho.value()) * (r + rho.value());
  const double height = std::sqrt(std::max(0.0, height2));
  Embedding out;
  for (const auto& p : centered.points)
    out.points.push_back(make_vec3(p[0], p[1], 0.0));
  out.points.push_back(make_vec3(0.0, 0.0, height));
  out.labels = {"u", "v", "w", "x0"};
  return out;
}

DistanceMatrix4 DistanceMatrix4::from_matrix(const Matrix& d,
                                             const CircumradiusOptions& opts) {
  if (d.rows() != 4 || d.cols() != 4)
    throw Error("distance matrix must be 4x4");
  if (!d.allFinite()) throw Error("distance matrix entries must be finite");
  const double scale = d.cwiseAbs().maxCoeff();
  if (scale == 0) throw CoincidentPoints("all four points coincide");
  DistanceMatrix4 out;
  out.d_ = 0.5 * (d + d.transpose());
  out.scale_ = scale;
  for (int i = 0; i < 4; ++i) {
    if (std::abs(d(i, i)) > 1e-12 * scale)
      throw Error("distance matrix diagonal must be zero");
    out.d_(i, i) = 0.0;
    for (int j = 0; j < 4; ++j) {
      if (std::abs(d(i, j) - d(j, i)) > 1e-12 * scale)
        throw Error("distance matrix must be symmetric");
      if (i != j && !(out.d_(i, j) > 0))
        throw CoincidentPoints("points must be mutually distinct");
    }
  }
  for (int m = 0; m < 4; ++m) {
    const int i = (m + 1) % 4, j = (m + 2) % 4, k = (m + 3) % 4;
    (void)cayley_menger(out.sides_of_triple(i, j, k), opts);  // throws if invalid
  }
  return out;
}

FourPointResult four_point_embeddable(const DistanceMatrix4& d,
                                      const CircumradiusOptions& opts,
                                      double height_tolerance) {
  const double scale = d.scale();

  // Best-conditioned base: the non-collinear triple of smallest circumradius.
  int base_excluded = -1;
  double best_rho = kInfinity;
  for (int m = 0; m < 4; ++m) {
    const int i = (m + 1) % 4, j = (m + 2) % 4, k = (m + 3) % 4;
    const ExtendedRadius rho = circumradius(d.sides_of_triple(i, j, k), opts);
    if (rho.is_finite() && rho.value() < best_rho) {
      best_rho = rho.value();
      base_excluded = m;
    }
  }

  FourPointResult result;
  if (base_excluded < 0) {
    // Every triple is metrically collinear: the four points either lie on a
    // common Euclidean line or do not embed at all.
    std::array<double, 4> t{};
    t[0] = 0.0;
    t[1] = d(0, 1);
    bool consistent = true;
    for (int m = 2; m < 4 && consistent; ++m) {
      const double plus_err = std::abs(std::abs(d(0, m) - t[1]) - d(1, m));
      const double minus_err = std::abs(std::abs(-d(0, m) - t[1]) - d(1, m));
      t[m] = plus_err <= minus_err ? d(0, m) : -d(0, m);
      if (std::min(plus_err, minus_err) > 1e-9 * scale) consistent = false;
    }
    if (consistent) {
      for (int i = 0; i < 4 && consistent; ++i)
        for (int j = i + 1; j < 4; ++j)
          if (std::abs(std::abs(t[i] - t[j]) - d(i, j)) > 1e-9 * scale) {
            consistent = false;
            break;
          }
    }
    if (consistent) {
      result.embeddable = true;
      for (int i = 0; i < 4; ++i)
        result.embedding.points.push_back(make_vec3(t[i], 0.0, 0.0));
      result.embedding.labels = {"p0", "p1", "p2", "p3"};
      return result;
    }
    result.certificate = FourPointCertificate{
        "all triples collinear but fourth-point distances are inconsistent",
        0.0,
        {0, 1, 2}};
    return result;
  }

  const int m = base_excluded;
  const int i = (m + 1) % 4, j = (m + 2) % 4, k = (m + 3) % 4;
  const Embedding base = embed_triangle(d.sides_of_triple(i, j, k), opts);
  const double a = base.points[1][0];
  const double cx = base.points[2][0];
  const double cy = base.points[2][1];
  const double da = d(m, i), db = d(m, j), dc = d(m, k);

  // Differences of the three sphere equations are linear in the unknown point.
  const double px = (a * a + da * da - db * db) / (2.0 * a);
  const double py =
      (cx * cx + cy * cy + da * da - dc * dc - 2.0 * cx * px) / (2.0 * cy);
  const double h2 = da * da - px * px - py * py;

  if (h2 < -height_tolerance * scale * scale) {
    result.certificate = FourPointCertificate{
        "fourth point has negative squared height", h2, {i, j, k}};
    return result;
  }
  const double h = std::sqrt(std::max(0.0, h2));

  std::array<Vector, 4> pts;
  pts[i] = make_vec3(0.0, 0.0, 0.0);
  pts[j] = make_vec3(a, 0.0, 0.0);
  pts[k] = make_vec3(cx, cy, 0.0);
  pts[m] = make_vec3(px, py, h);

  for (int p = 0; p < 4; ++p) {
    for (int q = p + 1; q < 4; ++q) {
      const double got = (pts[p] - pts[q]).norm();
      if (std::abs(got - d(p, q)) > 1e-9 * std::max(d(p, q), scale)) {
        result.certificate = FourPointCertificate{
            "reconstructed coordinates fail to reproduce the distances",
            h2,
            {i, j, k}};
        return result;
      }
    }
  }

  result.embeddable = true;
  result.embedding.points.assign(pts.begin(), pts.end());
  result.embedding.labels = {"p0", "p1", "p2", "p3"};
  return result;
}

double cayley_menger_det4(const DistanceMatrix4& d) {
  Eigen::Matrix<double, 5, 5> m = Eigen::Matrix<double, 5, 5>::Zero();
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      if (i == 0 && j == 0) continue;
      if (i == 0 || j == 0) {
        m(i, j) = 1.0;
      } else {
        const double dij = d(i - 1, j - 1);
        m(i, j) = dij * dij;
      }
    }
  }
  return m.determinant();
}

double calibrated_cm4_sign() {
  static const double sign = [] {
    RandomStream rng(0xC4);
    double s = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      Matrix d(4, 4);
      double det = 0.0;
      do {
        std::array<Vector, 4> p;
        for (auto& v : p) v = rng.uniform_vector(3, -1.0, 1.0);
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j) d(i, j) = (p[i] - p[j]).norm();
        det = cayley_menger_det4(DistanceMatrix4::from_matrix(d));
      } while (std::abs(det) < 1e-6);  // resample near-degenerate draws
      const double cur = det > 0 ? 1.0 : -1.0;
      if (s == 0.0) s = cur;
      if (cur != s)
        throw Error("Cayley-Menger sign calibration is inconsistent");
    }
    return s;
  }();
  return sign;
}

bool cayley_menger_sign_test(const DistanceMatrix4& d, double band) {
  const double v = calibrated_cm4_sign() * cayley_menger_det4(d);
  const double s = d.scale();
  const double s4 = s * s * s * s;
  return v >= -band * s4 * s4;
}

std::vector<Vector> sphere_line_intersect(const VectorRef& x0, double r,
                                          const VectorRef& a,
                                          const VectorRef& v) {
  if (!(r > 0)) throw Error("sphere radius must be positive");
  if (x0.size() != a.size() || x0.size() != v.size())
    throw DimensionMismatch(x0.size(), v.size());
  const double vn = v.norm();
  if (vn == 0.0) throw Error("zero direction vector");
  const Vector dir = v / vn;
  const Vector rel = a - x0;
  // ||rel + t dir||^2 = r^2  <=>  t^2 + 2 beta t + gamma = 0.
  const double beta = rel.dot(dir);
  const double gamma = rel.squaredNorm() - r * r;
  const double disc = beta * beta - gamma;
  std::vector<Vector> out;
  if (disc < 0) return out;
  if (disc == 0) {
    out.push_back(a - beta * dir);
    return out;
  }
  const double root = std::sqrt(disc);
  const double t_big = -(beta + std::copysign(root, beta));
  const double t_other = t_big != 0.0 ? gamma / t_big : -t_big;
  const double t1 = std::min(t_big, t_other);
  const double t2 = std::max(t_big, t_other);
  out.push_back(a + t1 * dir);
  out.push_back(a + t2 * dir);
  return out;
}

}  // namespace circum
