#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "circum/circumradius.hpp"
#include "circum/types.hpp"

namespace circum {

/// Points in R^2 or R^3 realizing a finite metric; pairwise Euclidean
/// distances reproduce the source distances.
struct Embedding {
  std::vector<Vector> points;
  std::vector<std::string> labels;

  Index ambient_dim() const {
    return points.empty() ? 0 : points.front().size();
  }
};

/// Isometric embedding of a metric triple into the plane:
/// u' = (0,0), v' = (a,0), w' = (x, +y) with x = (a^2+c^2-b^2)/(2a).
Embedding embed_triangle(const TriangleSides& sides,
                         const CircumradiusOptions& opts = {});

/// Translates a planar triple so its circumcenter (intersection of the
/// perpendicular bisectors) is the origin. Throws on collinear input.
Embedding center_circumcircle(const Embedding& emb);

/// Places a metric triple from a sphere dB_r(x0) in the z = 0 plane centered
/// at its circumcircle and the sphere center on the z-axis at height
/// sqrt(r^2 - rho^2), rho = circumradius of the triple. Throws NotEmbeddable
/// when rho > r or the triple is collinear (a line meets a Euclidean sphere
/// at most twice).
Embedding embed_sphere_triple_with_center(const TriangleSides& sides, double r,
                                          const CircumradiusOptions& opts = {});

/// Symmetric 4x4 distance matrix with zero diagonal, positive off-diagonal
/// entries, and the triangle inequality on all four triples.
class DistanceMatrix4 {
 public:
  static DistanceMatrix4 from_matrix(const Matrix& d,
                                     const CircumradiusOptions& opts = {});

  double operator()(int i, int j) const { return d_(i, j); }
  const Matrix& matrix() const { return d_; }
  double scale() const { return scale_; }  // largest entry

  TriangleSides sides_of_triple(int i, int j, int k) const {
    return {d_(i, j), d_(j, k), d_(k, i)};
  }

 private:
  DistanceMatrix4() = default;
  Matrix d_;
  double scale_ = 0;
};

struct FourPointCertificate {
  std::string reason;
  double squared_height = 0;        // negative when that is the obstruction
  std::array<int, 3> base_triple{}; // indices of the trilateration base
};

struct FourPointResult {
  bool embeddable = false;
  Embedding embedding;  // meaningful when embeddable
  std::optional<FourPointCertificate> certificate;
};

/// Constructive Euclidean four-point test: embeds the best-conditioned
/// triple in the plane, trilaterates the fourth point, and accepts exactly
/// when its squared height is >= -height_tolerance * scale^2 (clamped to 0
/// on acceptance, so boundary-embeddable inputs land on the sphere). The
/// returned coordinates reproduce all six distances to relative 1e-9.
FourPointResult four_point_embeddable(const DistanceMatrix4& d,
                                      const CircumradiusOptions& opts = {},
                                      double height_tolerance = 1e-9);

/// Bordered order-4 Cayley-Menger determinant of the distance matrix.
double cayley_menger_det4(const DistanceMatrix4& d);

/// Sign of cayley_menger_det4 on genuinely Euclidean data. Calibrated once
/// against random point sets in R^3 rather than transcribed from a formula;
/// bordered-determinant sign conventions are a classic transcription hazard.
double calibrated_cm4_sign();

/// Independent embeddability check: sign(cm4) agrees with the calibrated
/// Euclidean sign, up to a boundary band on |cm4| of band * scale^8.
bool cayley_menger_sign_test(const DistanceMatrix4& d, double band = 0.0);

/// Intersection points of the Euclidean sphere dB_r(x0) with the line
/// a + t*v: at most two, returned in increasing line parameter order.
std::vector<Vector> sphere_line_intersect(const VectorRef& x0, double r,
                                          const VectorRef& a,
                                          const VectorRef& v);

}  // namespace circum
