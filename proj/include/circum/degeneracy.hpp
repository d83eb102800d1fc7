#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "circum/circumradius.hpp"
#include "circum/norm_space.hpp"
#include "circum/types.hpp"

namespace circum {

/// Jordan-von Neumann discrepancy
/// ||u+v||^2 + ||u-v||^2 - 2||u||^2 - 2||v||^2; identically zero exactly in
/// inner product spaces.
double parallelogram_defect(const NormSpec& spec, const VectorRef& u,
                            const VectorRef& v);

/// A pair of sphere vectors (relative to the sphere center, so ||u|| =
/// ||v|| = r) with their parallelogram defect.
struct DefectRecord {
  Vector u;
  Vector v;
  double defect = 0;
};

/// Budget of the sphere searches. The grid is grid x grid over the two
/// section angles; in dimension >= 3 the search runs over `sections` random
/// 2-D sections through the center; refinement is derivative-free
/// (Nelder-Mead) from the best `refine_starts` grid cells.
struct SearchBudget {
  int grid = 64;
  int sections = 16;
  int refine_starts = 8;
  int refine_iters = 200;
  std::uint64_t seed = 0;
};

/// Searches dB_r(x0) for a pair maximizing |parallelogram defect| (computed
/// on the recentred vectors u - x0, v - x0). Returns the best pair when its
/// |defect| exceeds 1e-9 * r^2, otherwise nothing.
std::optional<DefectRecord> find_defect_pair(const NormSpec& spec,
                                             const VectorRef& x0, double r,
                                             const SearchBudget& budget = {});

/// Exact S(M) over a finite point set: the maximum circumradius over all
/// triples of mutually distinct points; infinite as soon as one triple is
/// metrically collinear. Throws when fewer than 3 distinct points are given.
ExtendedRadius s_of_finite_set(const NormSpec& spec,
                               const std::vector<Vector>& points,
                               const CircumradiusOptions& opts = {});

struct WitnessTriple {
  Vector u;
  Vector v;
  Vector w;
  ExtendedRadius circumradius;
};

struct SectionStat {
  double best;       // best value found in the section (may be +inf)
  long evaluations;  // objective evaluations spent there
};

struct SphereSearchResult {
  ExtendedRadius s_estimate;  // certified lower bound on S(dB_r(x0))
  std::optional<WitnessTriple> witness;
  long probes = 0;
  long iterations = 0;  // refinement iterations across all starts
  std::vector<SectionStat> per_section;
  std::vector<double> best_per_start;
  bool short_circuited = false;  // a degenerate (infinite) triple was hit
};

/// Lower-bounds S(dB_r(x0)) with the witness triple attaining the bound.
/// Only antipodal triples (u, v, 2 x0 - v) are probed: every non inner
/// product space contains a witness of exactly this form, and any such
/// triple has d(v, 2x0 - v) = 2r, so every probe already scores >= r.
/// Returns immediately once any probed triple is degenerate (infinite
/// dominates the supremum). Requires dim >= 2.
SphereSearchResult s_of_sphere(const NormSpec& spec, const VectorRef& x0,
                               double r, const SearchBudget& budget = {},
                               const CircumradiusOptions& copts = {});

enum class Verdict { InnerProduct, NotInnerProduct, Inconclusive };

struct ClassifyOptions {
  SearchBudget budget;
  /// Relative decision margin on s_estimate vs r.
  double margin = 1e-6;
  /// A sampled |defect| above defect_threshold * r^2 blocks the
  /// InnerProduct verdict.
  double defect_threshold = 1e-9;
  CircumradiusOptions circ;
};

/// Classification outcome. NotInnerProduct is certified by its witness
/// (circumradius > r * (1 + margin)); InnerProduct is evidence of absence
/// under the given budget: the search exhausted its budget with s_estimate
/// inside the margin band and no sampled defect above threshold.
struct ClassificationReport {
  Verdict verdict = Verdict::Inconclusive;
  ExtendedRadius s_estimate;
  double r = 0;
  Vector x0;
  std::optional<WitnessTriple> witness;      // best triple probed
  std::optional<DefectRecord> defect_pair;   // present when above threshold
  double max_defect_seen = 0;
  long probes = 0;
  long iterations = 0;
  std::vector<SectionStat> sections;
  std::vector<double> best_per_start;
  ClassifyOptions options;  // echo: seed, budget, margin
};

/// Decides inner-product-space vs not by the maximal circumradius of
/// dB_r(x0): runs s_of_sphere and find_defect_pair, folds the defect pair's
/// antipodal triple into the running maximum, and applies the one-sided
/// decision rule above. Requires dim >= 2 (every 1-D normed space is an
/// inner product space).
ClassificationReport classify(const NormSpec& spec, const VectorRef& x0,
                              double r, const ClassifyOptions& options = {});

/// Explicit triples on the sup-norm unit sphere in R^2 whose circumradius is
/// any prescribed d in (0, inf]: an equilateral family for d < 2/sqrt(3), an
/// isosceles family with side lengths (s, s, 2) for d >= 2/sqrt(3), and a
/// metrically collinear triple for the infinite target.
std::array<Vector, 3> achieve_circumradius_linf(const ExtendedRadius& d);

/// Circumradius landscape of the antipodal-triple objective over a grid of
/// section angles; row i, column j holds the value at angles
/// (2 pi i / grid, 2 pi j / grid). Infinite entries mark degenerate triples.
/// In dimension >= 3 the section is the `section_index`-th one drawn from
/// the seed, matching the classifier's sampling.
Matrix circumradius_landscape(const NormSpec& spec, const VectorRef& x0,
                              double r, int grid, int section_index = 0,
                              std::uint64_t seed = 0);

}  // namespace circum
