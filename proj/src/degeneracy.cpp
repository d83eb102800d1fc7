#include "circum/degeneracy.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "circum/random.hpp"

namespace circum {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kTwoPi = 6.283185307179586476925286766559;

struct Section {
  Vector e1;
  Vector e2;
};

// Ambient-Euclidean orthonormal direction pairs spanning the 2-D sections.
// The plane itself carries the restricted norm, so distances probed inside a
// section are intrinsic and any witness found there is a valid witness.
std::vector<Section> make_sections(Index dim, int count, std::uint64_t seed) {
  std::vector<Section> sections;
  if (dim == 2) {
    Vector e1 = Vector::Zero(2), e2 = Vector::Zero(2);
    e1[0] = 1.0;
    e2[1] = 1.0;
    sections.push_back({std::move(e1), std::move(e2)});
    return sections;
  }
  RandomStream rng(seed);
  while (static_cast<int>(sections.size()) < count) {
    Vector g1 = rng.normal_vector(dim);
    const double n1 = g1.norm();
    if (n1 < 1e-9) continue;
    g1 /= n1;
    Vector g2 = rng.normal_vector(dim);
    g2 -= g1.dot(g2) * g1;
    const double n2 = g2.norm();
    if (n2 < 1e-9) continue;
    g2 /= n2;
    sections.push_back({std::move(g1), std::move(g2)});
  }
  return sections;
}

// One objective sample. For the circumradius search the payload is the
// antipodal triple (a, b, c) = (u, v, 2x0 - v); for the defect search it is
// the recentred pair (a, b) = (u - x0, v - x0). score is -inf for invalid
// probes (coincident points) and +inf for degenerate triples.
struct Probe {
  double score = kNegInf;
  Vector a, b, c;
};

struct SearchOutcome {
  Probe best;
  long probes = 0;
  long iterations = 0;
  std::vector<SectionStat> per_section;
  std::vector<double> best_per_start;
  bool hit_infinite = false;
};

void take_better(Probe& best, const Probe& candidate) {
  if (candidate.score > best.score) best = candidate;
}

struct NelderMeadOutcome {
  Probe best;
  long evals = 0;
  long iterations = 0;
  bool hit_infinite = false;
};

// Derivative-free 2-D maximization over the (periodic) section angles. The
// objective is non-smooth for polyhedral norms, so no gradients anywhere.
NelderMeadOutcome nelder_mead_max(
    const std::function<Probe(double, double)>& f, double u0, double v0,
    double step, int max_iters, bool stop_on_infinite) {
  using Point = Eigen::Vector2d;
  std::array<Point, 3> x = {Point(u0, v0), Point(u0 + step, v0),
                            Point(u0, v0 + step)};
  std::array<Probe, 3> p;
  NelderMeadOutcome out;

  const auto eval = [&](const Point& q) {
    Probe pr = f(q[0], q[1]);
    ++out.evals;
    take_better(out.best, pr);
    if (stop_on_infinite && pr.score == kInfinity) out.hit_infinite = true;
    return pr;
  };

  for (int i = 0; i < 3; ++i) {
    p[i] = eval(x[i]);
    if (out.hit_infinite) return out;
  }

  for (int it = 0; it < max_iters; ++it) {
    ++out.iterations;
    std::array<int, 3> order = {0, 1, 2};
    std::sort(order.begin(), order.end(),
              [&](int l, int r) { return p[l].score > p[r].score; });
    const int ib = order[0], im = order[1], iw = order[2];

    if ((x[ib] - x[iw]).norm() < 1e-12 &&
        std::abs(p[ib].score - p[iw].score) <
            1e-15 * (1.0 + std::abs(p[ib].score)))
      break;

    const Point centroid = 0.5 * (x[ib] + x[im]);
    const Point reflected = centroid + (centroid - x[iw]);
    Probe pr = eval(reflected);
    if (out.hit_infinite) return out;

    if (pr.score > p[ib].score) {
      const Point expanded = centroid + 2.0 * (centroid - x[iw]);
      Probe pe = eval(expanded);
      if (out.hit_infinite) return out;
      if (pe.score > pr.score) {
        x[iw] = expanded;
        p[iw] = pe;
      } else {
        x[iw] = reflected;
        p[iw] = pr;
      }
    } else if (pr.score > p[im].score) {
      x[iw] = reflected;
      p[iw] = pr;
    } else {
      Point contracted;
      if (pr.score > p[iw].score)
        contracted = centroid + 0.5 * (reflected - centroid);
      else
        contracted = centroid - 0.5 * (centroid - x[iw]);
      Probe pc = eval(contracted);
      if (out.hit_infinite) return out;
      if (pc.score > std::max(pr.score, p[iw].score)) {
        x[iw] = contracted;
        p[iw] = pc;
      } else {
        // Shrink toward the best vertex.
        for (int i : {im, iw}) {
          x[i] = x[ib] + 0.5 * (x[i] - x[ib]);
          p[i] = eval(x[i]);
          if (out.hit_infinite) return out;
        }
      }
    }
  }
  return out;
}

// Grid scan plus multistart refinement inside one section. grid_eval(i, j)
// must agree with free_eval(2 pi i / grid, 2 pi j / grid); the split lets
// the caller cache the per-angle sphere points for the grid pass.
void search_section(const SearchBudget& budget, bool stop_on_infinite,
                    const std::function<Probe(int, int)>& grid_eval,
                    const std::function<Probe(double, double)>& free_eval,
                    SearchOutcome& out) {
  const int g = std::max(2, budget.grid);
  const double angle_step = kTwoPi / g;
  SectionStat stat{kNegInf, 0};

  struct Cell {
    double score;
    int i, j;
  };
  std::vector<Cell> cells;
  cells.reserve(static_cast<std::size_t>(g) * g);

  for (int i = 0; i < g && !out.hit_infinite; ++i) {
    for (int j = 0; j < g; ++j) {
      Probe pr = grid_eval(i, j);
      ++out.probes;
      ++stat.evaluations;
      stat.best = std::max(stat.best, pr.score);
      take_better(out.best, pr);
      if (stop_on_infinite && pr.score == kInfinity) {
        out.hit_infinite = true;
        break;
      }
      if (pr.score > kNegInf) cells.push_back({pr.score, i, j});
    }
  }

  if (!out.hit_infinite) {
    const int starts =
        std::min<int>(budget.refine_starts, static_cast<int>(cells.size()));
    std::partial_sort(cells.begin(), cells.begin() + starts, cells.end(),
                      [](const Cell& l, const Cell& r) {
                        return l.score > r.score;
                      });
    for (int s = 0; s < starts && !out.hit_infinite; ++s) {
      const auto nm = nelder_mead_max(
          free_eval, cells[s].i * angle_step, cells[s].j * angle_step,
          0.5 * angle_step, budget.refine_iters, stop_on_infinite);
      out.probes += nm.evals;
      stat.evaluations += nm.evals;
      out.iterations += nm.iterations;
      out.best_per_start.push_back(nm.best.score);
      stat.best = std::max(stat.best, nm.best.score);
      take_better(out.best, nm.best);
      if (nm.hit_infinite) out.hit_infinite = true;
    }
  }
  out.per_section.push_back(stat);
}

// Circumradius of the antipodal triple (u(thu), v(thv), 2x0 - v(thv)).
SearchOutcome run_circumradius_search(const NormSpec& spec, const VectorRef& x0,
                                      double r, const SearchBudget& budget,
                                      const CircumradiusOptions& copts) {
  const auto sections = make_sections(spec.dim(), budget.sections, budget.seed);
  const int g = std::max(2, budget.grid);
  SearchOutcome out;

  const auto triple_probe = [&](const Vector& u, const Vector& v,
                                const Vector& w) {
    Probe pr;
    pr.a = u;
    pr.b = v;
    pr.c = w;
    const TriangleSides sides = sides_between(spec, u, v, w);
    // Probes with a side at rounding scale (u nearly coincident with v or
    // with the antipode) carry no usable signal: the computed collinearity
    // slack is dominated by ulp noise there and would fake degeneracy even
    // on a Euclidean circle. Skip them; genuine witnesses have all sides at
    // the scale of the sphere.
    const double longest = std::max({sides.a, sides.b, sides.c});
    const double shortest = std::min({sides.a, sides.b, sides.c});
    if (!(shortest > 1e-9 * longest)) return pr;
    try {
      pr.score = circumradius(sides, copts).value_or_infinity();
    } catch (const InvalidMetric&) {
      // Gauge evaluations can carry enough rounding to trip the metric
      // check on extreme needles; treat the probe as invalid.
    }
    return pr;
  };

  for (const Section& sec : sections) {
    std::vector<Vector> pts(g), anti(g);
    for (int i = 0; i < g; ++i) {
      const double th = kTwoPi * i / g;
      Vector dir = std::cos(th) * sec.e1 + std::sin(th) * sec.e2;
      pts[i] = sphere_point(spec, x0, r, dir);
      anti[i] = antipode(x0, pts[i]);
    }
    const auto grid_eval = [&](int i, int j) {
      return triple_probe(pts[i], pts[j], anti[j]);
    };
    const auto free_eval = [&](double thu, double thv) {
      const Vector du = std::cos(thu) * sec.e1 + std::sin(thu) * sec.e2;
      const Vector dv = std::cos(thv) * sec.e1 + std::sin(thv) * sec.e2;
      const Vector u = sphere_point(spec, x0, r, du);
      const Vector v = sphere_point(spec, x0, r, dv);
      return triple_probe(u, v, antipode(x0, v));
    };
    search_section(budget, /*stop_on_infinite=*/true, grid_eval, free_eval,
                   out);
    if (out.hit_infinite) break;
  }
  return out;
}

// |parallelogram defect| of the recentred pair (u(thu) - x0, v(thv) - x0);
// after recentering the search lives on dB_r(0) and x0 drops out.
SearchOutcome run_defect_search(const NormSpec& spec, double r,
                                const SearchBudget& budget) {
  const auto sections = make_sections(spec.dim(), budget.sections, budget.seed);
  const int g = std::max(2, budget.grid);
  SearchOutcome out;

  const auto pair_probe = [&](const Vector& ru, const Vector& rv) {
    Probe pr;
    pr.a = ru;
    pr.b = rv;
    pr.score = std::abs(parallelogram_defect(spec, ru, rv));
    return pr;
  };

  const Vector origin = Vector::Zero(spec.dim());
  for (const Section& sec : sections) {
    std::vector<Vector> rel(g);
    for (int i = 0; i < g; ++i) {
      const double th = kTwoPi * i / g;
      Vector dir = std::cos(th) * sec.e1 + std::sin(th) * sec.e2;
      rel[i] = sphere_point(spec, origin, r, dir);
    }
    const auto grid_eval = [&](int i, int j) { return pair_probe(rel[i], rel[j]); };
    const auto free_eval = [&](double thu, double thv) {
      const Vector du = std::cos(thu) * sec.e1 + std::sin(thu) * sec.e2;
      const Vector dv = std::cos(thv) * sec.e1 + std::sin(thv) * sec.e2;
      return pair_probe(sphere_point(spec, origin, r, du),
                        sphere_point(spec, origin, r, dv));
    };
    search_section(budget, /*stop_on_infinite=*/false, grid_eval, free_eval,
                   out);
  }
  return out;
}

void require_searchable(const NormSpec& spec, const VectorRef& x0, double r) {
  if (spec.dim() < 2)
    throw Error("sphere search requires dimension >= 2");
  if (x0.size() != spec.dim()) throw DimensionMismatch(spec.dim(), x0.size());
  if (!(r > 0)) throw Error("sphere radius must be positive");
}

Vector make_vec2(double x, double y) {
  Vector v(2);
  v << x, y;
  return v;
}

}  // namespace

double parallelogram_defect(const NormSpec& spec, const VectorRef& u,
                            const VectorRef& v) {
  if (u.size() != v.size()) throw DimensionMismatch(u.size(), v.size());
  const double sum = spec(u + v);
  const double diff = spec(u - v);
  const double nu = spec(u);
  const double nv = spec(v);
  return sum * sum + diff * diff - 2.0 * nu * nu - 2.0 * nv * nv;
}

std::optional<DefectRecord> find_defect_pair(const NormSpec& spec,
                                             const VectorRef& x0, double r,
                                             const SearchBudget& budget) {
  require_searchable(spec, x0, r);
  const SearchOutcome out = run_defect_search(spec, r, budget);
  if (out.best.score <= 1e-9 * r * r) return std::nullopt;
  DefectRecord rec;
  rec.u = out.best.a;
  rec.v = out.best.b;
  rec.defect = parallelogram_defect(spec, rec.u, rec.v);
  return rec;
}

ExtendedRadius s_of_finite_set(const NormSpec& spec,
                               const std::vector<Vector>& points,
                               const CircumradiusOptions& opts) {
  const Index n = static_cast<Index>(points.size());
  for (const auto& p : points)
    if (p.size() != spec.dim()) throw DimensionMismatch(spec.dim(), p.size());

  Matrix d = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) d(i, j) = d(j, i) = dist(spec, points[i], points[j]);

  Index distinct = 0;
  for (Index i = 0; i < n; ++i) {
    bool duplicate = false;
    for (Index j = 0; j < i; ++j)
      if (d(i, j) == 0.0) {
        duplicate = true;
        break;
      }
    if (!duplicate) ++distinct;
  }
  if (distinct < 3)
    throw CoincidentPoints("S(M) needs at least 3 mutually distinct points");

  double best = 0.0;
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      if (d(i, j) == 0.0) continue;
      for (Index k = j + 1; k < n; ++k) {
        if (d(j, k) == 0.0 || d(k, i) == 0.0) continue;
        const ExtendedRadius rho =
            circumradius(TriangleSides{d(i, j), d(j, k), d(k, i)}, opts);
        if (rho.is_infinite()) return ExtendedRadius::infinite();
        best = std::max(best, rho.value());
      }
    }
  }
  return ExtendedRadius::finite(best);
}

SphereSearchResult s_of_sphere(const NormSpec& spec, const VectorRef& x0,
                               double r, const SearchBudget& budget,
                               const CircumradiusOptions& copts) {
  require_searchable(spec, x0, r);
  const SearchOutcome out = run_circumradius_search(spec, x0, r, budget, copts);

  SphereSearchResult res;
  res.probes = out.probes;
  res.iterations = out.iterations;
  res.per_section = out.per_section;
  res.best_per_start = out.best_per_start;
  res.short_circuited = out.hit_infinite;
  if (out.best.score == kNegInf)
    throw Error("sphere search found no valid probe");
  res.s_estimate = out.hit_infinite ? ExtendedRadius::infinite()
                                    : ExtendedRadius::finite(out.best.score);
  res.witness = WitnessTriple{out.best.a, out.best.b, out.best.c,
                              res.s_estimate};
  return res;
}

ClassificationReport classify(const NormSpec& spec, const VectorRef& x0,
                              double r, const ClassifyOptions& options) {
  require_searchable(spec, x0, r);

  ClassificationReport report;
  report.r = r;
  report.x0 = x0;
  report.options = options;

  const SphereSearchResult sres =
      s_of_sphere(spec, x0, r, options.budget, options.circ);
  report.probes = sres.probes;
  report.iterations = sres.iterations;
  report.sections = sres.per_section;
  report.best_per_start = sres.best_per_start;

  SearchBudget defect_budget = options.budget;
  defect_budget.seed = options.budget.seed ^ 0x9e3779b97f4a7c15ull;
  const SearchOutcome dres = run_defect_search(spec, r, defect_budget);
  report.probes += dres.probes;
  report.iterations += dres.iterations;
  report.max_defect_seen = dres.best.score == kNegInf ? 0.0 : dres.best.score;

  ExtendedRadius s = sres.s_estimate;
  std::optional<WitnessTriple> witness = sres.witness;

  const double defect_cut = options.defect_threshold * r * r;
  if (report.max_defect_seen > defect_cut) {
    DefectRecord rec;
    rec.u = dres.best.a;
    rec.v = dres.best.b;
    rec.defect = parallelogram_defect(spec, rec.u, rec.v);
    report.defect_pair = rec;
    // Fold the defect pair's antipodal triple into the running maximum; by
    // the defect-degeneracy link its circumradius exceeds r.
    const Vector u_abs = x0 + rec.u;
    const Vector v_abs = x0 + rec.v;
    const Vector w_abs = antipode(x0, v_abs);
    try {
      const ExtendedRadius rho =
          circumradius_points(spec, u_abs, v_abs, w_abs, options.circ);
      if (rho > s) {
        s = rho;
        witness = WitnessTriple{u_abs, v_abs, w_abs, rho};
      }
    } catch (const Error&) {
      // A coincident or rounding-degenerate fold adds nothing; the defect
      // still vetoes the inner-product verdict below.
    }
  }

  report.s_estimate = s;
  report.witness = witness;

  const bool exceeds_margin =
      s.is_infinite() || s.value() > r * (1.0 + options.margin);
  if (exceeds_margin) {
    report.verdict = Verdict::NotInnerProduct;
  } else if (s.value() >= r * (1.0 - options.margin) &&
             report.max_defect_seen <= defect_cut) {
    report.verdict = Verdict::InnerProduct;
  } else {
    report.verdict = Verdict::Inconclusive;
  }
  return report;
}

std::array<Vector, 3> achieve_circumradius_linf(const ExtendedRadius& d) {
  if (d.is_infinite()) {
    // The collinear antipodal triple: r(u, v, -v) is infinite.
    return {make_vec2(0, 1), make_vec2(1, 0), make_vec2(-1, 0)};
  }
  const double target = d.value();
  if (!(target > 0)) throw Error("target circumradius must be positive");

  const double split = 2.0 / std::sqrt(3.0);
  if (target < split) {
    // Equilateral family with side s: circumradius s / sqrt(3).
    const double s = target * std::sqrt(3.0);
    return {make_vec2(-1, 1 - s), make_vec2(-1 + s, 1), make_vec2(-1, 1)};
  }
  // Isosceles family with sides (s, s, 2): circumradius
  // s^2 / (2 sqrt(s^2 - 1)); solve for s in (1, 2]. The two roots are
  // s^2 = 2 d (d +- sqrt(d^2 - 1)); the larger root is on the sphere only
  // at the split point (where it equals 4), elsewhere the smaller applies.
  const double disc = std::sqrt(std::max(0.0, (target - 1.0) * (target + 1.0)));
  const double big = 2.0 * target * (target + disc);
  const double s2 = big <= 4.0 * (1.0 + 1e-12)
                        ? big
                        : 2.0 * target / (target + disc);
  const double s = std::min(2.0, std::sqrt(s2));
  return {make_vec2(-1, 1 - s), make_vec2(1, 1 - s), make_vec2(0, 1)};
}

Matrix circumradius_landscape(const NormSpec& spec, const VectorRef& x0,
                              double r, int grid, int section_index,
                              std::uint64_t seed) {
  require_searchable(spec, x0, r);
  if (grid < 2) throw Error("landscape grid must be >= 2");
  const auto sections = make_sections(spec.dim(), section_index + 1, seed);
  const Section& sec = sections.at(
      spec.dim() == 2 ? 0 : static_cast<std::size_t>(section_index));

  std::vector<Vector> pts(grid), anti(grid);
  for (int i = 0; i < grid; ++i) {
    const double th = kTwoPi * i / grid;
    Vector dir = std::cos(th) * sec.e1 + std::sin(th) * sec.e2;
    pts[i] = sphere_point(spec, x0, r, dir);
    anti[i] = antipode(x0, pts[i]);
  }
  Matrix out(grid, grid);
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      const TriangleSides sides = sides_between(spec, pts[i], pts[j], anti[j]);
      // Same validity rule as the search: sides at rounding scale carry no
      // signal and are marked NaN.
      const double longest = std::max({sides.a, sides.b, sides.c});
      const double shortest = std::min({sides.a, sides.b, sides.c});
      if (!(shortest > 1e-9 * longest)) {
        out(i, j) = std::numeric_limits<double>::quiet_NaN();
        continue;
      }
      out(i, j) = circumradius(sides).value_or_infinity();
    }
  }
  return out;
}

}  // namespace circum
