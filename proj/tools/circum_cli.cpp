// Command-line front-end: classification of normed spaces by the maximal
// circumradius of a sphere, circumradius evaluation, the Euclidean
// four-point embeddability test, and the discrete curvature energies.
//
// Exit codes: classify maps its verdict to 0 (inner product), 1 (not inner
// product), 2 (inconclusive); embed4 exits 0/1 for embeddable/not; config
// and usage problems exit 64, invalid data 65, internal faults 70.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "circum/cloud_io.hpp"
#include "circum/degeneracy.hpp"
#include "circum/embedding.hpp"
#include "circum/energies.hpp"
#include "circum/norm_config.hpp"
#include "circum/report.hpp"

namespace {

using namespace circum;

constexpr int kExitUsage = 64;
constexpr int kExitData = 65;
constexpr int kExitInternal = 70;

struct CommonOutput {
  std::string format = "json";
};

void print_report(const ordered_json& doc, const CommonOutput& out,
                  const std::string& text) {
  if (out.format == "json")
    std::cout << to_canonical_string(doc);
  else
    std::cout << text;
}

std::string radius_text(const ExtendedRadius& r) {
  if (r.is_infinite()) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", r.value());
  return buf;
}

Vector parse_center(const std::vector<double>& values, Index dim) {
  if (values.empty()) return Vector::Zero(dim);
  if (static_cast<Index>(values.size()) != dim)
    throw ConfigError("--center", "expected " + std::to_string(dim) +
                                      " coordinates, got " +
                                      std::to_string(values.size()));
  Vector x0(dim);
  for (Index i = 0; i < dim; ++i) x0[i] = values[static_cast<std::size_t>(i)];
  return x0;
}

void emit_plot(const std::string& path, const NormSpec& spec, const Vector& x0,
               double r, const SearchBudget& budget) {
  const Matrix land = circumradius_landscape(spec, x0, r, budget.grid, 0,
                                             budget.seed);
  std::ofstream out(path);
  if (!out) throw ConfigError(path, "cannot open plot output file");
  out << "# circumradius of (u(theta_u), v(theta_v), antipode) over section 0\n";
  out << "# rows: theta_u = 2*pi*i/" << budget.grid
      << ", columns: theta_v likewise; inf = degenerate, nan = coincident\n";
  out.precision(17);
  for (Index i = 0; i < land.rows(); ++i) {
    for (Index j = 0; j < land.cols(); ++j) {
      if (j) out << ",";
      const double v = land(i, j);
      if (std::isnan(v))
        out << "nan";
      else if (std::isinf(v))
        out << "inf";
      else
        out << v;
    }
    out << "\n";
  }
}

int run_classify(const std::string& config_path,
                 const std::vector<double>& center, double radius,
                 const ClassifyOptions& options, const CommonOutput& out,
                 const std::string& plot_path) {
  const NormSpec spec = load_norm_config(config_path);
  spec.validate(200, options.budget.seed);
  const Vector x0 = parse_center(center, spec.dim());

  const ClassificationReport report = classify(spec, x0, radius, options);
  if (!plot_path.empty())
    emit_plot(plot_path, spec, x0, radius, options.budget);

  std::string text;
  {
    std::string witness;
    if (report.witness) {
      witness = "witness circumradius: " +
                radius_text(report.witness->circumradius) + "\n";
    }
    text = "verdict: " + verdict_name(report.verdict) + "\n" +
           "s_estimate: " + radius_text(report.s_estimate) + "\n" + witness +
           "probes: " + std::to_string(report.probes) + "\n";
  }
  print_report(classification_to_json(spec, report), out, text);
  return verdict_exit_code(report.verdict);
}

int run_circumradius(const std::vector<double>& sides,
                     const std::string& points_path,
                     const std::string& config_path, const CommonOutput& out) {
  TriangleSides tri;
  if (!sides.empty()) {
    tri = TriangleSides{sides[0], sides[1], sides[2]};
  } else {
    if (config_path.empty())
      throw ConfigError("--points", "requires --config for the norm");
    const NormSpec spec = load_norm_config(config_path);
    const CloudTable table = load_cloud_file(points_path, spec.dim());
    if (table.points.size() != 3)
      throw ConfigError(points_path, "expected exactly 3 points");
    tri = sides_between(spec, table.points[0], table.points[1],
                        table.points[2]);
  }
  const ExtendedRadius r = circumradius(tri);
  print_report(circumradius_report(tri, r), out, radius_text(r) + "\n");
  return 0;
}

int run_embed4(const std::string& distances_path, const CommonOutput& out) {
  const Matrix m = load_matrix_file(distances_path);
  const DistanceMatrix4 dm = DistanceMatrix4::from_matrix(m);
  const FourPointResult result = four_point_embeddable(dm);

  std::string text;
  if (result.embeddable) {
    text = "EMBEDDABLE\n";
    for (const auto& p : result.embedding.points) {
      char buf[128];
      std::snprintf(buf, sizeof(buf), "%.17g %.17g %.17g\n", p[0], p[1], p[2]);
      text += buf;
    }
  } else {
    text = "NOT_EMBEDDABLE: " + result.certificate->reason + "\n";
  }
  print_report(embed4_report(dm, result), out, text);
  return result.embeddable ? 0 : 1;
}

int run_energy(const std::string& cloud_path, const std::string& config_path,
               Index dim_arg, const std::string& which, double p,
               const EnergyOptions& opts, const CommonOutput& out) {
  std::optional<NormSpec> spec;
  if (!config_path.empty()) spec = load_norm_config(config_path);
  const Index expected_dim = spec ? spec->dim() : dim_arg;
  const CloudTable table = load_cloud_file(cloud_path, expected_dim);
  if (!spec) spec = NormSpec::p_norm(table.dim, 2.0);

  const WeightedPointCloud cloud =
      WeightedPointCloud::from_points(*spec, table.points, table.weights);

  ExtendedRadius thick;
  MengerEnergy menger;
  std::string text;
  if (which == "thickness") {
    thick = thickness(cloud, opts);
    text = radius_text(thick) + "\n";
  } else {
    menger = menger_energy_detailed(cloud, p, opts);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g\n", menger.value);
    text = buf;
  }
  print_report(energy_report(which, p, cloud.size(), thick,
                             which == "menger" ? &menger : nullptr, opts),
               out, text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "circum: circumradius geometry of normed spaces — classify a norm as "
      "inner-product or not by the maximal circumradius of a sphere, compute "
      "metric circumradii, test four-point Euclidean embeddability, and "
      "evaluate discrete thickness / Menger curvature energies"};
  app.require_subcommand(1);

  CommonOutput out;

  // classify
  auto* cls = app.add_subcommand(
      "classify", "Decide inner-product vs not for a configured norm");
  std::string cls_config;
  std::vector<double> cls_center;
  double cls_radius = 1.0;
  std::string cls_plot;
  ClassifyOptions cls_options;
  cls->add_option("--config", cls_config, "norm config JSON file")
      ->required();
  cls->add_option("--center", cls_center,
                  "sphere center coordinates (default: origin)")
      ->delimiter(',');
  cls->add_option("--radius", cls_radius, "sphere radius (default 1)");
  cls->add_option("--grid", cls_options.budget.grid,
                  "search grid per section angle (default 64)");
  cls->add_option("--sections", cls_options.budget.sections,
                  "random 2-D sections in dim >= 3 (default 16)");
  cls->add_option("--refine-starts", cls_options.budget.refine_starts,
                  "refinement starts per section (default 8)");
  cls->add_option("--refine-iters", cls_options.budget.refine_iters,
                  "refinement iterations per start (default 200)");
  cls->add_option("--seed", cls_options.budget.seed, "search seed (default 0)");
  cls->add_option("--margin", cls_options.margin,
                  "relative decision margin (default 1e-6)");
  cls->add_option("--defect-threshold", cls_options.defect_threshold,
                  "defect veto threshold in units of r^2 (default 1e-9)");
  cls->add_option("--emit-plot", cls_plot,
                  "write the section-0 circumradius landscape as CSV");
  cls->add_option("--format", out.format, "json|text (default json)")
      ->check(CLI::IsMember({"json", "text"}));

  // circumradius
  auto* cr = app.add_subcommand("circumradius",
                                "Circumradius from sides or three points");
  std::vector<double> cr_sides;
  std::string cr_points, cr_config;
  cr->add_option("--sides", cr_sides, "three pairwise distances a b c")
      ->expected(3);
  cr->add_option("--points", cr_points, "file with 3 points (cloud format)");
  cr->add_option("--config", cr_config, "norm config for --points");
  cr->add_option("--format", out.format, "json|text (default json)")
      ->check(CLI::IsMember({"json", "text"}));

  // embed4
  auto* e4 = app.add_subcommand(
      "embed4", "Euclidean four-point embeddability from a 4x4 distance file");
  std::string e4_distances;
  e4->add_option("--distances", e4_distances, "4x4 distance matrix file")
      ->required();
  e4->add_option("--format", out.format, "json|text (default json)")
      ->check(CLI::IsMember({"json", "text"}));

  // energy
  auto* en = app.add_subcommand(
      "energy", "Thickness or integral Menger curvature of a point cloud");
  std::string en_cloud, en_config, en_which = "thickness";
  double en_p = 2.0;
  Index en_dim = -1;
  EnergyOptions en_opts;
  en->add_option("--cloud", en_cloud, "point cloud file")->required();
  en->add_option("--config", en_config,
                 "norm config (default: Euclidean on the file's dimension)");
  en->add_option("--dim", en_dim,
                 "point dimension when no config is given (enables a weight "
                 "column)");
  en->add_option("--energy", en_which, "thickness|menger")
      ->check(CLI::IsMember({"thickness", "menger"}));
  en->add_option("--p", en_p, "Menger exponent (default 2)");
  en->add_option("--max-exact", en_opts.max_exact,
                 "exact triple enumeration up to this size (default 1024)");
  en->add_option("--mc-samples", en_opts.mc_samples,
                 "Monte Carlo samples above --max-exact");
  en->add_option("--seed", en_opts.seed, "Monte Carlo seed");
  en->add_option("--threads", en_opts.threads,
                 "worker threads for the triple loops (0 = auto)");
  en->add_option("--format", out.format, "json|text (default json)")
      ->check(CLI::IsMember({"json", "text"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (cls->parsed())
      return run_classify(cls_config, cls_center, cls_radius, cls_options, out,
                          cls_plot);
    if (cr->parsed()) {
      if (cr_sides.empty() == cr_points.empty())
        throw ConfigError("circumradius",
                          "exactly one of --sides or --points is required");
      return run_circumradius(cr_sides, cr_points, cr_config, out);
    }
    if (e4->parsed()) return run_embed4(e4_distances, out);
    if (en->parsed())
      return run_energy(en_cloud, en_config, en_dim, en_which, en_p, en_opts,
                        out);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
