// Acceptance suite: end-to-end checks of the classifier, the circumradius
// kernels, the embeddability tests and the energies, at pinned tolerances.
// Prints one PASS/FAIL line per criterion; exit code is the failure count.
//
// Usage: circum_acceptance --cli /path/to/circum

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "circum/cloud_io.hpp"
#include "circum/degeneracy.hpp"
#include "circum/embedding.hpp"
#include "circum/energies.hpp"
#include "circum/norm_config.hpp"
#include "circum/random.hpp"
#include "circum/report.hpp"

namespace fs = std::filesystem;
using namespace circum;

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::string g_cli;
fs::path g_scratch;
std::ostringstream g_detail;  // failure context for the current criterion

bool expect(bool ok, const std::string& what) {
  if (!ok) g_detail << "    failed: " << what << "\n";
  return ok;
}

bool rel_ok(double got, double want, double tol, const std::string& what) {
  const bool ok =
      std::abs(got - want) <= tol * std::max(std::abs(want), 1e-300);
  if (!ok)
    g_detail << "    failed: " << what << " (got " << got << ", want " << want
             << ", tol " << tol << ")\n";
  return ok;
}

struct CliResult {
  int exit_code = -1;
  std::string output;
};

CliResult run_cli(const std::vector<std::string>& args) {
  std::string cmd = "'" + g_cli + "'";
  for (const auto& a : args) cmd += " '" + a + "'";
  cmd += " 2>/dev/null";
  CliResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return res;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) res.output.append(buf, n);
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

fs::path write_file(const std::string& name, const std::string& content) {
  const fs::path p = g_scratch / name;
  std::ofstream out(p);
  out << content;
  return p;
}

std::array<Vector, 3> linf_equilateral(double s) {
  Vector u(2), v(2), w(2);
  u << -1, 1 - s;
  v << -1 + s, 1;
  w << -1, 1;
  return {u, v, w};
}

std::array<Vector, 3> linf_isosceles(double s) {
  Vector u(2), v(2), w(2);
  u << -1, 1 - s;
  v << 1, 1 - s;
  w << 0, 1;
  return {u, v, w};
}

// ---- criterion 1 -----------------------------------------------------------

bool criterion1() {
  const NormSpec linf = NormSpec::p_norm(2, kInfinity);
  bool ok = true;
  for (double s : {0.5, 1.0, 1.9}) {
    const auto t = linf_equilateral(s);
    const ExtendedRadius r = circumradius_points(linf, t[0], t[1], t[2]);
    ok &= expect(r.is_finite(), "equilateral family radius finite");
    ok &= rel_ok(r.value(), s / std::sqrt(3.0), 1e-12,
                 "equilateral family s=" + std::to_string(s));
  }
  for (double s : {1.2, 1.5, 2.0}) {
    const auto t = linf_isosceles(s);
    const ExtendedRadius r = circumradius_points(linf, t[0], t[1], t[2]);
    ok &= expect(r.is_finite(), "isosceles family radius finite");
    ok &= rel_ok(r.value(), s * s / (2.0 * std::sqrt(s * s - 1.0)), 1e-12,
                 "isosceles family s=" + std::to_string(s));
  }
  return ok;
}

// ---- criterion 2 -----------------------------------------------------------

bool criterion2() {
  bool ok = true;
  const NormSpec linf = NormSpec::p_norm(2, kInfinity);
  Vector u(2), v(2), mv(2);
  u << 0, 1;
  v << 1, 0;
  mv << -1, 0;
  ok &= expect(circumradius_points(linf, u, v, mv).is_infinite(),
               "r(u, v, -v) is infinite under the sup norm");

  // {theta, u, v, -v} through the CLI.
  const fs::path dist = write_file("example3.dist",
                                   "0 1 1 1\n"
                                   "1 0 1 1\n"
                                   "1 1 0 2\n"
                                   "1 1 2 0\n");
  const CliResult res = run_cli({"embed4", "--distances", dist.string()});
  ok &= expect(res.exit_code == 1, "embed4 exits 1 for a non-embeddable set");
  ok &= expect(res.output.find("\"embeddable\": false") != std::string::npos,
               "embed4 reports embeddable=false");
  return ok;
}

// ---- criterion 3 -----------------------------------------------------------

bool criterion3(double& max_dev) {
  const NormSpec euclid = NormSpec::p_norm(2, 2.0);
  RandomStream rng(303);
  max_dev = 0;
  bool ok = true;
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < 1000; ++i) {
    Vector u(2), v(2), w(2);
    const double a = rng.uniform(0.0, kTwoPi);
    const double b = rng.uniform(0.0, kTwoPi);
    const double c = rng.uniform(0.0, kTwoPi);
    u << std::cos(a), std::sin(a);
    v << std::cos(b), std::sin(b);
    w << std::cos(c), std::sin(c);
    const ExtendedRadius r = circumradius_points(euclid, u, v, w);
    if (!expect(r.is_finite(), "circle triple radius finite")) return false;
    max_dev = std::max(max_dev, std::abs(r.value() - 1.0));
  }
  ok &= expect(max_dev <= 1e-9, "all 1000 circle triples within 1e-9");
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  ok &= expect(secs < 1.0, "criterion 3 under 1 second");
  return ok;
}

// ---- criteria 4, 5, 8, 10 --------------------------------------------------

struct SweepCase {
  std::string name;
  fs::path config;
  Verdict expected;
};

std::vector<SweepCase> build_sweep_cases() {
  std::vector<SweepCase> cases;
  int idx = 0;
  const auto add = [&](const std::string& name, const ordered_json& cfg,
                       Verdict expected) {
    const fs::path p = write_file("sweep" + std::to_string(idx++) + ".json",
                                  cfg.dump(2) + "\n");
    cases.push_back({name, p, expected});
  };

  for (Index dim : {Index(2), Index(3), Index(4)}) {
    for (double p : {1.0, 1.5, 3.0, kInfinity}) {
      const std::string pname = std::isinf(p) ? "inf" : std::to_string(p);
      add("pnorm p=" + pname + " dim=" + std::to_string(dim),
          norm_config_to_json(NormSpec::p_norm(dim, p)),
          Verdict::NotInnerProduct);
    }
    add("pnorm p=2 dim=" + std::to_string(dim),
        norm_config_to_json(NormSpec::p_norm(dim, 2.0)),
        Verdict::InnerProduct);
  }
  RandomStream rng(404);
  const std::array<Index, 5> qdims = {2, 3, 4, 3, 2};
  for (int k = 0; k < 5; ++k) {
    const Index dim = qdims[static_cast<std::size_t>(k)];
    Matrix a(dim, dim);
    for (Index i = 0; i < dim; ++i)
      for (Index j = 0; j < dim; ++j) a(i, j) = rng.uniform(-1.0, 1.0);
    const Matrix q = a.transpose() * a + 0.5 * Matrix::Identity(dim, dim);
    add("quadratic #" + std::to_string(k + 1) + " dim=" + std::to_string(dim),
        norm_config_to_json(NormSpec::quadratic(q)), Verdict::InnerProduct);
  }
  return cases;
}

struct SweepRun {
  SweepCase c;
  CliResult cli;
  ordered_json report;
};

std::vector<SweepRun> g_sweep;  // shared by criteria 4, 5, 8, 10

bool criterion4(double& worst_seconds) {
  g_sweep.clear();
  bool ok = true;
  worst_seconds = 0;
  for (const auto& c : build_sweep_cases()) {
    const auto t0 = std::chrono::steady_clock::now();
    CliResult res = run_cli({"classify", "--config", c.config.string(),
                             "--radius", "1", "--seed", "0", "--margin",
                             "1e-6"});
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    worst_seconds = std::max(worst_seconds, secs);
    ok &= expect(secs < 10.0, c.name + " under 10 s (took " +
                                  std::to_string(secs) + ")");
    ok &= expect(res.exit_code == verdict_exit_code(c.expected),
                 c.name + " exit code matches expected verdict");
    ordered_json report;
    try {
      report = ordered_json::parse(res.output);
    } catch (...) {
      ok &= expect(false, c.name + " produced parseable JSON");
      continue;
    }
    ok &= expect(report.at("verdict").get<std::string>() ==
                     verdict_name(c.expected),
                 c.name + " verdict is " + verdict_name(c.expected));
    if (c.expected == Verdict::NotInnerProduct) {
      const ExtendedRadius rho =
          radius_from_json(report.at("witness").at("circumradius"));
      ok &= expect(rho > ExtendedRadius::finite(1.0 + 1e-3),
                   c.name + " witness circumradius exceeds r(1+1e-3)");
    }
    g_sweep.push_back({c, std::move(res), std::move(report)});
  }
  return ok;
}

bool criterion5() {
  bool ok = expect(!g_sweep.empty(), "criterion 4 sweep ran");
  for (const auto& run : g_sweep) {
    const ExtendedRadius s = radius_from_json(run.report.at("s_estimate"));
    ok &= expect(s >= ExtendedRadius::finite(1.0 * (1.0 - 1e-9)),
                 run.c.name + " s_estimate >= r(1-1e-9)");
  }
  return ok;
}

bool criterion8(int& pairs_checked) {
  bool ok = expect(!g_sweep.empty(), "criterion 4 sweep ran");
  pairs_checked = 0;
  for (const auto& run : g_sweep) {
    const ordered_json& dp = run.report.at("defect_pair");
    if (dp.is_null()) continue;
    const NormSpec spec = load_norm_config(run.c.config.string());
    Vector u(spec.dim()), v(spec.dim());
    for (Index i = 0; i < spec.dim(); ++i) {
      u[i] = dp.at("u").at(static_cast<std::size_t>(i)).get<double>();
      v[i] = dp.at("v").at(static_cast<std::size_t>(i)).get<double>();
    }
    // The pair lives on dB_1(0); its antipodal triple must be degenerate.
    const ExtendedRadius rho = circumradius_points(spec, u, v, -v);
    ok &= expect(rho.is_infinite() || rho.value() > 1.0 + 1e-12,
                 run.c.name + " defect pair certifies r(u,v,-v) > r");
    ++pairs_checked;
  }
  ok &= expect(pairs_checked >= 12,
               "every non-inner-product space returned a defect pair");
  return ok;
}

bool criterion10() {
  bool ok = expect(!g_sweep.empty(), "criterion 4 sweep ran");
  for (const auto& run : g_sweep) {
    const CliResult again = run_cli({"classify", "--config",
                                     run.c.config.string(), "--radius", "1",
                                     "--seed", "0", "--margin", "1e-6"});
    ok &= expect(again.exit_code == run.cli.exit_code,
                 run.c.name + " repeated exit code identical");
    ok &= expect(again.output == run.cli.output,
                 run.c.name + " repeated JSON byte-identical");
  }
  return ok;
}

// ---- criterion 6 -----------------------------------------------------------

bool criterion6() {
  const NormSpec linf = NormSpec::p_norm(2, kInfinity);
  bool ok = true;
  for (double d : {0.1, 1.0, 10.0, 100.0}) {
    const auto triple = achieve_circumradius_linf(ExtendedRadius::finite(d));
    for (const auto& p : triple)
      ok &= expect(std::abs(norm(linf, p) - 1.0) <= 1e-12,
                   "target " + std::to_string(d) + ": point on unit sphere");
    const ExtendedRadius r =
        circumradius_points(linf, triple[0], triple[1], triple[2]);
    ok &= expect(r.is_finite(), "target radius finite");
    ok &= rel_ok(r.value(), d, 1e-9, "target d=" + std::to_string(d));
  }
  return ok;
}

// ---- criterion 7 -----------------------------------------------------------

bool criterion7(int& compared) {
  RandomStream rng(707);
  compared = 0;
  bool ok = true;
  for (int i = 0; i < 1000; ++i) {
    Matrix d(4, 4);
    for (;;) {
      std::array<Vector, 4> pts;
      for (auto& p : pts) p = rng.uniform_vector(3, -2.0, 2.0);
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
          d(a, b) = a == b ? 0.0 : (pts[static_cast<std::size_t>(a)] -
                                    pts[static_cast<std::size_t>(b)])
                                       .norm();
      if (i % 2 == 1) {
        for (int a = 0; a < 4; ++a)
          for (int b = a + 1; b < 4; ++b) {
            d(a, b) *= 1.0 + 0.05 * rng.uniform(-1.0, 1.0);
            d(b, a) = d(a, b);
          }
      }
      try {
        DistanceMatrix4::from_matrix(d);
        break;
      } catch (const Error&) {
      }
    }
    const DistanceMatrix4 dm = DistanceMatrix4::from_matrix(d);
    const double scale = dm.scale();
    const FourPointResult res = four_point_embeddable(dm);
    const double cm = cayley_menger_det4(dm);
    const double s8 = std::pow(scale, 8);
    if (std::abs(cm) <= 1e-9 * s8) continue;
    if (res.certificate &&
        std::abs(res.certificate->squared_height) <= 1e-9 * scale * scale)
      continue;
    ++compared;
    if (res.embeddable != cayley_menger_sign_test(dm)) {
      ok &= expect(false, "disagreement at case " + std::to_string(i));
    }
  }
  ok &= expect(compared > 800, "boundary band stayed the exception");
  return ok;
}

// ---- criterion 9 -----------------------------------------------------------

bool criterion9(double& menger_value) {
  bool ok = true;
  const NormSpec euclid = NormSpec::p_norm(2, 2.0);

  const auto circle_cloud = [&](int n) {
    std::vector<Vector> pts(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      Vector p(2);
      const double th = kTwoPi * i / n;
      p << std::cos(th), std::sin(th);
      pts[static_cast<std::size_t>(i)] = p;
    }
    return WeightedPointCloud::from_points(
        euclid, std::move(pts), Vector::Constant(n, kTwoPi / n));
  };

  const ExtendedRadius thick = thickness(circle_cloud(64));
  ok &= expect(thick.is_finite(), "64-sample thickness finite");
  ok &= rel_ok(thick.value(), 1.0, 1e-12, "64-sample circle thickness");

  const auto t0 = std::chrono::steady_clock::now();
  menger_value = menger_energy(circle_cloud(512), 2.0);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  const double closed_form =
      std::pow(kTwoPi, 3) * (511.0 * 510.0) / (512.0 * 512.0);
  ok &= rel_ok(menger_value, closed_form, 1e-12,
               "n=512 Menger energy closed form");
  ok &= expect(std::abs(menger_value - std::pow(kTwoPi, 3)) <
                   0.01 * std::pow(kTwoPi, 3),
               "deviation from (2 pi)^3 below 1%");
  ok &= expect(secs < 30.0,
               "n=512 exact triple sum under 30 s (took " +
                   std::to_string(secs) + ")");
  return ok;
}

struct Criterion {
  std::string label;
  std::function<bool(std::string&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--cli") g_cli = argv[i + 1];
  if (g_cli.empty()) {
    std::cerr << "usage: circum_acceptance --cli /path/to/circum\n";
    return 99;
  }
  g_scratch = fs::temp_directory_path() /
              ("circum-acceptance-" + std::to_string(::getpid()));
  fs::create_directories(g_scratch);

  double max_dev = 0, worst_secs = 0, menger_value = 0;
  int compared = 0, pairs = 0;

  const std::vector<Criterion> criteria = {
      {"criterion 1: sup-norm golden circumradius families at relative 1e-12",
       [&](std::string&) { return criterion1(); }},
      {"criterion 2: degenerate antipodal triple and its non-embeddable "
       "quadruple (via CLI embed4)",
       [&](std::string&) { return criterion2(); }},
      {"criterion 3: 1000 random Euclidean circle triples within 1e-9 of r",
       [&](std::string& note) {
         const bool ok = criterion3(max_dev);
         char buf[48];
         std::snprintf(buf, sizeof(buf), "max |r-1| = %.2e", max_dev);
         note = buf;
         return ok;
       }},
      {"criterion 4: classifier soundness sweep (dims 2-4, p in "
       "{1,1.5,2,3,inf}, 5 quadratic forms; via CLI)",
       [&](std::string& note) {
         const bool ok = criterion4(worst_secs);
         note = "worst case " + std::to_string(worst_secs) + " s";
         return ok;
       }},
      {"criterion 5: s_estimate >= r(1-1e-9) in every sweep report",
       [&](std::string&) { return criterion5(); }},
      {"criterion 6: unbounded-circumradius targets d in {0.1,1,10,100} at "
       "relative 1e-9",
       [&](std::string&) { return criterion6(); }},
      {"criterion 7: trilateration vs Cayley-Menger sign on 1000 random "
       "4-point metrics",
       [&](std::string& note) {
         const bool ok = criterion7(compared);
         note = std::to_string(compared) + " outside the boundary band";
         return ok;
       }},
      {"criterion 8: every sweep defect pair certifies r(u,v,antipode) > r",
       [&](std::string& note) {
         const bool ok = criterion8(pairs);
         note = std::to_string(pairs) + " pairs checked";
         return ok;
       }},
      {"criterion 9: circle energies (thickness 1e-12; n=512 Menger closed "
       "form)",
       [&](std::string& note) {
         const bool ok = criterion9(menger_value);
         char buf[64];
         std::snprintf(buf, sizeof(buf), "menger = %.12f", menger_value);
         note = buf;
         return ok;
       }},
      {"criterion 10: repeated sweep runs are byte-identical (via CLI)",
       [&](std::string&) { return criterion10(); }},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    g_detail.str("");
    std::string note;
    bool ok = false;
    try {
      ok = c.run(note);
    } catch (const std::exception& e) {
      g_detail << "    exception: " << e.what() << "\n";
    }
    std::cout << (ok ? "PASS  " : "FAIL  ") << c.label;
    if (!note.empty()) std::cout << "  [" << note << "]";
    std::cout << "\n";
    if (!ok) {
      std::cout << g_detail.str();
      ++failures;
    }
  }

  fs::remove_all(g_scratch);
  std::cout << (failures == 0 ? "ALL CRITERIA PASSED"
                              : std::to_string(failures) + " CRITERIA FAILED")
            << "\n";
  return failures;
}
