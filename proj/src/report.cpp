#include "circum/report.hpp"

namespace circum {
namespace {

constexpr const char* kSchema = "circum-report/1";

ordered_json witness_to_json(const WitnessTriple& w) {
  ordered_json doc;
  doc["u"] = vector_to_json(w.u);
  doc["v"] = vector_to_json(w.v);
  doc["w"] = vector_to_json(w.w);
  doc["circumradius"] = radius_to_json(w.circumradius);
  return doc;
}

ordered_json budget_to_json(const SearchBudget& b) {
  ordered_json doc;
  doc["grid"] = b.grid;
  doc["sections"] = b.sections;
  doc["refine_starts"] = b.refine_starts;
  doc["refine_iters"] = b.refine_iters;
  return doc;
}

ordered_json header(const std::string& command) {
  ordered_json doc;
  doc["schema"] = kSchema;
  doc["tool_version"] = kVersion;
  doc["command"] = command;
  return doc;
}

}  // namespace

ordered_json radius_to_json(const ExtendedRadius& r) {
  if (r.is_infinite()) return ordered_json("inf");
  return ordered_json(r.value());
}

ExtendedRadius radius_from_json(const ordered_json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return ExtendedRadius::infinite();
    throw ConfigError("radius", "\"inf\" is the only non-numeric encoding");
  }
  if (!j.is_number()) throw ConfigError("radius", "must be a number or \"inf\"");
  return ExtendedRadius::finite(j.get<double>());
}

ordered_json vector_to_json(const VectorRef& v) {
  ordered_json arr = ordered_json::array();
  for (Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

ordered_json classification_to_json(const NormSpec& spec,
                                    const ClassificationReport& report) {
  ordered_json doc = header("classify");
  doc["norm"] = norm_config_to_json(spec);
  doc["center"] = vector_to_json(report.x0);
  doc["radius"] = report.r;
  doc["seed"] = report.options.budget.seed;
  doc["budget"] = budget_to_json(report.options.budget);
  doc["margin"] = report.options.margin;
  doc["defect_threshold"] = report.options.defect_threshold;
  doc["verdict"] = verdict_name(report.verdict);
  doc["s_estimate"] = radius_to_json(report.s_estimate);
  doc["witness"] =
      report.witness ? witness_to_json(*report.witness) : ordered_json();
  if (report.defect_pair) {
    ordered_json d;
    d["u"] = vector_to_json(report.defect_pair->u);
    d["v"] = vector_to_json(report.defect_pair->v);
    d["defect"] = report.defect_pair->defect;
    doc["defect_pair"] = std::move(d);
  } else {
    doc["defect_pair"] = ordered_json();
  }
  ordered_json diag;
  diag["probes"] = report.probes;
  diag["iterations"] = report.iterations;
  diag["max_defect_seen"] = report.max_defect_seen;
  ordered_json sections = ordered_json::array();
  for (const auto& s : report.sections) {
    ordered_json sec;
    sec["best"] = std::isinf(s.best) ? ordered_json("inf") : ordered_json(s.best);
    sec["evaluations"] = s.evaluations;
    sections.push_back(std::move(sec));
  }
  diag["sections"] = std::move(sections);
  ordered_json starts = ordered_json::array();
  for (double b : report.best_per_start)
    starts.push_back(std::isinf(b) ? ordered_json("inf") : ordered_json(b));
  diag["best_per_start"] = std::move(starts);
  doc["diagnostics"] = std::move(diag);
  return doc;
}

ordered_json circumradius_report(const TriangleSides& sides,
                                 const ExtendedRadius& r) {
  ordered_json doc = header("circumradius");
  doc["sides"] = ordered_json::array({sides.a, sides.b, sides.c});
  doc["cayley_menger"] = cayley_menger(sides);
  doc["circumradius"] = radius_to_json(r);
  return doc;
}

ordered_json embed4_report(const DistanceMatrix4& d,
                           const FourPointResult& result) {
  ordered_json doc = header("embed4");
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < 4; ++i)
    rows.push_back(vector_to_json(d.matrix().row(i).transpose()));
  doc["distances"] = std::move(rows);
  doc["embeddable"] = result.embeddable;
  if (result.embeddable) {
    ordered_json pts = ordered_json::array();
    for (const auto& p : result.embedding.points)
      pts.push_back(vector_to_json(p));
    doc["points"] = std::move(pts);
  } else if (result.certificate) {
    ordered_json cert;
    cert["reason"] = result.certificate->reason;
    cert["squared_height"] = result.certificate->squared_height;
    cert["base_triple"] = ordered_json::array({result.certificate->base_triple[0],
                                               result.certificate->base_triple[1],
                                               result.certificate->base_triple[2]});
    doc["certificate"] = std::move(cert);
  }
  return doc;
}

ordered_json energy_report(const std::string& energy_name, double p,
                           Index cloud_size, const ExtendedRadius& thickness,
                           const MengerEnergy* menger,
                           const EnergyOptions& opts) {
  ordered_json doc = header("energy");
  doc["energy"] = energy_name;
  doc["points"] = cloud_size;
  doc["seed"] = opts.seed;
  doc["max_exact"] = opts.max_exact;
  if (energy_name == "thickness") {
    doc["value"] = radius_to_json(thickness);
  } else {
    doc["p"] = p;
    doc["value"] = menger->value;
    doc["mode"] = menger->monte_carlo ? "monte_carlo" : "exact";
    doc["triples"] = menger->triples;
    if (menger->monte_carlo) doc["standard_error"] = menger->standard_error;
  }
  return doc;
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::InnerProduct:
      return "inner_product";
    case Verdict::NotInnerProduct:
      return "not_inner_product";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

int verdict_exit_code(Verdict v) {
  switch (v) {
    case Verdict::InnerProduct:
      return 0;
    case Verdict::NotInnerProduct:
      return 1;
    case Verdict::Inconclusive:
      return 2;
  }
  return 2;
}

std::string to_canonical_string(const ordered_json& doc) {
  return doc.dump(2) + "\n";
}

}  // namespace circum
