#include "circum/norm_config.hpp"

#include <fstream>

namespace circum {
namespace {

double parse_exponent(const json& doc) {
  if (!doc.contains("p")) throw ConfigError("p", "missing field");
  const json& p = doc.at("p");
  if (p.is_string()) {
    if (p.get<std::string>() == "inf") return kInfinity;
    throw ConfigError("p", "must be a number >= 1 or the string \"inf\"");
  }
  if (!p.is_number()) throw ConfigError("p", "must be a number or \"inf\"");
  const double value = p.get<double>();
  if (!(value >= 1.0)) throw ConfigError("p", "must be >= 1");
  return value;
}

Index parse_dim(const json& doc) {
  if (!doc.contains("dim")) throw ConfigError("dim", "missing field");
  const json& d = doc.at("dim");
  if (!d.is_number_integer() || d.get<long>() < 1)
    throw ConfigError("dim", "must be an integer >= 1");
  return d.get<Index>();
}

Vector parse_vector(const json& arr, const std::string& field) {
  if (!arr.is_array() || arr.empty())
    throw ConfigError(field, "must be a nonempty array of numbers");
  Vector v(static_cast<Index>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number())
      throw ConfigError(field + "[" + std::to_string(i) + "]",
                        "must be a number");
    v[static_cast<Index>(i)] = arr[i].get<double>();
  }
  return v;
}

}  // namespace

NormSpec parse_norm_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("", "config must be a JSON object");
  if (!doc.contains("kind")) throw ConfigError("kind", "missing field");
  if (!doc.at("kind").is_string())
    throw ConfigError("kind", "must be a string");
  const std::string kind = doc.at("kind").get<std::string>();

  try {
    if (kind == "pnorm") {
      return NormSpec::p_norm(parse_dim(doc), parse_exponent(doc));
    }
    if (kind == "weighted-pnorm") {
      if (!doc.contains("weights"))
        throw ConfigError("weights", "missing field");
      Vector w = parse_vector(doc.at("weights"), "weights");
      if (doc.contains("dim") && parse_dim(doc) != w.size())
        throw ConfigError("weights", "length must equal dim");
      return NormSpec::weighted_p_norm(parse_exponent(doc), std::move(w));
    }
    if (kind == "quadratic") {
      if (!doc.contains("matrix")) throw ConfigError("matrix", "missing field");
      const json& rows = doc.at("matrix");
      if (!rows.is_array() || rows.empty())
        throw ConfigError("matrix", "must be an array of rows");
      const Index n = static_cast<Index>(rows.size());
      Matrix q(n, n);
      for (Index i = 0; i < n; ++i) {
        const Vector row = parse_vector(
            rows[static_cast<std::size_t>(i)],
            "matrix[" + std::to_string(i) + "]");
        if (row.size() != n)
          throw ConfigError("matrix[" + std::to_string(i) + "]",
                            "must have " + std::to_string(n) + " entries");
        q.row(i) = row;
      }
      if (doc.contains("dim") && parse_dim(doc) != n)
        throw ConfigError("matrix", "size must equal dim");
      return NormSpec::quadratic(std::move(q));
    }
    if (kind == "polyhedral") {
      if (!doc.contains("vertices"))
        throw ConfigError("vertices", "missing field");
      const json& verts = doc.at("vertices");
      if (!verts.is_array() || verts.empty())
        throw ConfigError("vertices", "must be an array of points");
      std::vector<Vector> vertices;
      vertices.reserve(verts.size());
      for (std::size_t i = 0; i < verts.size(); ++i)
        vertices.push_back(
            parse_vector(verts[i], "vertices[" + std::to_string(i) + "]"));
      if (doc.contains("dim") && parse_dim(doc) != vertices.front().size())
        throw ConfigError("vertices", "entry length must equal dim");
      return NormSpec::polyhedral(std::move(vertices));
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    // Construction-time validation failures (non-SPD matrix, asymmetric
    // polytope, ...) reported against the kind field.
    throw ConfigError(kind, e.what());
  }
  throw ConfigError("kind",
                    "unknown kind '" + kind +
                        "' (expected pnorm, weighted-pnorm, quadratic or "
                        "polyhedral)");
}

NormSpec load_norm_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open file");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path, e.what());
  }
  try {
    return parse_norm_config(doc);
  } catch (const ConfigError& e) {
    throw ConfigError(path + (e.field().empty() ? "" : ", " + e.field()),
                      e.message());
  }
}

ordered_json norm_config_to_json(const NormSpec& spec) {
  ordered_json doc;
  switch (spec.kind()) {
    case NormKind::PNorm:
      doc["kind"] = "pnorm";
      doc["dim"] = spec.dim();
      if (std::isinf(spec.exponent()))
        doc["p"] = "inf";
      else
        doc["p"] = spec.exponent();
      break;
    case NormKind::WeightedPNorm: {
      doc["kind"] = "weighted-pnorm";
      doc["dim"] = spec.dim();
      if (std::isinf(spec.exponent()))
        doc["p"] = "inf";
      else
        doc["p"] = spec.exponent();
      ordered_json w = ordered_json::array();
      for (Index i = 0; i < spec.dim(); ++i)
        w.push_back(spec.coordinate_weights()[i]);
      doc["weights"] = std::move(w);
      break;
    }
    case NormKind::Quadratic: {
      doc["kind"] = "quadratic";
      doc["dim"] = spec.dim();
      ordered_json rows = ordered_json::array();
      for (Index i = 0; i < spec.dim(); ++i) {
        ordered_json row = ordered_json::array();
        for (Index j = 0; j < spec.dim(); ++j)
          row.push_back(spec.quadratic_form()(i, j));
        rows.push_back(std::move(row));
      }
      doc["matrix"] = std::move(rows);
      break;
    }
    case NormKind::Polyhedral: {
      doc["kind"] = "polyhedral";
      doc["dim"] = spec.dim();
      ordered_json verts = ordered_json::array();
      for (const auto& v : spec.polytope_vertices()) {
        ordered_json vec = ordered_json::array();
        for (Index i = 0; i < v.size(); ++i) vec.push_back(v[i]);
        verts.push_back(std::move(vec));
      }
      doc["vertices"] = std::move(verts);
      break;
    }
  }
  return doc;
}

}  // namespace circum
