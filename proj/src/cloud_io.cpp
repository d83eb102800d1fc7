#include "circum/cloud_io.hpp"

#include <fstream>
#include <sstream>
#include <string>

namespace circum {
namespace {

std::vector<double> parse_line_numbers(const std::string& line, int line_no) {
  std::vector<double> values;
  std::istringstream fields(line);
  std::string tok;
  while (fields >> tok) {
    if (tok.front() == '#') break;
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size())
      throw ConfigError("line " + std::to_string(line_no),
                        "'" + tok + "' is not a number");
    values.push_back(v);
  }
  return values;
}

}  // namespace

CloudTable parse_cloud_text(std::istream& in, Index expected_dim) {
  CloudTable table;
  std::vector<double> weights;
  bool any_weight = false;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto values = parse_line_numbers(line, line_no);
    if (values.empty()) continue;
    Index cols = static_cast<Index>(values.size());
    Index dim = expected_dim;
    bool has_weight = false;
    if (expected_dim < 0) {
      if (table.dim == 0) table.dim = cols;
      if (cols != table.dim)
        throw ConfigError("line " + std::to_string(line_no),
                          "expected " + std::to_string(table.dim) +
                              " columns, found " + std::to_string(cols));
      dim = table.dim;
    } else {
      table.dim = expected_dim;
      if (cols == expected_dim + 1) {
        has_weight = true;
      } else if (cols != expected_dim) {
        throw ConfigError("line " + std::to_string(line_no),
                          "expected " + std::to_string(expected_dim) +
                              " or " + std::to_string(expected_dim + 1) +
                              " columns, found " + std::to_string(cols));
      }
    }
    Vector p(dim);
    for (Index i = 0; i < dim; ++i) p[i] = values[static_cast<std::size_t>(i)];
    table.points.push_back(std::move(p));
    if (has_weight) {
      any_weight = true;
      weights.push_back(values.back());
    } else {
      weights.push_back(1.0);
    }
  }
  if (table.points.empty())
    throw ConfigError("", "cloud file contains no points");
  if (any_weight) {
    table.weights =
        Eigen::Map<const Vector>(weights.data(), static_cast<Index>(weights.size()));
  }
  return table;
}

CloudTable load_cloud_file(const std::string& path, Index expected_dim) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open file");
  try {
    return parse_cloud_text(in, expected_dim);
  } catch (const ConfigError& e) {
    throw ConfigError(path + ", " + e.field(), e.message());
  }
}

Matrix parse_matrix_text(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto values = parse_line_numbers(line, line_no);
    if (values.empty()) continue;
    if (!rows.empty() && values.size() != rows.front().size())
      throw ConfigError("line " + std::to_string(line_no),
                        "inconsistent column count");
    rows.push_back(std::move(values));
  }
  if (rows.empty()) throw ConfigError("", "matrix file contains no rows");
  if (rows.size() != rows.front().size())
    throw ConfigError("", "matrix must be square");
  const Index n = static_cast<Index>(rows.size());
  Matrix m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return m;
}

Matrix load_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open file");
  try {
    return parse_matrix_text(in);
  } catch (const ConfigError& e) {
    throw ConfigError(path + ", " + e.field(), e.message());
  }
}

}  // namespace circum
