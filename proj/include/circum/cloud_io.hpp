#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "circum/types.hpp"

namespace circum {

/// Parsed point-cloud table: one point per line, n coordinates then an
/// optional weight, whitespace-separated, '#' starts a comment.
struct CloudTable {
  std::vector<Vector> points;
  Vector weights;  // empty when the file carries no weight column
  Index dim = 0;
};

/// Parses the cloud text format. `expected_dim` < 0 means infer: every line
/// must then have the same column count, all read as coordinates. With a
/// known dimension, lines of dim+1 columns carry a trailing weight.
CloudTable parse_cloud_text(std::istream& in, Index expected_dim = -1);
CloudTable load_cloud_file(const std::string& path, Index expected_dim = -1);

/// Parses a whitespace-separated square matrix (same comment rules).
Matrix load_matrix_file(const std::string& path);
Matrix parse_matrix_text(std::istream& in);

}  // namespace circum
