#pragma once

#include <string>

#include <json.hpp>

#include "circum/norm_space.hpp"

namespace circum {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

/// Parses the JSON norm-config document:
///   { "kind": "pnorm" | "weighted-pnorm" | "quadratic" | "polyhedral",
///     "dim": n, ... kind-specific parameters ... }
/// p may be a number >= 1 or the string "inf". Throws ConfigError with the
/// offending field on any problem.
NormSpec parse_norm_config(const json& doc);
NormSpec load_norm_config(const std::string& path);

/// Canonical JSON echo of a spec (used to reproduce runs from reports).
ordered_json norm_config_to_json(const NormSpec& spec);

}  // namespace circum
