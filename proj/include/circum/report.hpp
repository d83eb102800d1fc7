#pragma once

#include <string>

#include "circum/degeneracy.hpp"
#include "circum/embedding.hpp"
#include "circum/energies.hpp"
#include "circum/norm_config.hpp"

namespace circum {

/// Stable machine-readable reports. Field order is canonical (insertion
/// order of an ordered_json), "inf" is the only non-numeric radius encoding,
/// and serialization is deterministic, so identical runs produce
/// byte-identical documents and parse -> serialize round-trips exactly.

ordered_json radius_to_json(const ExtendedRadius& r);
ExtendedRadius radius_from_json(const ordered_json& j);

ordered_json vector_to_json(const VectorRef& v);

ordered_json classification_to_json(const NormSpec& spec,
                                    const ClassificationReport& report);

ordered_json circumradius_report(const TriangleSides& sides,
                                 const ExtendedRadius& r);

ordered_json embed4_report(const DistanceMatrix4& d,
                           const FourPointResult& result);

ordered_json energy_report(const std::string& energy_name, double p,
                           Index cloud_size, const ExtendedRadius& thickness,
                           const MengerEnergy* menger,
                           const EnergyOptions& opts);

std::string verdict_name(Verdict v);
int verdict_exit_code(Verdict v);

/// Canonical serialization used everywhere a report is printed or compared.
std::string to_canonical_string(const ordered_json& doc);

}  // namespace circum
