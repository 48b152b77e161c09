#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "spinyam/ansatz.hpp"
#include "spinyam/autonomous.hpp"
#include "spinyam/clifford.hpp"
#include "spinyam/dissipative.hpp"
#include "spinyam/numerics.hpp"

namespace spinyam::io {

using Json = nlohmann::ordered_json;

/// 17 significant digits with a '.' separator, independent of the global
/// locale. Non-finite values become "nan", "inf"
/// or "-inf".
std::string fmt17(double x);

/// Serialises JSON with floats in fmt17 form and non-finite floats as null.
/// Keys keep insertion order.
std::string dump(const Json& j, int indent = 2);

Json rep_json(const CliffordRep& rep);
Json report_json(const RepReport& report);
Json orbit_json(const OrbitSpec& spec);
Json outcome_json(const ShootingOutcome& outcome);

void write_trajectory_csv(std::ostream& os, const Trajectory& traj);
void write_profile_csv(std::ostream& os, const SpinorProfile& profile);
void write_sweep_csv(std::ostream& os, const std::vector<ShootingOutcome>& outcomes);

}  // namespace spinyam::io
