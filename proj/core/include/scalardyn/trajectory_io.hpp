#pragma once

#include <iosfwd>
#include <string>

#include "scalardyn/dynamics.hpp"

namespace scalardyn {

/// Column names of the CSV export: time, the form's coordinates, its momenta,
/// then one column per monitored quantity.
std::vector<std::string> csv_header(const Trajectory& traj);

void write_csv(const Trajectory& traj, std::ostream& out);

/// {form, samples:[{t, q:[...], p:[...], Q:{label:value}}], drift:{label:value}}
std::string trajectory_to_json(const Trajectory& traj, int indent = -1);

}  // namespace scalardyn
