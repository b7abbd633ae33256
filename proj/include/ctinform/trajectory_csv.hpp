#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "ctinform/signals.hpp"

namespace ctinform::signals {

/**
 * Trajectory CSV: header `t,x1..xn,u1..um[,xdot1..xdotn][,w1..wn]`, one row
 * per grid point in increasing t starting at 0, '#' lines ignored. The grid
 * must be uniform to 1e-9·h. When the xdot columns are missing the
 * derivative is estimated from x and the trajectory is flagged accordingly.
 * Malformed input raises FormatError with the offending line number.
 */
TrajectoryData parse_trajectory_csv(std::istream& in, const std::string& source = "<stream>");
TrajectoryData read_trajectory_csv(const std::filesystem::path& path);

/// Writes every column losslessly (17 significant digits); noise columns only if present.
void write_trajectory_csv(std::ostream& out, const TrajectoryData& traj);
void write_trajectory_csv(const std::filesystem::path& path, const TrajectoryData& traj);

}  // namespace ctinform::signals
