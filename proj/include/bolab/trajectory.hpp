#pragma once

#include <string>

#include "bolab/solver.hpp"

namespace bolab {

// Trajectory files: one line of compact JSON (grid, run config echo,
// conservation diagnostics, record count), then fixed-size binary records
// [t : f64 LE][re, im interleaved for modes n = -N/2 .. N/2-1 : f64 LE].
// Written little-endian only; loading validates the header and the byte count.

void save_trajectory(const Trajectory& traj, const std::string& path);
Trajectory load_trajectory(const std::string& path);

} // namespace bolab
