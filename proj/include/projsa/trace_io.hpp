//
// projsa - Copyright 2026 The projsa Authors
// SPDX-License-Identifier: Apache-2.0
//

#ifndef PROJSA_TRACE_IO_HPP
#define PROJSA_TRACE_IO_HPP

#include <iosfwd>
#include <string>

#include "projsa/engine.hpp"

namespace projsa {

// CSV trace, one row per recorded step:
//   n,t,gamma,x_0..,e_0..,r_0..,h_0..,P_0..,xprev_0..
// x is the post-step iterate x_{n+1}; xprev is x_n. Reals are written as the
// shortest decimal that reads back to the same double.

void write_trace(std::ostream &os, const Trajectory &traj);
void write_trace_file(const std::string &path, const Trajectory &traj);

/// Parses a trace; malformed or truncated input throws with the line number.
Trajectory read_trace(std::istream &is);
Trajectory read_trace_file(const std::string &path);

/// Shortest round-trip decimal for v.
std::string format_real(double v);

}  // namespace projsa

#endif  // PROJSA_TRACE_IO_HPP
