#pragma once

#include <set>

#include "barrier/graph.hpp"
#include "barrier/hungarian.hpp"
#include "barrier/outcome.hpp"

namespace barrier {

// Left: every Active sensor. Right: every barrier position, including the
// positions of failed barrier nodes. Static sensors only keep their own
// zero-cost edge; mobile sensors reach a position when it is within both
// their displacement capacity and their communication radius.
AssignmentProblem build_assignment(const World& world, const std::set<SensorId>& failed);

// Centralized restoration: alternate path between the outer survivors of
// the failed span, otherwise minimum-displacement matching onto the old
// barrier positions with cascaded shifting. Expects the failed sensors to be
// marked Failed already; on failure the world is left untouched.
RestoreOutcome restore_cmove(World& world, const std::set<SensorId>& failed);

// Static baseline: the alternate-path step of restore_cmove only.
RestoreOutcome restore_nmove(World& world, const std::set<SensorId>& failed);

}  // namespace barrier
