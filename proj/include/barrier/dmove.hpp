#pragma once

#include "barrier/outcome.hpp"
#include "barrier/protocol.hpp"

namespace barrier {

// k defaults to floor(N / 20) with a floor of 2.
int default_hop_budget(std::size_t sensor_count);

struct DMoveOptions {
    int hop_budget = 2;
    // Optional bus shared across episodes for tracing.
    MessageBus* bus = nullptr;
};

// Distributed recovery for a single newly failed sensor (already marked
// Failed in the world). Barrier failures are repaired by the failed node's
// recovery node: alternate path by token search first, cascaded shifting
// along recovery nodes otherwise. Recovery nodes are re-elected after every
// change of the barrier and after the loss of a recovery node.
// On an unsuccessful repair the world's barrier is cleared; moves already
// made by the cascade remain applied and are reported.
RestoreOutcome handle_failure_dmove(World& world, NodeStates& states, SensorId failed,
                                    const DMoveOptions& options = {});

}  // namespace barrier
