#pragma once

#include "barrier/outcome.hpp"
#include "barrier/random.hpp"

namespace barrier {

// Random-direction baseline. The closest non-barrier neighbor with enough
// energy fills the hole; otherwise a random eligible barrier neighbor moves
// in and the cascade keeps going in that direction. No alternate-path search.
// On failure the world's barrier is cleared and completed moves remain.
RestoreOutcome restore_rmove(World& world, SensorId failed, Rng& rng);

}  // namespace barrier
