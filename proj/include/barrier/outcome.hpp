#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "barrier/core.hpp"

namespace barrier {

enum class Mechanism { None, AlternatePath, Shifting };

std::string_view to_string(Mechanism m);

// Result of one failure-recovery episode.
struct RestoreOutcome {
    bool success = false;
    Mechanism mechanism = Mechanism::None;
    std::vector<Move> moves;
    double total_displacement = 0.0;
    std::optional<Barrier> new_barrier;

    void record(const Move& m) {
        moves.push_back(m);
        total_displacement += m.length();
    }
};

}  // namespace barrier
