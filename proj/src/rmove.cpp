#include "barrier/rmove.hpp"

#include <algorithm>
#include <set>

#include "barrier/graph.hpp"

namespace barrier {

namespace {

enum class Direction { Unset, Left, Right };

// Closest active non-barrier sensor whose disc meets the vacated one and that
// can reach the vacated position.
std::optional<SensorId> closest_filler(const World& world, const std::set<SensorId>& on_barrier,
                                       const Sensor& vacated, const Point& hole) {
    std::optional<SensorId> best;
    double best_d = 0.0;
    for (const auto& [id, s] : world.sensors) {
        if (!s.active() || on_barrier.count(id)) continue;
        const double d = distance(s.pos, hole);
        if (d > s.sensing_radius + vacated.sensing_radius) continue;
        if (!can_reach(s, hole, world.energy_model)) continue;
        if (!best || d < best_d) {
            best = id;
            best_d = d;
        }
    }
    return best;
}

}  // namespace

RestoreOutcome restore_rmove(World& world, SensorId failed, Rng& rng) {
    RestoreOutcome out;
    if (!world.barrier) return out;
    Barrier slots = *world.barrier;
    auto at = std::find(slots.begin(), slots.end(), failed);
    if (at == slots.end()) {
        out.success = true;
        out.new_barrier = world.barrier;
        return out;
    }
    std::size_t hole = static_cast<std::size_t>(at - slots.begin());
    const Point hole_pos = world.sensor(failed).pos;
    Point target = hole_pos;
    SensorId vacated = failed;

    std::set<SensorId> on_barrier(slots.begin(), slots.end());
    Direction direction = Direction::Unset;

    auto eligible = [&](std::size_t idx) { return can_reach(world.sensor(slots[idx]), target, world.energy_model); };

    for (std::size_t step = 0; step <= world.sensors.size(); ++step) {
        if (auto filler = closest_filler(world, on_barrier, world.sensor(vacated), target)) {
            const Point from = world.sensor(*filler).pos;
            apply_move(world, *filler, target);
            out.record(Move{*filler, from, target});
            slots[hole] = *filler;
            world.barrier = slots;
            out.success = true;
            out.mechanism = Mechanism::Shifting;
            out.new_barrier = world.barrier;
            return out;
        }

        const bool left_ok = hole > 0 && direction != Direction::Right && eligible(hole - 1);
        const bool right_ok = hole + 1 < slots.size() && direction != Direction::Left && eligible(hole + 1);
        if (!left_ok && !right_ok) break;
        if (direction == Direction::Unset) {
            if (left_ok && right_ok) {
                direction = rng.below(2) == 0 ? Direction::Left : Direction::Right;
            } else {
                direction = left_ok ? Direction::Left : Direction::Right;
            }
        }
        const std::size_t mover_idx = direction == Direction::Left ? hole - 1 : hole + 1;
        const SensorId mover = slots[mover_idx];
        const Point from = world.sensor(mover).pos;
        apply_move(world, mover, target);
        out.record(Move{mover, from, target});
        slots[hole] = mover;
        hole = mover_idx;
        target = from;
        vacated = mover;
    }
    world.barrier.reset();
    return out;
}

}  // namespace barrier
