#include "barrier/dmove.hpp"

#include <algorithm>

namespace barrier {

namespace {

// Placeholder id for the vacated barrier position during a cascade.
constexpr SensorId kVacant{-3};

struct Slot {
    SensorId occupant{};
    Point pos;
};

Barrier occupants(const std::vector<Slot>& slots) {
    Barrier ids;
    ids.reserve(slots.size());
    for (const auto& s : slots) ids.push_back(s.occupant);
    return ids;
}

void reelect(const World& world, NodeStates& states, MessageBus* bus) {
    states = init_recovery_nodes(world, bus).states;
}

// Alternate barrier segment from pre to suc discovered by recovery node p.
std::optional<Path> discover_segment(const NodeStates& states, const Environment& env, SensorId p, SensorId pre,
                                     SensorId suc, const DMoveOptions& options) {
    if (p == pre) return mldfs(states, env, p, suc, options.hop_budget, options.bus);
    if (p == suc) {
        auto back = mldfs(states, env, p, pre, options.hop_budget, options.bus);
        if (back) std::reverse(back->begin(), back->end());
        return back;
    }
    auto to_pre = mldfs(states, env, p, pre, options.hop_budget, options.bus);
    if (!to_pre) return std::nullopt;
    auto to_suc = mldfs(states, env, p, suc, options.hop_budget, options.bus);
    if (!to_suc) return std::nullopt;
    Path joined(to_pre->rbegin(), to_pre->rend());
    joined.insert(joined.end(), to_suc->begin() + 1, to_suc->end());
    return joined;
}

}  // namespace

int default_hop_budget(std::size_t sensor_count) {
    return std::max(2, static_cast<int>(sensor_count / 20));
}

RestoreOutcome handle_failure_dmove(World& world, NodeStates& states, SensorId failed, const DMoveOptions& options) {
    RestoreOutcome out;
    auto found = states.find(failed);
    if (found == states.end() || !world.barrier) {
        out.success = world.barrier.has_value();
        out.new_barrier = world.barrier;
        return out;
    }
    const NodeState lost = found->second;
    states.erase(found);

    if (!lost.is_on_barrier) {
        // Clients of a lost recovery node pick a new one; the resulting
        // pathLength changes ripple along the barrier.
        if (!lost.rec_set.empty()) reelect(world, states, options.bus);
        out.success = true;
        out.new_barrier = world.barrier;
        return out;
    }

    std::vector<Slot> slots;
    std::size_t hole = 0;
    for (std::size_t i = 0; i < world.barrier->size(); ++i) {
        const SensorId id = (*world.barrier)[i];
        if (id == failed) hole = i;
        slots.push_back(Slot{id == failed ? kVacant : id, world.sensor(id).pos});
    }

    auto give_up = [&] {
        world.barrier.reset();
        reelect(world, states, options.bus);
        return out;
    };

    std::optional<SensorId> watcher = lost.rec_node;
    for (std::size_t step = 0; step <= world.sensors.size(); ++step) {
        if (!watcher || !world.contains(*watcher) || !world.sensor(*watcher).active()) return give_up();
        const SensorId p = *watcher;

        const IntersectionGraph graph = build_intersection_graph(world);
        const Environment env{world, graph};
        const SensorId pre = hole == 0 ? kLeftBoundary : slots[hole - 1].occupant;
        const SensorId suc = hole + 1 == slots.size() ? kRightBoundary : slots[hole + 1].occupant;

        if (auto segment = discover_segment(states, env, p, pre, suc, options)) {
            world.barrier = splice_barrier(occupants(slots), {kVacant}, *segment);
            out.success = true;
            out.mechanism = out.moves.empty() ? Mechanism::AlternatePath : Mechanism::Shifting;
            out.new_barrier = world.barrier;
            reelect(world, states, options.bus);
            return out;
        }

        if (!can_reach(world.sensor(p), slots[hole].pos, world.energy_model)) return give_up();
        const Point from = world.sensor(p).pos;
        apply_move(world, p, slots[hole].pos);
        out.record(Move{p, from, slots[hole].pos});
        slots[hole].occupant = p;

        auto previous = std::find_if(slots.begin(), slots.end(),
                                     [&](const Slot& s) { return s.occupant == p && s.pos == from; });
        if (previous == slots.end()) {
            // A non-barrier node filled the hole: the old barrier is back.
            world.barrier = occupants(slots);
            out.success = true;
            out.mechanism = Mechanism::Shifting;
            out.new_barrier = world.barrier;
            reelect(world, states, options.bus);
            return out;
        }
        // p's old position is now the hole, watched by p's own recovery node.
        previous->occupant = kVacant;
        hole = static_cast<std::size_t>(previous - slots.begin());
        watcher = states.at(p).rec_node;
    }
    return give_up();
}

}  // namespace barrier
