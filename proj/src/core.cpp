#include "barrier/core.hpp"

#include <algorithm>

namespace barrier {

std::string to_string(SensorId id) {
    if (id == kLeftBoundary) return "PL";
    if (id == kRightBoundary) return "PR";
    return std::to_string(to_int(id));
}

const Sensor& World::sensor(SensorId id) const {
    auto it = sensors.find(id);
    if (it == sensors.end()) throw UnknownSensor("unknown sensor " + to_string(id));
    return it->second;
}

Sensor& World::sensor(SensorId id) {
    auto it = sensors.find(id);
    if (it == sensors.end()) throw UnknownSensor("unknown sensor " + to_string(id));
    return it->second;
}

std::vector<SensorId> World::active_ids() const {
    std::vector<SensorId> ids;
    ids.reserve(sensors.size());
    for (const auto& [id, s] : sensors) {
        if (s.active()) ids.push_back(id);
    }
    return ids;
}

void World::mark_failed(SensorId id) { sensor(id).status = Status::Failed; }

double World::total_displacement() const {
    double total = 0.0;
    for (const auto& m : move_log) total += m.length();
    return total;
}

double World::total_energy_spent() const {
    double total = 0.0;
    for (const auto& [id, s] : sensors) total += s.initial_energy - s.energy;
    return total;
}

double displacement_capacity(const Sensor& sensor, const EnergyModel& model) {
    if (sensor.mobility == Mobility::Static) return 0.0;
    return std::max(0.0, sensor.energy) / model.cost_per_unit;
}

bool can_reach(const Sensor& sensor, const Point& dest, const EnergyModel& model) {
    if (!sensor.active()) return false;
    const double d = distance(sensor.pos, dest);
    if (d == 0.0) return true;
    return sensor.mobility == Mobility::Mobile && d <= displacement_capacity(sensor, model);
}

void apply_move(World& world, SensorId id, const Point& dest) {
    Sensor& s = world.sensor(id);
    const double d = distance(s.pos, dest);
    if (d == 0.0) return;
    if (!s.active() || s.mobility != Mobility::Mobile) {
        throw MoveExceedsCapacity("sensor " + to_string(id) + " cannot move");
    }
    if (d > displacement_capacity(s, world.energy_model)) {
        throw MoveExceedsCapacity("sensor " + to_string(id) + " lacks energy for move of " +
                                  std::to_string(d));
    }
    world.move_log.push_back(Move{id, s.pos, dest});
    s.pos = dest;
    // d <= energy / cost, so only rounding can push this below zero.
    s.energy = std::max(0.0, s.energy - world.energy_model.cost_per_unit * d);
    if (s.energy < world.energy_model.static_threshold) s.mobility = Mobility::Static;
}

}  // namespace barrier
