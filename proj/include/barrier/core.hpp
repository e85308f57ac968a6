#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace barrier {

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

inline double distance(const Point& a, const Point& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

// Strongly typed sensor identifier. Negative values are reserved for the
// two boundary vertices of the intersection graph.
enum class SensorId : std::int32_t {};

inline constexpr SensorId kLeftBoundary{-1};
inline constexpr SensorId kRightBoundary{-2};

constexpr std::int32_t to_int(SensorId id) { return static_cast<std::int32_t>(id); }
constexpr SensorId sensor_id(std::int32_t v) { return SensorId{v}; }
constexpr bool is_boundary(SensorId id) { return to_int(id) < 0; }

std::string to_string(SensorId id);

enum class Status { Active, Failed };
enum class Mobility { Mobile, Static };

struct Sensor {
    SensorId id{};
    Point pos;
    double sensing_radius = 30.0;
    double comm_radius = 60.0;
    double energy = 100.0;
    double initial_energy = 100.0;
    Status status = Status::Active;
    Mobility mobility = Mobility::Mobile;

    bool active() const { return status == Status::Active; }
};

struct Region {
    double length = 4000.0;
    double width = 60.0;
};

struct EnergyModel {
    double cost_per_unit = 1.0;
    double static_threshold = 10.0;
};

// Left-to-right chain of sensor ids; boundary vertices are implicit.
using Barrier = std::vector<SensorId>;

struct Move {
    SensorId id{};
    Point from;
    Point to;

    double length() const { return distance(from, to); }
};

struct World {
    Region region;
    std::map<SensorId, Sensor> sensors;
    std::optional<Barrier> barrier;
    EnergyModel energy_model;
    // Every relocation ever applied, in order.
    std::vector<Move> move_log;

    const Sensor& sensor(SensorId id) const;
    Sensor& sensor(SensorId id);
    bool contains(SensorId id) const { return sensors.count(id) != 0; }

    std::vector<SensorId> active_ids() const;
    void mark_failed(SensorId id);
    double total_displacement() const;
    double total_energy_spent() const;
};

class MoveExceedsCapacity : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnknownSensor : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

// Maximum distance the sensor may still travel. Zero for static sensors.
double displacement_capacity(const Sensor& sensor, const EnergyModel& model);

bool can_reach(const Sensor& sensor, const Point& dest, const EnergyModel& model);

// The only mutation of sensor position and energy. Throws MoveExceedsCapacity
// without touching the world when the move is not allowed.
void apply_move(World& world, SensorId id, const Point& dest);

}  // namespace barrier
