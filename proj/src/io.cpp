#include "barrier/io.hpp"

#include <fstream>

namespace barrier {

using nlohmann::json;

json deployment_to_json(const World& world) {
    json sensors = json::array();
    double rho = 0.0;
    double comm = 0.0;
    for (const auto& [id, s] : world.sensors) {
        rho = s.sensing_radius;
        comm = s.comm_radius;
        sensors.push_back({{"id", to_int(id)}, {"x", s.pos.x}, {"y", s.pos.y}, {"energy", s.energy}});
    }
    return json{
        {"region", {{"L", world.region.length}, {"W", world.region.width}}},
        {"rho", rho},
        {"comm", comm},
        {"sensors", sensors},
    };
}

World deployment_from_json(const json& j, const EnergyModel& model) {
    try {
        World world;
        world.energy_model = model;
        world.region.length = j.at("region").at("L").get<double>();
        world.region.width = j.at("region").at("W").get<double>();
        if (!(world.region.length > 0.0) || !(world.region.width > 0.0)) {
            throw DeploymentFormatError("region dimensions must be positive");
        }
        const double rho = j.at("rho").get<double>();
        const double comm = j.contains("comm") ? j.at("comm").get<double>() : 2.0 * rho;
        if (!(rho > 0.0) || comm < 2.0 * rho) throw DeploymentFormatError("need rho > 0 and comm >= 2 * rho");
        for (const auto& entry : j.at("sensors")) {
            Sensor s;
            s.id = sensor_id(entry.at("id").get<std::int32_t>());
            if (is_boundary(s.id)) throw DeploymentFormatError("sensor ids must be non-negative");
            s.pos = Point{entry.at("x").get<double>(), entry.at("y").get<double>()};
            if (!std::isfinite(s.pos.x) || !std::isfinite(s.pos.y)) {
                throw DeploymentFormatError("non-finite position for sensor " + to_string(s.id));
            }
            s.sensing_radius = rho;
            s.comm_radius = comm;
            s.energy = entry.value("energy", 100.0);
            s.initial_energy = entry.value("initial_energy", s.energy);
            if (s.energy < 0.0 || s.energy > s.initial_energy) {
                throw DeploymentFormatError("energy out of range for sensor " + to_string(s.id));
            }
            if (!world.sensors.emplace(s.id, s).second) {
                throw DeploymentFormatError("duplicate sensor id " + to_string(s.id));
            }
        }
        return world;
    } catch (const json::exception& e) {
        throw DeploymentFormatError(std::string("malformed deployment: ") + e.what());
    }
}

World load_deployment(const std::filesystem::path& path, const EnergyModel& model) {
    std::ifstream in(path);
    if (!in) throw DeploymentFormatError("cannot open " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw DeploymentFormatError(std::string("invalid JSON in ") + path.string() + ": " + e.what());
    }
    return deployment_from_json(j, model);
}

void save_deployment(const World& world, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << deployment_to_json(world).dump(2) << '\n';
}

json outcome_to_json(const RestoreOutcome& outcome) {
    json moves = json::array();
    for (const auto& m : outcome.moves) {
        moves.push_back({
            {"id", to_int(m.id)},
            {"from", {m.from.x, m.from.y}},
            {"to", {m.to.x, m.to.y}},
            {"distance", m.length()},
        });
    }
    json barrier = nullptr;
    if (outcome.new_barrier) {
        barrier = json::array();
        for (SensorId id : *outcome.new_barrier) barrier.push_back(to_int(id));
    }
    return json{
        {"success", outcome.success},
        {"mechanism", std::string(to_string(outcome.mechanism))},
        {"moves", moves},
        {"total_displacement", outcome.total_displacement},
        {"barrier", barrier},
    };
}

json graph_to_json(const IntersectionGraph& graph) {
    auto label = [](SensorId id) -> json {
        if (is_boundary(id)) return to_string(id);
        return to_int(id);
    };
    json vertices = json::array();
    for (SensorId v : graph.vertices()) {
        json nbrs = json::array();
        for (SensorId n : graph.neighbors(v)) nbrs.push_back(label(n));
        vertices.push_back({{"id", label(v)}, {"neighbors", nbrs}});
    }
    return json{{"vertices", vertices}, {"edges", graph.edge_count()}};
}

}  // namespace barrier
