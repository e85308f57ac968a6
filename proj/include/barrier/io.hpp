#pragma once

#include <filesystem>
#include <stdexcept>

#include <json.hpp>

#include "barrier/graph.hpp"
#include "barrier/outcome.hpp"

namespace barrier {

class DeploymentFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Deployment interchange format:
//   { "region": {"L": f, "W": f}, "rho": f, "comm": f,
//     "sensors": [ {"id": n, "x": f, "y": f, "energy": f} ] }
nlohmann::json deployment_to_json(const World& world);
World deployment_from_json(const nlohmann::json& j, const EnergyModel& model = {});

World load_deployment(const std::filesystem::path& path, const EnergyModel& model = {});
void save_deployment(const World& world, const std::filesystem::path& path);

nlohmann::json outcome_to_json(const RestoreOutcome& outcome);

// Adjacency list with stable id ordering; boundary vertices are "PL"/"PR".
nlohmann::json graph_to_json(const IntersectionGraph& graph);

}  // namespace barrier
