#pragma once

#include <optional>
#include <vector>

#include "barrier/core.hpp"

namespace barrier {

// Bipartite relocation model: candidate sensors on the left, barrier
// positions to fill on the right.
struct AssignmentProblem {
    std::vector<SensorId> left;
    std::vector<Point> right;
    // cost[i][j]: distance from left[i] to right[j]
    std::vector<std::vector<double>> cost;
    std::vector<std::vector<bool>> feasible;

    std::size_t rows() const { return left.size(); }
    std::size_t cols() const { return right.size(); }
};

// assignment[j] = index into `left` serving right[j]
using Assignment = std::vector<std::size_t>;

// Minimum-cost assignment covering every right vertex using feasible edges
// only; nullopt when no such assignment exists.
std::optional<Assignment> hungarian(const AssignmentProblem& problem);

double assignment_cost(const AssignmentProblem& problem, const Assignment& assignment);

}  // namespace barrier
