#include <doctest.h>

#include "fixtures.hpp"

#include "barrier/hungarian.hpp"

using namespace barrier;
using namespace fixtures;

namespace {

AssignmentProblem dense(const std::vector<std::vector<double>>& cost) {
    AssignmentProblem p;
    for (std::size_t i = 0; i < cost.size(); ++i) p.left.push_back(sensor_id(static_cast<int>(i)));
    p.right.resize(cost.front().size());
    p.cost = cost;
    p.feasible.assign(cost.size(), std::vector<bool>(cost.front().size(), true));
    return p;
}

}  // namespace

TEST_CASE("2x2 picks the cheaper crossing") {
    const auto p = dense({{1, 2}, {2, 4}});
    const auto a = hungarian(p);
    REQUIRE(a);
    CHECK(assignment_cost(p, *a) == 4.0);
    CHECK((*a)[0] == 1);
    CHECK((*a)[1] == 0);
}

TEST_CASE("1x1 zero") {
    const auto p = dense({{0}});
    const auto a = hungarian(p);
    REQUIRE(a);
    CHECK(assignment_cost(p, *a) == 0.0);
}

TEST_CASE("a forbidden row makes coverage impossible") {
    auto p = dense({{1, 2}, {3, 4}});
    p.feasible[1] = {false, false};
    CHECK_FALSE(hungarian(p).has_value());
}

TEST_CASE("more targets than candidates is infeasible") {
    const auto p = dense({{1, 2, 3}});
    CHECK_FALSE(hungarian(p).has_value());
}

TEST_CASE("extra candidates may stay idle") {
    const auto p = dense({{5}, {1}, {3}});
    const auto a = hungarian(p);
    REQUIRE(a);
    CHECK((*a)[0] == 1);
}

TEST_CASE("forbidden cells are never used even when cheap") {
    auto p = dense({{0, 0}, {100, 100}});
    p.feasible[0][0] = false;
    const auto a = hungarian(p);
    REQUIRE(a);
    CHECK((*a)[0] == 1);
    CHECK((*a)[1] == 0);
    CHECK(assignment_cost(p, *a) == 100.0);
}

TEST_CASE("random 6x6 matrices match the permutation oracle") {
    Rng rng(606);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<std::vector<double>> cost(6, std::vector<double>(6));
        for (auto& row : cost)
            for (auto& c : row) c = rng.uniform(0, 50);
        const auto p = dense(cost);
        const auto a = hungarian(p);
        REQUIRE(a);
        const double oracle = brute_force_assignment(p.cost, p.feasible, 6);
        REQUIRE(assignment_cost(p, *a) == doctest::Approx(oracle).epsilon(1e-12));
    }
}

TEST_CASE("rectangular and sparse instances match the oracle") {
    Rng rng(77);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t rows = 1 + rng.below(6);
        const std::size_t cols = 1 + rng.below(6);
        AssignmentProblem p;
        for (std::size_t i = 0; i < rows; ++i) p.left.push_back(sensor_id(static_cast<int>(i)));
        p.right.resize(cols);
        p.cost.assign(rows, std::vector<double>(cols));
        p.feasible.assign(rows, std::vector<bool>(cols));
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) {
                p.cost[i][j] = static_cast<double>(rng.below(20));
                p.feasible[i][j] = rng.uniform() > 0.35;
            }
        const auto a = hungarian(p);
        const double oracle = brute_force_assignment(p.cost, p.feasible, cols);
        REQUIRE(a.has_value() == std::isfinite(oracle));
        if (!a) continue;
        std::set<std::size_t> used;
        for (std::size_t j = 0; j < cols; ++j) {
            REQUIRE((*a)[j] < rows);
            REQUIRE(p.feasible[(*a)[j]][j]);
            REQUIRE(used.insert((*a)[j]).second);
        }
        REQUIRE(assignment_cost(p, *a) == oracle);
    }
}
