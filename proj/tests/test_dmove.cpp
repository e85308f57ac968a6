#include <doctest.h>

#include "fixtures.hpp"

#include "barrier/dmove.hpp"

using namespace barrier;
using namespace fixtures;

namespace {

RestoreOutcome fail_and_handle(World& w, NodeStates& states, SensorId id, int k = 2) {
    w.mark_failed(id);
    return handle_failure_dmove(w, states, id, DMoveOptions{k, nullptr});
}

}  // namespace

TEST_CASE("hop budget default") {
    CHECK(default_hop_budget(140) == 7);
    CHECK(default_hop_budget(180) == 9);
    CHECK(default_hop_budget(20) == 2);
    CHECK(default_hop_budget(5) == 2);
}

TEST_CASE("recovery node moves in when no detour exists") {
    World w = t1_world();
    NodeStates states = init_recovery_nodes(w).states;
    const auto out = fail_and_handle(w, states, C);
    CHECK(out.success);
    CHECK(out.mechanism == Mechanism::Shifting);
    REQUIRE(out.moves.size() == 1);
    CHECK(out.moves[0].id == F);
    CHECK(out.total_displacement == doctest::Approx(2.0));
    CHECK(*w.barrier == Barrier{A, B, F, D, E});
    CHECK(verify_barrier(w));
    // New roles after re-election.
    CHECK(states.at(F).is_on_barrier);
    CHECK_FALSE(states.count(C));
}

TEST_CASE("non-barrier recovery node stitches both halves") {
    World w = t1_world();
    w.sensors.emplace(sensor_id(6), make_sensor(6, 4, 1.5));
    w.sensors.emplace(sensor_id(7), make_sensor(7, 6, 1.5));
    NodeStates states = init_recovery_nodes(w).states;
    REQUIRE(states.at(C).rec_node == sensor_id(6));
    const auto out = fail_and_handle(w, states, C);
    CHECK(out.success);
    CHECK(out.mechanism == Mechanism::AlternatePath);
    CHECK(out.total_displacement == 0.0);
    CHECK(*w.barrier == Barrier{A, B, sensor_id(6), sensor_id(7), D, E});
    CHECK(verify_barrier(w));
}

TEST_CASE("recovery node that is the predecessor searches to the successor") {
    // Spare only next to b; c elects b. A detour from b to d exists.
    World w = t1_world();
    w.sensors.erase(F);
    w.sensors.emplace(sensor_id(6), make_sensor(6, 3, 1.5));
    // Detour b-7-8-d through sensors too drained to be fillers.
    w.sensors.emplace(sensor_id(7), make_sensor(7, 4.2, 1.5, 1.0, 2.0, 0.5));
    w.sensors.emplace(sensor_id(8), make_sensor(8, 5.8, 1.5, 1.0, 2.0, 0.5));
    NodeStates states = init_recovery_nodes(w).states;
    REQUIRE(states.at(C).rec_node == B);
    const auto out = fail_and_handle(w, states, C, 3);
    CHECK(out.success);
    CHECK(out.mechanism == Mechanism::AlternatePath);
    CHECK(*w.barrier == Barrier{A, B, sensor_id(7), sensor_id(8), D, E});
    CHECK(verify_barrier(w));
}

TEST_CASE("cascade follows the recovery chain") {
    // Only e has a spare; b's recovery chain is c -> d -> e -> spare.
    World w = t1_world();
    w.sensors.erase(F);
    const SensorId spare = sensor_id(6);
    w.sensors.emplace(spare, make_sensor(6, 9, 1.5));
    NodeStates states = init_recovery_nodes(w).states;
    REQUIRE(states.at(B).rec_node == C);
    const double chain = states.at(B).path_length;
    CHECK(chain == doctest::Approx(7.5));

    const auto out = fail_and_handle(w, states, B);
    CHECK(out.success);
    CHECK(out.mechanism == Mechanism::Shifting);
    REQUIRE(out.moves.size() == 4);
    CHECK(out.moves[0].id == C);
    CHECK(out.moves[1].id == D);
    CHECK(out.moves[2].id == E);
    CHECK(out.moves[3].id == spare);
    for (const auto& m : out.moves) CHECK(m.length() <= 2.0);
    CHECK(out.total_displacement == doctest::Approx(chain));
    CHECK(*w.barrier == Barrier{A, C, D, E, spare});
    CHECK(verify_barrier(w));
}

TEST_CASE("losing a non-barrier, non-recovery node changes nothing") {
    World w = t1_world();
    w.sensors.emplace(sensor_id(6), make_sensor(6, 5, 3.9));
    NodeStates states = init_recovery_nodes(w).states;
    const auto out = fail_and_handle(w, states, sensor_id(6));
    CHECK(out.success);
    CHECK(out.mechanism == Mechanism::None);
    CHECK(out.moves.empty());
    CHECK(*w.barrier == Barrier{A, B, C, D, E});
    CHECK(states.at(C).rec_node == F);
}

TEST_CASE("losing a recovery node triggers re-election") {
    World w = t1_world();
    w.sensors.emplace(sensor_id(6), make_sensor(6, 7, 1.5));
    NodeStates states = init_recovery_nodes(w).states;
    REQUIRE(states.at(C).rec_node == F);
    const auto out = fail_and_handle(w, states, F);
    CHECK(out.success);
    CHECK(out.moves.empty());
    CHECK(states.at(C).rec_node == D);
    CHECK(states.at(C).path_length == doctest::Approx(3.5));
    CHECK(states.at(B).path_length == doctest::Approx(5.5));
}

TEST_CASE("no recovery node means the barrier is lost") {
    World w = t1_world();
    w.sensors.erase(F);
    NodeStates states = init_recovery_nodes(w).states;
    const auto out = fail_and_handle(w, states, C);
    CHECK_FALSE(out.success);
    CHECK_FALSE(w.barrier.has_value());
}

TEST_CASE("a mover without energy stops the cascade") {
    World w = t1_world();
    w.sensors.erase(F);
    w.sensors.emplace(sensor_id(6), make_sensor(6, 9, 1.5));
    NodeStates states = init_recovery_nodes(w).states;
    // d gets tired after the election.
    w.sensor(D).energy = 1.0;
    const auto out = fail_and_handle(w, states, B);
    CHECK_FALSE(out.success);
    CHECK(out.moves.size() == 1);
    CHECK_FALSE(w.barrier.has_value());
    CHECK(energy_non_negative(w));
}

TEST_CASE("sequential failures keep the barrier valid") {
    Rng rng(77);
    int successes = 0;
    for (int trial = 0; trial < 40; ++trial) {
        World w = random_world(rng, 40, 300, 10, 3, 60);
        w.barrier = find_barrier(build_intersection_graph(w));
        if (!w.barrier) continue;
        NodeStates states = init_recovery_nodes(w).states;
        for (int step = 0; step < 10 && w.barrier; ++step) {
            const auto alive = w.active_ids();
            const SensorId victim = alive[rng.below(alive.size())];
            const auto out = fail_and_handle(w, states, victim, 3);
            REQUIRE(out.moves.size() <= w.sensors.size());
            REQUIRE(energy_non_negative(w));
            double sum = 0.0;
            for (const auto& m : out.moves) sum += m.length();
            REQUIRE(out.total_displacement == doctest::Approx(sum));
            if (out.success) {
                ++successes;
                REQUIRE(verify_barrier(w));
            } else {
                REQUIRE_FALSE(w.barrier.has_value());
            }
        }
    }
    CHECK(successes > 50);
}
