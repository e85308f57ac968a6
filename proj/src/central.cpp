#include "barrier/central.hpp"

namespace barrier {

std::string_view to_string(Mechanism m) {
    switch (m) {
        case Mechanism::AlternatePath: return "AlternatePath";
        case Mechanism::Shifting: return "Shifting";
        case Mechanism::None: break;
    }
    return "None";
}

AssignmentProblem build_assignment(const World& world, const std::set<SensorId>& failed) {
    AssignmentProblem problem;
    if (!world.barrier) return problem;
    for (SensorId id : *world.barrier) problem.right.push_back(world.sensor(id).pos);
    for (const auto& [id, s] : world.sensors) {
        if (!s.active() || failed.count(id)) continue;
        problem.left.push_back(id);
        std::vector<double> row;
        std::vector<bool> ok;
        row.reserve(problem.right.size());
        ok.reserve(problem.right.size());
        const double reach = std::min(displacement_capacity(s, world.energy_model), s.comm_radius);
        for (const Point& target : problem.right) {
            const double d = distance(s.pos, target);
            row.push_back(d);
            ok.push_back(d == 0.0 || (s.mobility == Mobility::Mobile && d <= reach));
        }
        problem.cost.push_back(std::move(row));
        problem.feasible.push_back(std::move(ok));
    }
    return problem;
}

namespace {

// Sensors with no feasible edge can never be matched; dropping them leaves
// the optimum unchanged and keeps the dense solve small.
AssignmentProblem without_isolated_rows(const AssignmentProblem& full) {
    AssignmentProblem reduced;
    reduced.right = full.right;
    for (std::size_t i = 0; i < full.rows(); ++i) {
        bool any = false;
        for (bool f : full.feasible[i]) any = any || f;
        if (!any) continue;
        reduced.left.push_back(full.left[i]);
        reduced.cost.push_back(full.cost[i]);
        reduced.feasible.push_back(full.feasible[i]);
    }
    return reduced;
}

bool try_alternate_path(World& world, const std::set<SensorId>& failed, RestoreOutcome& out) {
    const auto ends = failed_span_endpoints(*world.barrier, failed);
    const IntersectionGraph graph = build_intersection_graph(world);
    auto path = find_alternate_path(graph, ends->first, ends->second, failed);
    if (!path) return false;
    world.barrier = splice_barrier(*world.barrier, failed, *path);
    out.success = true;
    out.mechanism = Mechanism::AlternatePath;
    out.new_barrier = world.barrier;
    return true;
}

}  // namespace

RestoreOutcome restore_nmove(World& world, const std::set<SensorId>& failed) {
    RestoreOutcome out;
    if (!world.barrier) return out;
    if (!failed_span_endpoints(*world.barrier, failed)) {
        out.success = true;
        out.new_barrier = world.barrier;
        return out;
    }
    try_alternate_path(world, failed, out);
    return out;
}

RestoreOutcome restore_cmove(World& world, const std::set<SensorId>& failed) {
    RestoreOutcome out;
    if (!world.barrier) return out;
    if (!failed_span_endpoints(*world.barrier, failed)) {
        out.success = true;
        out.new_barrier = world.barrier;
        return out;
    }
    if (try_alternate_path(world, failed, out)) return out;

    const AssignmentProblem problem = without_isolated_rows(build_assignment(world, failed));
    const auto assignment = hungarian(problem);
    if (!assignment) return out;

    Barrier rebuilt(problem.cols());
    std::vector<Move> plan;
    for (std::size_t j = 0; j < problem.cols(); ++j) {
        const SensorId id = problem.left[(*assignment)[j]];
        rebuilt[j] = id;
        const Point& from = world.sensor(id).pos;
        if (from != problem.right[j]) plan.push_back(Move{id, from, problem.right[j]});
    }
    for (const Move& m : plan) {
        if (!can_reach(world.sensor(m.id), m.to, world.energy_model)) {
            throw MoveExceedsCapacity("matching produced an infeasible move for " + to_string(m.id));
        }
    }
    for (const Move& m : plan) {
        apply_move(world, m.id, m.to);
        out.record(m);
    }
    world.barrier = rebuilt;
    out.success = true;
    out.mechanism = Mechanism::Shifting;
    out.new_barrier = rebuilt;
    return out;
}

}  // namespace barrier
