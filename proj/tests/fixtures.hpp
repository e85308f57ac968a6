#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <numeric>
#include <queue>
#include <set>
#include <vector>

#include "barrier/core.hpp"
#include "barrier/graph.hpp"
#include "barrier/random.hpp"

namespace fixtures {

using namespace barrier;

inline constexpr SensorId A{0}, B{1}, C{2}, D{3}, E{4}, F{5};

inline Sensor make_sensor(int id, double x, double y, double rho = 1.0, double comm = 2.0, double energy = 100.0) {
    Sensor s;
    s.id = sensor_id(id);
    s.pos = {x, y};
    s.sensing_radius = rho;
    s.comm_radius = comm;
    s.energy = energy;
    s.initial_energy = energy;
    return s;
}

inline World make_world(double length, double width, const std::vector<Sensor>& sensors) {
    World w;
    w.region = {length, width};
    for (const auto& s : sensors) w.sensors.emplace(s.id, s);
    return w;
}

// L=10, W=4, rho=1, comm=2: a..e on the line at x=1,3,5,7,9 and f=(5,2).
inline World t1_world() {
    World w = make_world(10.0, 4.0,
                         {make_sensor(0, 1, 0), make_sensor(1, 3, 0), make_sensor(2, 5, 0), make_sensor(3, 7, 0),
                          make_sensor(4, 9, 0), make_sensor(5, 5, 2)});
    w.barrier = Barrier{A, B, C, D, E};
    return w;
}

// Random belt world: n sensors roughly along a line with jitter, some
// extra sensors scattered in the belt.
inline World random_world(Rng& rng, int n, double length, double rho, double jitter, double energy = 100.0) {
    std::vector<Sensor> sensors;
    const int line = std::max(2, n * 2 / 3);
    for (int i = 0; i < n; ++i) {
        double x;
        double y;
        if (i < line) {
            x = length * i / (line - 1) + rng.gaussian(0.0, jitter);
            y = 2.0 * rho + rng.gaussian(0.0, jitter);
        } else {
            x = rng.uniform(0.0, length);
            y = rng.uniform(0.0, 4.0 * rho);
        }
        sensors.push_back(make_sensor(i, x, y, rho, 2.0 * rho, energy));
    }
    return make_world(length, 4.0 * rho, sensors);
}

// Plain adjacency lists over vertex indices, built independently of
// IntersectionGraph.
struct Adj {
    std::vector<int> ids;  // vertex index -> sensor id (PL=-1, PR=-2)
    std::vector<std::vector<int>> nbr;
    int index_of(int id) const {
        return static_cast<int>(std::find(ids.begin(), ids.end(), id) - ids.begin());
    }
};

inline Adj oracle_adjacency(const World& w) {
    Adj g;
    std::vector<const Sensor*> act;
    for (const auto& [id, s] : w.sensors)
        if (s.active()) act.push_back(&s);
    g.ids.push_back(-1);
    g.ids.push_back(-2);
    for (auto* s : act) g.ids.push_back(to_int(s->id));
    g.nbr.resize(g.ids.size());
    for (std::size_t i = 0; i < act.size(); ++i) {
        const Sensor& s = *act[i];
        const int vi = static_cast<int>(i) + 2;
        if (s.pos.x <= s.sensing_radius) {
            g.nbr[0].push_back(vi);
            g.nbr[vi].push_back(0);
        }
        if (s.pos.x >= w.region.length - s.sensing_radius) {
            g.nbr[1].push_back(vi);
            g.nbr[vi].push_back(1);
        }
        for (std::size_t j = i + 1; j < act.size(); ++j) {
            const Sensor& t = *act[j];
            const double dx = s.pos.x - t.pos.x;
            const double dy = s.pos.y - t.pos.y;
            const double r = s.sensing_radius + t.sensing_radius;
            if (dx * dx + dy * dy <= r * r) {
                const int vj = static_cast<int>(j) + 2;
                g.nbr[vi].push_back(vj);
                g.nbr[vj].push_back(vi);
            }
        }
    }
    return g;
}

// Hop distances from `src`; boundary vertices are not traversed through.
inline std::vector<int> bfs_hops(const Adj& g, int src, const std::set<int>& blocked = {}) {
    std::vector<int> dist(g.ids.size(), -1);
    std::queue<int> q;
    dist[src] = 0;
    q.push(src);
    while (!q.empty()) {
        const int u = q.front();
        q.pop();
        if (u != src && g.ids[u] < 0) continue;
        for (int v : g.nbr[u]) {
            if (dist[v] >= 0 || blocked.count(g.ids[v])) continue;
            dist[v] = dist[u] + 1;
            q.push(v);
        }
    }
    return dist;
}

// Minimum over all permutations/injections of rows into columns; the
// classic oracle for assignment problems. Returns +inf when infeasible.
inline double brute_force_assignment(const std::vector<std::vector<double>>& cost,
                                     const std::vector<std::vector<bool>>& feasible, std::size_t cols) {
    const std::size_t rows = cost.size();
    double best = std::numeric_limits<double>::infinity();
    std::vector<int> chosen(cols, -1);
    std::vector<bool> taken(rows, false);
    auto rec = [&](auto&& self, std::size_t j, double acc) -> void {
        if (acc >= best) return;
        if (j == cols) {
            best = acc;
            return;
        }
        for (std::size_t i = 0; i < rows; ++i) {
            if (taken[i] || !feasible[i][j]) continue;
            taken[i] = true;
            self(self, j + 1, acc + cost[i][j]);
            taken[i] = false;
        }
    };
    rec(rec, 0, 0.0);
    return best;
}

// Same minimum by dynamic programming over subsets of used rows
// (rows <= 20).
inline double subset_dp_assignment(const std::vector<std::vector<double>>& cost,
                                   const std::vector<std::vector<bool>>& feasible, std::size_t cols) {
    const std::size_t rows = cost.size();
    const double inf = std::numeric_limits<double>::infinity();
    if (cols > rows) return inf;
    std::vector<double> best(std::size_t{1} << rows, inf);
    best[0] = 0.0;
    for (std::size_t mask = 0; mask < best.size(); ++mask) {
        if (best[mask] == inf) continue;
        const auto j = static_cast<std::size_t>(std::popcount(mask));
        if (j >= cols) continue;
        for (std::size_t i = 0; i < rows; ++i) {
            if ((mask >> i) & 1U || !feasible[i][j]) continue;
            const std::size_t next = mask | (std::size_t{1} << i);
            best[next] = std::min(best[next], best[mask] + cost[i][j]);
        }
    }
    double out = inf;
    for (std::size_t mask = 0; mask < best.size(); ++mask)
        if (static_cast<std::size_t>(std::popcount(mask)) == cols) out = std::min(out, best[mask]);
    return out;
}

// Exhaustive minimum total displacement to refill every barrier position
// (including those of failed nodes) from the surviving sensors, computed
// straight from positions and energies. +inf when impossible.
inline double exhaustive_shift_cost(const World& w) {
    std::vector<Point> targets;
    for (SensorId id : *w.barrier) targets.push_back(w.sensor(id).pos);
    std::vector<std::vector<double>> cost;
    std::vector<std::vector<bool>> ok;
    for (const auto& [id, s] : w.sensors) {
        if (!s.active()) continue;
        std::vector<double> row;
        std::vector<bool> f;
        for (const Point& t : targets) {
            const double d = std::hypot(s.pos.x - t.x, s.pos.y - t.y);
            const bool mobile = s.mobility == Mobility::Mobile;
            const double energy_reach = s.energy / w.energy_model.cost_per_unit;
            row.push_back(d);
            f.push_back(d == 0.0 || (mobile && d <= energy_reach && d <= s.comm_radius));
        }
        cost.push_back(row);
        ok.push_back(f);
    }
    return subset_dp_assignment(cost, ok, targets.size());
}

// Offline recovery-chain oracle: for every barrier node, the cheapest
// cumulative distance to an eligible non-barrier neighbor along the barrier
// in either direction, where each hop requires the mover to reach the
// position of its neighbor toward the originator. Ties go to the left.
struct ChainOracle {
    std::map<SensorId, double> length;  // +inf when no chain exists
    std::map<SensorId, SensorId> choice;
};

inline ChainOracle chain_oracle(const World& w) {
    const Barrier& bar = *w.barrier;
    const std::set<SensorId> on(bar.begin(), bar.end());
    const double inf = std::numeric_limits<double>::infinity();
    auto dist = [&](SensorId a, SensorId b) {
        const Point& p = w.sensor(a).pos;
        const Point& q = w.sensor(b).pos;
        return std::hypot(p.x - q.x, p.y - q.y);
    };
    auto reach = [&](SensorId mover, SensorId target) {
        const Sensor& s = w.sensor(mover);
        const double d = dist(mover, target);
        return d == 0.0 || (s.mobility == Mobility::Mobile && d <= s.energy / w.energy_model.cost_per_unit);
    };
    // Closest non-barrier sensor whose disc meets x's and that can move onto x.
    auto filler = [&](SensorId x) -> std::optional<double> {
        std::optional<double> best;
        const Sensor& sx = w.sensor(x);
        for (const auto& [id, s] : w.sensors) {
            if (!s.active() || on.count(id)) continue;
            const double d = dist(id, x);
            if (d > s.sensing_radius + sx.sensing_radius) continue;
            if (!reach(id, x)) continue;
            if (!best || d < *best) best = d;
        }
        return best;
    };
    const std::size_t m = bar.size();
    // side(i, step): value a request from bar[i - step] sees at bar[i].
    // Cost seen by bar[origin] on one side. Hop lengths are summed from the
    // filler end back toward the origin.
    auto side = [&](std::size_t origin, int step) {
        std::vector<double> hops;
        std::size_t prev = origin;
        for (long i = static_cast<long>(origin) + step; i >= 0 && i < static_cast<long>(m); i += step) {
            const SensorId x = bar[static_cast<std::size_t>(i)];
            if (!reach(x, bar[prev])) return inf;
            hops.push_back(dist(x, bar[prev]));
            if (auto f = filler(x)) {
                double acc = *f;
                for (auto it = hops.rbegin(); it != hops.rend(); ++it) acc += *it;
                return acc;
            }
            prev = static_cast<std::size_t>(i);
        }
        return inf;
    };
    ChainOracle out;
    for (std::size_t i = 0; i < m; ++i) {
        if (auto f = filler(bar[i])) {
            out.length[bar[i]] = *f;
            continue;
        }
        const double left = side(i, -1);
        const double right = side(i, +1);
        out.length[bar[i]] = std::min(left, right);
        if (left != inf && left <= right) out.choice[bar[i]] = bar[i - 1];
        else if (right != inf) out.choice[bar[i]] = bar[i + 1];
    }
    return out;
}

inline bool energy_non_negative(const World& w) {
    return std::all_of(w.sensors.begin(), w.sensors.end(), [](const auto& kv) { return kv.second.energy >= 0.0; });
}

}  // namespace fixtures
