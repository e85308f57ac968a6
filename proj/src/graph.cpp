#include "barrier/graph.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

namespace barrier {

namespace {

const std::vector<SensorId> kNoNeighbors;

void add_edge(std::map<SensorId, std::vector<SensorId>>& adj, SensorId a, SensorId b) {
    adj[a].push_back(b);
    adj[b].push_back(a);
}

}  // namespace

bool discs_intersect(const Sensor& a, const Sensor& b) {
    return distance(a.pos, b.pos) <= a.sensing_radius + b.sensing_radius;
}

bool touches_left(const Sensor& s) { return s.pos.x <= s.sensing_radius; }

bool touches_right(const Sensor& s, const Region& region) {
    return s.pos.x >= region.length - s.sensing_radius;
}

IntersectionGraph::IntersectionGraph(std::span<const Sensor> sensors, const Region& region)
    : length_(region.length) {
    std::vector<const Sensor*> active;
    for (const auto& s : sensors) {
        if (s.active()) active.push_back(&s);
    }
    std::sort(active.begin(), active.end(),
              [](const Sensor* a, const Sensor* b) { return a->id < b->id; });

    adjacency_[kLeftBoundary];
    adjacency_[kRightBoundary];
    for (const Sensor* s : active) {
        adjacency_[s->id];
        positions_[s->id] = s->pos;
    }
    for (std::size_t i = 0; i < active.size(); ++i) {
        const Sensor& a = *active[i];
        if (touches_left(a)) add_edge(adjacency_, kLeftBoundary, a.id);
        if (touches_right(a, region)) add_edge(adjacency_, kRightBoundary, a.id);
        for (std::size_t j = i + 1; j < active.size(); ++j) {
            if (discs_intersect(a, *active[j])) add_edge(adjacency_, a.id, active[j]->id);
        }
    }
    for (auto& [id, nbrs] : adjacency_) {
        std::sort(nbrs.begin(), nbrs.end());
        vertices_.push_back(id);
    }
}

const std::vector<SensorId>& IntersectionGraph::neighbors(SensorId id) const {
    auto it = adjacency_.find(id);
    return it == adjacency_.end() ? kNoNeighbors : it->second;
}

bool IntersectionGraph::adjacent(SensorId a, SensorId b) const {
    const auto& nbrs = neighbors(a);
    return std::binary_search(nbrs.begin(), nbrs.end(), b);
}

std::size_t IntersectionGraph::edge_count() const {
    std::size_t total = 0;
    for (const auto& [id, nbrs] : adjacency_) total += nbrs.size();
    return total / 2;
}

const Point& IntersectionGraph::position(SensorId id) const {
    auto it = positions_.find(id);
    if (it == positions_.end()) throw UnknownSensor("no position for vertex " + to_string(id));
    return it->second;
}

double IntersectionGraph::distance_to(SensorId from, SensorId target) const {
    const Point& p = position(from);
    if (target == kLeftBoundary) return std::max(0.0, p.x);
    if (target == kRightBoundary) return std::max(0.0, length_ - p.x);
    return distance(p, position(target));
}

IntersectionGraph build_intersection_graph(std::span<const Sensor> sensors, const Region& region) {
    return IntersectionGraph(sensors, region);
}

IntersectionGraph build_intersection_graph(const World& world) {
    std::vector<Sensor> sensors;
    sensors.reserve(world.sensors.size());
    for (const auto& [id, s] : world.sensors) {
        if (s.active()) sensors.push_back(s);
    }
    return IntersectionGraph(sensors, world.region);
}

std::optional<Path> find_alternate_path(const IntersectionGraph& graph, SensorId from, SensorId to,
                                        const std::set<SensorId>& excluded) {
    if (!graph.contains(from) || !graph.contains(to)) return std::nullopt;
    if (excluded.count(from) || excluded.count(to)) return std::nullopt;
    if (from == to) return Path{from};

    std::unordered_map<std::int32_t, SensorId> parent;
    std::deque<SensorId> frontier{from};
    parent.emplace(to_int(from), from);
    while (!frontier.empty()) {
        const SensorId u = frontier.front();
        frontier.pop_front();
        if (u != from && is_boundary(u)) continue;  // boundaries only as endpoints
        for (SensorId v : graph.neighbors(u)) {
            if (parent.count(to_int(v)) || excluded.count(v)) continue;
            parent.emplace(to_int(v), u);
            if (v == to) {
                Path path{to};
                while (path.back() != from) path.push_back(parent.at(to_int(path.back())));
                std::reverse(path.begin(), path.end());
                return path;
            }
            frontier.push_back(v);
        }
    }
    return std::nullopt;
}

std::optional<Barrier> find_barrier(const IntersectionGraph& graph) {
    auto path = find_alternate_path(graph, kLeftBoundary, kRightBoundary);
    if (!path) return std::nullopt;
    return Barrier(path->begin() + 1, path->end() - 1);
}

SensorId barrier_predecessor(const Barrier& barrier, std::size_t index) {
    return index == 0 ? kLeftBoundary : barrier.at(index - 1);
}

SensorId barrier_successor(const Barrier& barrier, std::size_t index) {
    return index + 1 >= barrier.size() ? kRightBoundary : barrier.at(index + 1);
}

namespace {

std::optional<std::pair<std::size_t, std::size_t>> failed_span(const Barrier& barrier,
                                                               const std::set<SensorId>& failed) {
    std::optional<std::size_t> lo, hi;
    for (std::size_t i = 0; i < barrier.size(); ++i) {
        if (!failed.count(barrier[i])) continue;
        if (!lo) lo = i;
        hi = i;
    }
    if (!lo) return std::nullopt;
    return std::pair{*lo, *hi};
}

}  // namespace

std::optional<std::pair<SensorId, SensorId>> failed_span_endpoints(const Barrier& barrier,
                                                                   const std::set<SensorId>& failed) {
    auto span = failed_span(barrier, failed);
    if (!span) return std::nullopt;
    return std::pair{barrier_predecessor(barrier, span->first), barrier_successor(barrier, span->second)};
}

Path erase_loops(const Path& walk) {
    Path out;
    std::unordered_map<std::int32_t, std::size_t> at;
    for (SensorId v : walk) {
        auto it = at.find(to_int(v));
        if (it != at.end()) {
            for (std::size_t i = it->second + 1; i < out.size(); ++i) at.erase(to_int(out[i]));
            out.resize(it->second + 1);
            continue;
        }
        at.emplace(to_int(v), out.size());
        out.push_back(v);
    }
    return out;
}

Barrier splice_barrier(const Barrier& barrier, const std::set<SensorId>& failed, const Path& replacement) {
    auto span = failed_span(barrier, failed);
    if (!span) return barrier;
    const SensorId pre = barrier_predecessor(barrier, span->first);
    const SensorId suc = barrier_successor(barrier, span->second);
    if (replacement.empty() || replacement.front() != pre || replacement.back() != suc) {
        throw SpliceEndpointMismatch("replacement path must run from " + to_string(pre) + " to " +
                                     to_string(suc));
    }
    Path walk(barrier.begin(), barrier.begin() + static_cast<std::ptrdiff_t>(span->first));
    if (!walk.empty()) walk.pop_back();  // pre is repeated as the path's first vertex
    for (SensorId v : replacement) {
        if (!is_boundary(v)) walk.push_back(v);
    }
    const std::size_t resume = span->second + 2;  // skip suc, already in the path
    if (resume < barrier.size()) walk.insert(walk.end(), barrier.begin() + static_cast<std::ptrdiff_t>(resume), barrier.end());
    return erase_loops(walk);
}

bool verify_chain(const World& world, const Barrier& chain) {
    if (chain.empty()) return false;
    std::set<SensorId> seen;
    const Sensor* prev = nullptr;
    for (SensorId id : chain) {
        if (!world.contains(id) || !seen.insert(id).second) return false;
        const Sensor& s = world.sensor(id);
        if (!s.active()) return false;
        if (prev == nullptr) {
            if (!touches_left(s)) return false;
        } else if (!discs_intersect(*prev, s)) {
            return false;
        }
        prev = &s;
    }
    return touches_right(*prev, world.region);
}

bool verify_barrier(const World& world) {
    return world.barrier.has_value() && verify_chain(world, *world.barrier);
}

}  // namespace barrier
