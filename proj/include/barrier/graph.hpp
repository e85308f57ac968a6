#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <vector>

#include "barrier/core.hpp"

namespace barrier {

using Path = std::vector<SensorId>;

// Intersection graph of sensing discs plus the two boundary vertices.
// Vertices and neighbor lists are kept in ascending id order.
class IntersectionGraph {
public:
    IntersectionGraph() = default;
    IntersectionGraph(std::span<const Sensor> sensors, const Region& region);

    const std::vector<SensorId>& vertices() const { return vertices_; }
    bool contains(SensorId id) const { return adjacency_.count(id) != 0; }
    const std::vector<SensorId>& neighbors(SensorId id) const;
    bool adjacent(SensorId a, SensorId b) const;
    std::size_t edge_count() const;

    const Point& position(SensorId id) const;
    double region_length() const { return length_; }

    // Euclidean distance from a sensor to a vertex; for a boundary vertex this
    // is the distance to that boundary line.
    double distance_to(SensorId from, SensorId target) const;

private:
    std::vector<SensorId> vertices_;
    std::map<SensorId, std::vector<SensorId>> adjacency_;
    std::map<SensorId, Point> positions_;
    double length_ = 0.0;
};

bool discs_intersect(const Sensor& a, const Sensor& b);
bool touches_left(const Sensor& s);
bool touches_right(const Sensor& s, const Region& region);

IntersectionGraph build_intersection_graph(std::span<const Sensor> sensors, const Region& region);
// Graph over the currently Active sensors of a world.
IntersectionGraph build_intersection_graph(const World& world);

// Minimum-hop left-to-right chain, boundary vertices stripped.
std::optional<Barrier> find_barrier(const IntersectionGraph& graph);

// Minimum-hop path from -> to avoiding `excluded`. Boundary vertices may only
// appear as endpoints. The returned path includes both endpoints; from == to
// yields the single-vertex path.
std::optional<Path> find_alternate_path(const IntersectionGraph& graph, SensorId from, SensorId to,
                                        const std::set<SensorId>& excluded = {});

class SpliceEndpointMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Neighbor of barrier[index] toward the left/right boundary.
SensorId barrier_predecessor(const Barrier& barrier, std::size_t index);
SensorId barrier_successor(const Barrier& barrier, std::size_t index);

// Outer survivors around the failed span: predecessor of the leftmost failed
// barrier node and successor of the rightmost one. Nullopt if no barrier
// node failed.
std::optional<std::pair<SensorId, SensorId>> failed_span_endpoints(const Barrier& barrier,
                                                                   const std::set<SensorId>& failed);

// Replaces the failed span with `replacement` (whose endpoints must be the
// outer survivors). Any cycle introduced by the replacement is cut out.
Barrier splice_barrier(const Barrier& barrier, const std::set<SensorId>& failed, const Path& replacement);

// Removes cycles from a walk, keeping the first visit of every vertex.
Path erase_loops(const Path& walk);

bool verify_chain(const World& world, const Barrier& chain);
bool verify_barrier(const World& world);

}  // namespace barrier
