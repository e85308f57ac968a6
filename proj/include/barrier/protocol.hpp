#pragma once

#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "barrier/core.hpp"
#include "barrier/graph.hpp"
#include "barrier/random.hpp"

namespace barrier {

inline constexpr double kUnreachable = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// Messages

// Ask a barrier neighbor for the cumulative distance to the closest usable
// non-barrier node on its side. q is the originator.
struct ReqNbRec {
    SensorId q{};
};

// Answer to ReqNbRec(q); d already includes the hop toward the receiver.
struct RepNbRec {
    SensorId q{};
    double d = kUnreachable;
};

// Sent by a barrier node to the neighbor it elected as its recovery node.
struct SetRec {
    SensorId pred{};
    SensorId succ{};
};

enum class Route { Disc, Found };

// Depth-first route discovery token. k is the number of hops still allowed
// from the receiving node.
struct Tok {
    Route route = Route::Disc;
    SensorId dest{};
    int k = 0;
};

using Message = std::variant<ReqNbRec, RepNbRec, SetRec, Tok>;

std::string message_type(const Message& m);
std::string message_payload(const Message& m);

struct Envelope {
    SensorId sender{};
    SensorId receiver{};
    std::uint64_t seq = 0;
    Message message;
};

struct TraceRecord {
    std::size_t round = 0;
    SensorId sender{};
    SensorId receiver{};
    std::string type;
    std::string payload;
};

// Reliable FIFO delivery per ordered (sender, receiver) pair.
class MessageBus {
public:
    void send(SensorId from, SensorId to, Message message);
    bool empty() const { return pending_ == 0; }
    std::size_t pending() const { return pending_; }

    // Removes every message queued so far and returns them in delivery order:
    // ascending (sender, receiver, seq), or, when `interleave` is given, a
    // random merge that still keeps each pair's FIFO order.
    std::vector<Envelope> take_round(Rng* interleave = nullptr);

    std::size_t rounds() const { return round_; }
    std::uint64_t delivered() const { return delivered_; }

    void record(const Envelope& e);
    const std::vector<TraceRecord>& trace() const { return trace_; }
    void set_tracing(bool on) { tracing_ = on; }
    void write_trace_csv(std::ostream& os) const;

private:
    std::map<std::pair<std::int32_t, std::int32_t>, std::deque<Envelope>> queues_;
    std::size_t pending_ = 0;
    std::uint64_t next_seq_ = 0;
    std::size_t round_ = 0;
    std::uint64_t delivered_ = 0;
    bool tracing_ = false;
    std::vector<TraceRecord> trace_;
};

// ---------------------------------------------------------------------------
// Per-node protocol state

struct RecEntry {
    SensorId q{};
    SensorId pred{};
    SensorId succ{};
};

struct NodeState {
    SensorId id{};
    bool is_on_barrier = false;
    bool is_rec_node = false;
    std::vector<SensorId> bar_neighbors;
    std::vector<SensorId> non_bar_neighbors;
    double path_length = kUnreachable;
    double res_energy = 0.0;
    // Barrier links; the boundary vertices stand in at the two ends.
    std::optional<SensorId> pre;
    std::optional<SensorId> suc;
    std::optional<SensorId> rec_node;
    std::vector<RecEntry> rec_set;

    // Replies to this node's own ReqNbRec, per side.
    std::optional<double> left_reply;
    std::optional<double> right_reply;
};

using NodeStates = std::map<SensorId, NodeState>;

// Read-only view of the physical network the handlers consult.
struct Environment {
    const World& world;
    const IntersectionGraph& graph;

    const Sensor& sensor(SensorId id) const { return world.sensor(id); }
    double dist(SensorId a, SensorId b) const { return distance(sensor(a).pos, sensor(b).pos); }
    bool can_move_to(SensorId mover, SensorId target) const;
};

// Neighbors of a barrier node that are off the barrier and can relocate onto
// it, sorted by (distance, id).
std::vector<SensorId> eligible_fillers(const Environment& env, const NodeStates& states, SensorId node);

// Fresh Table-1 state for every Active sensor, with barrier roles taken from
// world.barrier.
NodeStates make_node_states(const World& world, const IntersectionGraph& graph);

// Active depth-first token search.
struct TokenSearch {
    enum class Status { Running, Found, Failed };

    SensorId initiator{};
    SensorId dest{};
    Status status = Status::Running;
    std::map<SensorId, SensorId> father;
    std::map<SensorId, std::set<SensorId>> used;
    std::map<SensorId, int> budget;
    // Filled while the "found" token travels back; dest first.
    Path reverse_path;
};

struct RoundOptions {
    Rng* interleave = nullptr;
    TokenSearch* search = nullptr;
};

// Delivers every queued message once, running the matching handler.
// Returns the number of messages delivered.
std::size_t run_protocol_round(MessageBus& bus, NodeStates& states, const Environment& env,
                               const RoundOptions& options = {});

struct RecoveryInit {
    NodeStates states;
    // Barrier nodes for which no recovery node exists on either side.
    std::vector<SensorId> unresolved;
    std::size_t rounds = 0;
};

// Recovery-node election for every barrier node, run to quiescence over the
// bus. A bus may be supplied to collect a trace and to continue its round
// numbering.
RecoveryInit init_recovery_nodes(const World& world, MessageBus* bus = nullptr, Rng* interleave = nullptr);

// Modified limited-depth DFS: greedy (closest-to-destination) neighbor order,
// at most `k` hops, backtracking through fathers. `dest` may be a boundary
// vertex, reached through any neighbor touching that boundary.
std::optional<Path> mldfs(const NodeStates& states, const Environment& env, SensorId start, SensorId dest, int k,
                          MessageBus* bus = nullptr);

}  // namespace barrier
