#include "barrier/protocol.hpp"

#include <algorithm>
#include <cstdio>

namespace barrier {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string fmt_double(double v) {
    if (v == kUnreachable) return "inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

}  // namespace

std::string message_type(const Message& m) {
    return std::visit(overloaded{
                          [](const ReqNbRec&) { return std::string("ReqNbRec"); },
                          [](const RepNbRec&) { return std::string("RepNbRec"); },
                          [](const SetRec&) { return std::string("SetRec"); },
                          [](const Tok&) { return std::string("Tok"); },
                      },
                      m);
}

std::string message_payload(const Message& m) {
    return std::visit(overloaded{
                          [](const ReqNbRec& r) { return "q=" + to_string(r.q); },
                          [](const RepNbRec& r) { return "q=" + to_string(r.q) + " d=" + fmt_double(r.d); },
                          [](const SetRec& r) { return "pred=" + to_string(r.pred) + " succ=" + to_string(r.succ); },
                          [](const Tok& t) {
                              return std::string(t.route == Route::Disc ? "disc" : "found") + " d=" +
                                     to_string(t.dest) + " k=" + std::to_string(t.k);
                          },
                      },
                      m);
}

// ---------------------------------------------------------------------------
// MessageBus

void MessageBus::send(SensorId from, SensorId to, Message message) {
    queues_[{to_int(from), to_int(to)}].push_back(Envelope{from, to, next_seq_++, std::move(message)});
    ++pending_;
}

std::vector<Envelope> MessageBus::take_round(Rng* interleave) {
    std::vector<Envelope> out;
    out.reserve(pending_);
    ++round_;
    if (interleave == nullptr) {
        for (auto& [key, q] : queues_) {
            for (auto& e : q) out.push_back(std::move(e));
        }
    } else {
        std::vector<std::deque<Envelope>*> live;
        for (auto& [key, q] : queues_) {
            if (!q.empty()) live.push_back(&q);
        }
        while (!live.empty()) {
            const auto pick = interleave->below(live.size());
            out.push_back(std::move(live[pick]->front()));
            live[pick]->pop_front();
            if (live[pick]->empty()) live.erase(live.begin() + static_cast<std::ptrdiff_t>(pick));
        }
    }
    queues_.clear();
    pending_ = 0;
    return out;
}

void MessageBus::record(const Envelope& e) {
    ++delivered_;
    if (tracing_) trace_.push_back({round_, e.sender, e.receiver, message_type(e.message), message_payload(e.message)});
}

void MessageBus::write_trace_csv(std::ostream& os) const {
    os << "round,sender,receiver,type,payload\n";
    for (const auto& t : trace_) {
        os << t.round << ',' << to_string(t.sender) << ',' << to_string(t.receiver) << ',' << t.type << ','
           << t.payload << '\n';
    }
}

// ---------------------------------------------------------------------------
// Node state

bool Environment::can_move_to(SensorId mover, SensorId target) const {
    return can_reach(sensor(mover), sensor(target).pos, world.energy_model);
}

std::vector<SensorId> eligible_fillers(const Environment& env, const NodeStates& states, SensorId node) {
    std::vector<std::pair<double, SensorId>> found;
    for (SensorId nb : env.graph.neighbors(node)) {
        if (is_boundary(nb)) continue;
        auto it = states.find(nb);
        if (it == states.end() || it->second.is_on_barrier) continue;
        if (!env.can_move_to(nb, node)) continue;
        found.emplace_back(env.dist(nb, node), nb);
    }
    std::sort(found.begin(), found.end());
    std::vector<SensorId> ids;
    for (const auto& [d, id] : found) ids.push_back(id);
    return ids;
}

NodeStates make_node_states(const World& world, const IntersectionGraph& graph) {
    NodeStates states;
    for (const auto& [id, s] : world.sensors) {
        if (!s.active()) continue;
        NodeState st;
        st.id = id;
        st.res_energy = s.energy;
        states.emplace(id, st);
    }
    if (world.barrier) {
        const Barrier& b = *world.barrier;
        for (std::size_t i = 0; i < b.size(); ++i) {
            auto it = states.find(b[i]);
            if (it == states.end()) continue;
            it->second.is_on_barrier = true;
            it->second.pre = barrier_predecessor(b, i);
            it->second.suc = barrier_successor(b, i);
        }
    }
    for (auto& [id, st] : states) {
        for (SensorId nb : graph.neighbors(id)) {
            auto it = states.find(nb);
            if (it == states.end()) continue;
            (it->second.is_on_barrier ? st.bar_neighbors : st.non_bar_neighbors).push_back(nb);
        }
    }
    return states;
}

// ---------------------------------------------------------------------------
// Handlers

namespace {

struct Dispatcher {
    MessageBus& bus;
    NodeStates& states;
    const Environment& env;
    TokenSearch* search;

    NodeState& node(SensorId id) { return states.at(id); }

    // ---- recovery-node election

    void elect(NodeState& p) {
        const double left = p.left_reply.value_or(kUnreachable);
        const double right = p.right_reply.value_or(kUnreachable);
        std::optional<SensorId> choice;
        double length = kUnreachable;
        if (left != kUnreachable && left <= right) {
            choice = p.pre;
            length = left;
        } else if (right != kUnreachable) {
            choice = p.suc;
            length = right;
        }
        p.rec_node = choice;
        p.path_length = length;
        if (choice) bus.send(p.id, *choice, SetRec{*p.pre, *p.suc});
    }

    void maybe_elect(NodeState& p) {
        if (p.left_reply && p.right_reply) elect(p);
    }

    void on(const Envelope& e, const SetRec& m) {
        NodeState& p = node(e.receiver);
        p.is_rec_node = true;
        auto it = std::find_if(p.rec_set.begin(), p.rec_set.end(), [&](const RecEntry& r) { return r.q == e.sender; });
        if (it != p.rec_set.end()) {
            *it = RecEntry{e.sender, m.pred, m.succ};
        } else {
            p.rec_set.push_back(RecEntry{e.sender, m.pred, m.succ});
        }
    }

    void on(const Envelope& e, const ReqNbRec& m) {
        NodeState& p = node(e.receiver);
        const SensorId toward = e.sender;
        const SensorId away = (p.suc && *p.suc == toward) ? p.pre.value_or(kLeftBoundary)
                                                          : p.suc.value_or(kRightBoundary);
        if (!env.can_move_to(p.id, toward)) {
            bus.send(p.id, toward, RepNbRec{m.q, kUnreachable});
            return;
        }
        const auto fillers = eligible_fillers(env, states, p.id);
        if (!fillers.empty()) {
            bus.send(p.id, toward, RepNbRec{m.q, env.dist(p.id, fillers.front()) + env.dist(p.id, toward)});
        } else if (!is_boundary(away)) {
            bus.send(p.id, away, ReqNbRec{m.q});
        } else {
            bus.send(p.id, toward, RepNbRec{m.q, kUnreachable});
        }
    }

    void on(const Envelope& e, const RepNbRec& m) {
        NodeState& p = node(e.receiver);
        const bool from_pre = p.pre && *p.pre == e.sender;
        if (m.q == p.id) {
            (from_pre ? p.left_reply : p.right_reply) = m.d;
            maybe_elect(p);
            return;
        }
        const SensorId toward = from_pre ? p.suc.value_or(kRightBoundary) : p.pre.value_or(kLeftBoundary);
        if (is_boundary(toward)) return;  // originator unreachable; cannot happen on a consistent chain
        const double d = m.d == kUnreachable ? kUnreachable : m.d + env.dist(p.id, toward);
        bus.send(p.id, toward, RepNbRec{m.q, d});
    }

    // ---- token search

    // Unused neighbors of p other than its father, in greedy order.
    std::optional<SensorId> next_hop(SensorId p) {
        const SensorId father = search->father.at(p);
        const auto& used = search->used[p];
        std::optional<SensorId> best;
        double best_d = kUnreachable;
        for (SensorId q : env.graph.neighbors(p)) {
            if (q == father || used.count(q)) continue;
            if (is_boundary(q) && q != search->dest) continue;
            const double d = is_boundary(q) ? 0.0 : env.graph.distance_to(q, search->dest);
            if (!best || d < best_d) {  // neighbors arrive in ascending id; strict < keeps the lower id
                best = q;
                best_d = d;
            }
        }
        return best;
    }

    void found_at(SensorId p) {
        search->reverse_path.push_back(p);
        if (search->father.at(p) == p) {
            search->status = TokenSearch::Status::Found;
        } else {
            bus.send(p, search->father.at(p), Tok{Route::Found, search->dest, search->budget.at(p) + 1});
        }
    }

    // Continue the search from p using p's own remaining budget.
    void advance(SensorId p) {
        const int budget = search->budget.at(p);
        if (budget > 0) {
            if (auto q = next_hop(p)) {
                search->used[p].insert(*q);
                if (*q == search->dest && is_boundary(*q)) {
                    search->reverse_path.push_back(*q);
                    found_at(p);
                } else {
                    bus.send(p, *q, Tok{Route::Disc, search->dest, budget - 1});
                }
                return;
            }
        }
        const SensorId father = search->father.at(p);
        if (father == p) {
            search->status = TokenSearch::Status::Failed;
            return;
        }
        bus.send(p, father, Tok{Route::Disc, search->dest, budget + 1});
    }

    void on(const Envelope& e, const Tok& t) {
        if (search == nullptr || search->status != TokenSearch::Status::Running) return;
        const SensorId p = e.receiver;
        const SensorId m = e.sender;
        if (t.route == Route::Found) {
            found_at(p);
            return;
        }
        if (!search->father.count(p)) {
            search->father[p] = m;
            search->budget[p] = t.k;
            if (p == t.dest && t.k >= 0) {
                search->reverse_path.push_back(p);
                bus.send(p, m, Tok{Route::Found, t.dest, t.k + 1});
                return;
            }
            advance(p);
            return;
        }
        if (search->used[p].count(m)) {
            advance(p);  // backtrack from a child
            return;
        }
        // Reached again over a non-tree edge: hand the token straight back.
        search->used[p].insert(m);
        bus.send(p, m, Tok{Route::Disc, t.dest, t.k + 1});
    }

    void deliver(const Envelope& e) {
        if (!env.graph.contains(e.receiver)) return;  // receiver has failed
        bus.record(e);
        std::visit([&](const auto& m) { on(e, m); }, e.message);
    }
};

}  // namespace

std::size_t run_protocol_round(MessageBus& bus, NodeStates& states, const Environment& env,
                               const RoundOptions& options) {
    if (bus.empty()) return 0;
    Dispatcher dispatcher{bus, states, env, options.search};
    const auto batch = bus.take_round(options.interleave);
    for (const auto& e : batch) dispatcher.deliver(e);
    return batch.size();
}

RecoveryInit init_recovery_nodes(const World& world, MessageBus* bus, Rng* interleave) {
    MessageBus local;
    MessageBus& b = bus ? *bus : local;
    const IntersectionGraph graph = build_intersection_graph(world);
    const Environment env{world, graph};

    RecoveryInit result;
    result.states = make_node_states(world, graph);
    NodeStates& states = result.states;

    if (world.barrier) {
        Dispatcher dispatcher{b, states, env, nullptr};
        for (SensorId id : *world.barrier) {
            auto it = states.find(id);
            if (it == states.end()) continue;
            NodeState& p = it->second;
            const auto fillers = eligible_fillers(env, states, id);
            if (!fillers.empty()) {
                p.rec_node = fillers.front();
                p.path_length = env.dist(id, fillers.front());
                b.send(id, fillers.front(), SetRec{*p.pre, *p.suc});
                continue;
            }
            for (bool left : {true, false}) {
                const SensorId side = left ? *p.pre : *p.suc;
                if (is_boundary(side)) {
                    (left ? p.left_reply : p.right_reply) = kUnreachable;
                } else {
                    b.send(id, side, ReqNbRec{id});
                }
            }
            dispatcher.maybe_elect(p);
        }
    }

    const std::size_t start = b.rounds();
    while (!b.empty()) run_protocol_round(b, states, env, RoundOptions{interleave, nullptr});
    result.rounds = b.rounds() - start;

    if (world.barrier) {
        for (SensorId id : *world.barrier) {
            auto it = states.find(id);
            if (it != states.end() && !it->second.rec_node) result.unresolved.push_back(id);
        }
    }
    return result;
}

std::optional<Path> mldfs([[maybe_unused]] const NodeStates& states, const Environment& env, SensorId start,
                          SensorId dest, int k, MessageBus* bus) {
    if (start == dest || k < 1 || !env.graph.contains(start) || !env.graph.contains(dest)) return std::nullopt;
    MessageBus local;
    MessageBus& b = bus ? *bus : local;
    NodeStates scratch;  // the token handlers never touch Table-1 state

    TokenSearch search;
    search.initiator = start;
    search.dest = dest;
    search.father[start] = start;
    search.budget[start] = k;

    Dispatcher dispatcher{b, scratch, env, &search};
    dispatcher.advance(start);
    while (search.status == TokenSearch::Status::Running && !b.empty()) {
        run_protocol_round(b, scratch, env, RoundOptions{nullptr, &search});
    }
    if (search.status != TokenSearch::Status::Found) return std::nullopt;
    return Path(search.reverse_path.rbegin(), search.reverse_path.rend());
}

}  // namespace barrier
