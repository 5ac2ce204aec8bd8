#ifndef FLOWREROUTE_MODEL_HPP
#define FLOWREROUTE_MODEL_HPP

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

// Core data model: capacitated digraph with k update flow pairs, per-pair
// active-edge state derived from a set of resolved updates, transient path
// extraction, and the consistency checks used by the verifier.

namespace flowreroute {

using VertexId = int32_t;
using EdgeId = int32_t;

inline constexpr EdgeId kNoEdge = -1;

struct Edge {
    VertexId tail = -1;
    VertexId head = -1;
    int64_t capacity = 0;
};

// One commodity: demand plus its current (old) and target (new) s-t path.
// Derived per-vertex out-edge tables are filled in by finalize().
struct FlowPair {
    int id = 0;  // external 1-based id
    int64_t demand = 0;
    std::vector<VertexId> old_path;
    std::vector<VertexId> new_path;

    // derived, sized |V|; kNoEdge where the path has no outgoing edge
    std::vector<EdgeId> old_out;
    std::vector<EdgeId> new_out;
    std::vector<EdgeId> old_edges;
    std::vector<EdgeId> new_edges;
};

struct Update {
    VertexId vertex = -1;
    int pair = -1;  // 0-based index into UpdateFlowNetwork::pairs

    friend bool operator==(const Update& a, const Update& b) {
        return a.vertex == b.vertex && a.pair == b.pair;
    }
    friend bool operator<(const Update& a, const Update& b) {
        if (a.pair != b.pair) return a.pair < b.pair;
        return a.vertex < b.vertex;
    }
};

// Rounds are sets of simultaneous updates; singleton rounds recover plain
// update sequences.
struct Schedule {
    std::vector<std::vector<Update>> rounds;
};

struct UpdateFlowNetwork {
    std::vector<std::string> names;
    std::unordered_map<std::string, VertexId> name_index;
    VertexId source = -1;
    VertexId terminal = -1;
    std::vector<Edge> edges;
    std::map<std::pair<VertexId, VertexId>, EdgeId> edge_index;
    std::vector<FlowPair> pairs;

    // problems detected while building (duplicate edges, missing path edges);
    // reported by validate_network rather than thrown
    std::vector<std::string> defects;

    size_t vertex_count() const { return names.size(); }
    size_t pair_count() const { return pairs.size(); }

    const std::string& name(VertexId v) const { return names[static_cast<size_t>(v)]; }

    VertexId vertex(const std::string& name) const {
        auto it = name_index.find(name);
        return it == name_index.end() ? -1 : it->second;
    }

    EdgeId find_edge(VertexId tail, VertexId head) const {
        auto it = edge_index.find({tail, head});
        return it == edge_index.end() ? kNoEdge : it->second;
    }

    bool is_shared(int pair, EdgeId e) const {
        const FlowPair& p = pairs[static_cast<size_t>(pair)];
        VertexId tail = edges[static_cast<size_t>(e)].tail;
        return p.old_out[static_cast<size_t>(tail)] == e && p.new_out[static_cast<size_t>(tail)] == e;
    }
};

// Incrementally assembles a network; all semantic checks are deferred to
// validate_network so that malformed instances can be reported in full.
class NetworkBuilder {
  public:
    VertexId add_vertex(const std::string& name) {
        auto it = net_.name_index.find(name);
        if (it != net_.name_index.end()) return it->second;
        VertexId id = static_cast<VertexId>(net_.names.size());
        net_.names.push_back(name);
        net_.name_index.emplace(name, id);
        return id;
    }

    void add_edge(const std::string& from, const std::string& to, int64_t capacity) {
        VertexId u = add_vertex(from);
        VertexId v = add_vertex(to);
        if (net_.edge_index.count({u, v})) {
            net_.defects.push_back("duplicate edge (" + from + "," + to + ")");
            return;
        }
        EdgeId id = static_cast<EdgeId>(net_.edges.size());
        net_.edges.push_back(Edge{u, v, capacity});
        net_.edge_index.emplace(std::make_pair(u, v), id);
    }

    void set_source(const std::string& name) { net_.source = add_vertex(name); }
    void set_terminal(const std::string& name) { net_.terminal = add_vertex(name); }

    void add_pair(int id, int64_t demand, const std::vector<std::string>& old_path,
                  const std::vector<std::string>& new_path) {
        FlowPair p;
        p.id = id;
        p.demand = demand;
        for (const auto& n : old_path) p.old_path.push_back(add_vertex(n));
        for (const auto& n : new_path) p.new_path.push_back(add_vertex(n));
        net_.pairs.push_back(std::move(p));
    }

    UpdateFlowNetwork build() {
        finalize(net_);
        return std::move(net_);
    }

    static void finalize(UpdateFlowNetwork& net) {
        size_t nv = net.names.size();
        for (auto& p : net.pairs) {
            p.old_out.assign(nv, kNoEdge);
            p.new_out.assign(nv, kNoEdge);
            p.old_edges.clear();
            p.new_edges.clear();
            fill_path(net, p.old_path, p.old_out, p.old_edges, "old", p.id);
            fill_path(net, p.new_path, p.new_out, p.new_edges, "new", p.id);
        }
    }

  private:
    static void fill_path(UpdateFlowNetwork& net, const std::vector<VertexId>& path,
                          std::vector<EdgeId>& out, std::vector<EdgeId>& edges,
                          const char* which, int pair_id) {
        for (size_t i = 0; i + 1 < path.size(); ++i) {
            EdgeId e = net.find_edge(path[i], path[i + 1]);
            if (e == kNoEdge) {
                net.defects.push_back("pair " + std::to_string(pair_id) + ": " + which +
                                      " path edge (" + net.name(path[i]) + "," +
                                      net.name(path[i + 1]) + ") not in edge set");
                continue;
            }
            out[static_cast<size_t>(path[i])] = e;
            edges.push_back(e);
        }
    }

    UpdateFlowNetwork net_;
};

// --- violations ---------------------------------------------------------

enum class FailReason { dead_end, loop };

struct TransientResult {
    bool ok = false;
    std::vector<VertexId> path;   // s..t when ok
    FailReason reason = FailReason::dead_end;
    VertexId at = -1;             // dead-end vertex
    std::vector<VertexId> cycle;  // loop witness
};

struct Violation {
    enum class Kind {
        malformed_instance,
        capacity_exceeded,
        no_transient_flow,
        duplicate_update,
        incomplete_schedule,
    };
    Kind kind = Kind::malformed_instance;
    std::string detail;
    int pair_id = -1;       // external id, when applicable
    EdgeId edge = kNoEdge;
    int64_t load = 0;
    int64_t capacity = 0;
    int round = -1;         // 1-based round where detected, -1 if n/a
};

inline std::string violation_to_string(const UpdateFlowNetwork& net, const Violation& v) {
    using Kind = Violation::Kind;
    std::string s;
    switch (v.kind) {
        case Kind::malformed_instance: s = "malformed instance: " + v.detail; break;
        case Kind::capacity_exceeded: {
            const Edge& e = net.edges[static_cast<size_t>(v.edge)];
            s = "capacity exceeded on (" + net.name(e.tail) + "," + net.name(e.head) + "): load " +
                std::to_string(v.load) + " > " + std::to_string(v.capacity);
            break;
        }
        case Kind::no_transient_flow:
            s = "pair " + std::to_string(v.pair_id) + " has no transient flow (" + v.detail + ")";
            break;
        case Kind::duplicate_update: s = "duplicate update: " + v.detail; break;
        case Kind::incomplete_schedule: s = "incomplete schedule: " + v.detail; break;
    }
    if (v.round >= 0) s += " [round " + std::to_string(v.round) + "]";
    return s;
}

// --- validation ----------------------------------------------------------

namespace detail {

inline bool path_is_simple(const std::vector<VertexId>& path) {
    std::vector<VertexId> sorted(path);
    std::sort(sorted.begin(), sorted.end());
    return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

}  // namespace detail

// Checks every instance invariant and reports all failures.
inline std::vector<Violation> validate_network(const UpdateFlowNetwork& net) {
    std::vector<Violation> out;
    auto bad = [&](const std::string& detail) {
        out.push_back(Violation{Violation::Kind::malformed_instance, detail});
    };

    for (const auto& d : net.defects) bad(d);
    if (net.source < 0) bad("missing source");
    if (net.terminal < 0) bad("missing terminal");
    if (net.source >= 0 && net.source == net.terminal) bad("source equals terminal");
    for (size_t i = 0; i < net.edges.size(); ++i) {
        const Edge& e = net.edges[i];
        if (e.capacity < 1)
            bad("edge (" + net.name(e.tail) + "," + net.name(e.head) + ") has capacity " +
                std::to_string(e.capacity));
        if (e.tail == e.head) bad("self-loop at " + net.name(e.tail));
    }

    for (size_t i = 0; i < net.pairs.size(); ++i) {
        const FlowPair& p = net.pairs[i];
        std::string tag = "pair " + std::to_string(p.id);
        if (p.id != static_cast<int>(i) + 1) bad(tag + ": ids must be 1..k in order");
        if (p.demand < 1) bad(tag + ": demand " + std::to_string(p.demand));
        for (const auto* path : {&p.old_path, &p.new_path}) {
            const char* which = path == &p.old_path ? "old" : "new";
            if (path->size() < 2 || path->front() != net.source || path->back() != net.terminal) {
                bad(tag + ": " + which + " path must run from source to terminal");
                continue;
            }
            if (!detail::path_is_simple(*path)) bad(tag + ": " + which + " path is not simple");
        }
    }

    // every edge must be used by some path (E is the union of pair path edges)
    std::vector<char> used(net.edges.size(), 0);
    for (const auto& p : net.pairs) {
        for (EdgeId e : p.old_edges) used[static_cast<size_t>(e)] = 1;
        for (EdgeId e : p.new_edges) used[static_cast<size_t>(e)] = 1;
    }
    for (size_t i = 0; i < net.edges.size(); ++i) {
        if (!used[i])
            bad("edge (" + net.name(net.edges[i].tail) + "," + net.name(net.edges[i].head) +
                ") is not on any pair path");
    }

    // old family and new family must each respect capacities
    for (int side = 0; side < 2; ++side) {
        std::vector<int64_t> load(net.edges.size(), 0);
        for (const auto& p : net.pairs)
            for (EdgeId e : (side == 0 ? p.old_edges : p.new_edges))
                load[static_cast<size_t>(e)] += p.demand;
        for (size_t e = 0; e < net.edges.size(); ++e) {
            if (load[e] > net.edges[e].capacity) {
                Violation v;
                v.kind = Violation::Kind::capacity_exceeded;
                v.edge = static_cast<EdgeId>(e);
                v.load = load[e];
                v.capacity = net.edges[e].capacity;
                v.detail = side == 0 ? "old family" : "new family";
                out.push_back(v);
            }
        }
    }
    return out;
}

// --- state and transient flows -------------------------------------------

// Immutable-by-convention view of which updates are resolved. Active edge
// sets are a pure function of the resolved set: at vertex v, pair p routes
// old_out(v) until (v,p) is resolved and new_out(v) afterwards; edges on
// both paths are never toggled.
class NetworkState {
  public:
    explicit NetworkState(const UpdateFlowNetwork& net)
        : net_(&net), resolved_(net.pair_count() * net.vertex_count(), 0) {}

    const UpdateFlowNetwork& network() const { return *net_; }

    bool is_resolved(const Update& u) const { return resolved_[bit(u)] != 0; }

    void resolve_in_place(const Update& u) {
        assert(!is_resolved(u));
        resolved_[bit(u)] = 1;
    }

    void unresolve_in_place(const Update& u) {
        assert(is_resolved(u));
        resolved_[bit(u)] = 0;
    }

    NetworkState resolve(const Update& u) const {
        NetworkState next(*this);
        next.resolve_in_place(u);
        return next;
    }

    EdgeId active_out(int pair, VertexId v) const {
        const FlowPair& p = net_->pairs[static_cast<size_t>(pair)];
        return resolved_[bit(Update{v, pair})] ? p.new_out[static_cast<size_t>(v)]
                                               : p.old_out[static_cast<size_t>(v)];
    }

    size_t resolved_count() const {
        size_t n = 0;
        for (uint8_t b : resolved_) n += b;
        return n;
    }

  private:
    size_t bit(const Update& u) const {
        return static_cast<size_t>(u.pair) * net_->vertex_count() + static_cast<size_t>(u.vertex);
    }

    const UpdateFlowNetwork* net_;
    std::vector<uint8_t> resolved_;
};

inline NetworkState initial_state(const UpdateFlowNetwork& net) { return NetworkState(net); }

// Walks the unique active outgoing edge per vertex from s. Uniqueness is
// structural: per pair a vertex has at most one active outgoing edge.
inline TransientResult transient_path(const NetworkState& state, int pair) {
    const UpdateFlowNetwork& net = state.network();
    TransientResult r;
    std::vector<char> seen(net.vertex_count(), 0);
    VertexId v = net.source;
    while (true) {
        if (seen[static_cast<size_t>(v)]) {
            r.ok = false;
            r.reason = FailReason::loop;
            auto it = std::find(r.path.begin(), r.path.end(), v);
            r.cycle.assign(it, r.path.end());
            return r;
        }
        seen[static_cast<size_t>(v)] = 1;
        r.path.push_back(v);
        if (v == net.terminal) {
            r.ok = true;
            return r;
        }
        EdgeId e = state.active_out(pair, v);
        if (e == kNoEdge) {
            r.ok = false;
            r.reason = FailReason::dead_end;
            r.at = v;
            return r;
        }
        v = net.edges[static_cast<size_t>(e)].head;
    }
}

// Consistency Rule: every pair has a transient flow and summed demands of
// the transient paths respect every capacity. Reports all failures.
inline std::vector<Violation> check_consistency(const NetworkState& state) {
    const UpdateFlowNetwork& net = state.network();
    std::vector<Violation> out;
    std::vector<int64_t> load(net.edges.size(), 0);
    for (size_t i = 0; i < net.pair_count(); ++i) {
        TransientResult t = transient_path(state, static_cast<int>(i));
        if (!t.ok) {
            Violation v;
            v.kind = Violation::Kind::no_transient_flow;
            v.pair_id = net.pairs[i].id;
            if (t.reason == FailReason::dead_end) {
                v.detail = "dead end at " + net.name(t.at);
            } else {
                v.detail = "loop through";
                for (VertexId c : t.cycle) v.detail += " " + net.name(c);
            }
            out.push_back(v);
            continue;
        }
        for (size_t j = 0; j + 1 < t.path.size(); ++j) {
            EdgeId e = state.active_out(static_cast<int>(i), t.path[j]);
            load[static_cast<size_t>(e)] += net.pairs[i].demand;
        }
    }
    for (size_t e = 0; e < net.edges.size(); ++e) {
        if (load[e] > net.edges[e].capacity) {
            Violation v;
            v.kind = Violation::Kind::capacity_exceeded;
            v.edge = static_cast<EdgeId>(e);
            v.load = load[e];
            v.capacity = net.edges[e].capacity;
            out.push_back(v);
        }
    }
    return out;
}

// --- updates -------------------------------------------------------------

// An update is effective iff it toggles an edge: the vertex has a non-shared
// outgoing old edge or a non-shared outgoing new edge for the pair.
inline bool is_effective(const UpdateFlowNetwork& net, const Update& u) {
    const FlowPair& p = net.pairs[static_cast<size_t>(u.pair)];
    return p.old_out[static_cast<size_t>(u.vertex)] != p.new_out[static_cast<size_t>(u.vertex)];
}

inline bool on_pair_paths(const UpdateFlowNetwork& net, const Update& u) {
    const FlowPair& p = net.pairs[static_cast<size_t>(u.pair)];
    auto contains = [&](const std::vector<VertexId>& path) {
        return std::find(path.begin(), path.end(), u.vertex) != path.end();
    };
    return contains(p.old_path) || contains(p.new_path);
}

// All effective updates, sorted by (pair, vertex) for determinism.
inline std::vector<Update> effective_updates(const UpdateFlowNetwork& net) {
    std::vector<Update> out;
    for (size_t i = 0; i < net.pair_count(); ++i) {
        for (VertexId v = 0; v < static_cast<VertexId>(net.vertex_count()); ++v) {
            Update u{v, static_cast<int>(i)};
            if (is_effective(net, u)) out.push_back(u);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// --- schedule verification -------------------------------------------------

// Applies rounds in order and checks the Consistency Rule after each one;
// afterwards every effective update must have been resolved (no-op updates
// may be omitted). Returns all violations of the first failing round, or an
// empty vector when the schedule is accepted.
inline std::vector<Violation> verify_schedule(const UpdateFlowNetwork& net, const Schedule& sched) {
    NetworkState state(net);
    std::vector<char> seen(net.pair_count() * net.vertex_count(), 0);
    for (size_t r = 0; r < sched.rounds.size(); ++r) {
        int round = static_cast<int>(r) + 1;
        const auto& updates = sched.rounds[r];
        if (updates.empty()) {
            Violation v;
            v.kind = Violation::Kind::malformed_instance;
            v.detail = "empty round";
            v.round = round;
            return {v};
        }
        for (const Update& u : updates) {
            if (u.pair < 0 || u.pair >= static_cast<int>(net.pair_count()) || u.vertex < 0 ||
                u.vertex >= static_cast<VertexId>(net.vertex_count()) || !on_pair_paths(net, u)) {
                Violation v;
                v.kind = Violation::Kind::malformed_instance;
                v.detail = "update references a vertex not on the pair's paths";
                v.round = round;
                return {v};
            }
            size_t key = static_cast<size_t>(u.pair) * net.vertex_count() + static_cast<size_t>(u.vertex);
            if (seen[key]) {
                Violation v;
                v.kind = Violation::Kind::duplicate_update;
                v.detail = "(" + net.name(u.vertex) + ", pair " +
                           std::to_string(net.pairs[static_cast<size_t>(u.pair)].id) + ")";
                v.round = round;
                return {v};
            }
            seen[key] = 1;
            state.resolve_in_place(u);
        }
        std::vector<Violation> bad = check_consistency(state);
        if (!bad.empty()) {
            for (auto& v : bad) v.round = round;
            return bad;
        }
    }
    for (const Update& u : effective_updates(net)) {
        if (!state.is_resolved(u)) {
            Violation v;
            v.kind = Violation::Kind::incomplete_schedule;
            v.detail = "effective update (" + net.name(u.vertex) + ", pair " +
                       std::to_string(net.pairs[static_cast<size_t>(u.pair)].id) + ") never resolved";
            return {v};
        }
    }
    return {};
}

// Splits every round into singleton rounds, preserving the relative order.
inline Schedule refine_to_singletons(const Schedule& sched) {
    Schedule out;
    for (const auto& round : sched.rounds)
        for (const Update& u : round) out.rounds.push_back({u});
    return out;
}

}  // namespace flowreroute

#endif
