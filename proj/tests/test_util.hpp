#ifndef FLOWREROUTE_TEST_UTIL_HPP
#define FLOWREROUTE_TEST_UTIL_HPP

#include <set>

#include "flowreroute/model.hpp"

namespace frtest {

using namespace flowreroute;

// The four-vertex single-flow example: old s->v1->v2->t, new s->v2->v1->t,
// all capacities and the demand 1. Cyclic (v1<->v2).
inline UpdateFlowNetwork fig2_network() {
    NetworkBuilder b;
    b.set_source("s");
    b.set_terminal("t");
    b.add_edge("s", "v1", 1);
    b.add_edge("v1", "v2", 1);
    b.add_edge("v2", "t", 1);
    b.add_edge("s", "v2", 1);
    b.add_edge("v2", "v1", 1);
    b.add_edge("v1", "t", 1);
    b.add_pair(1, 1, {"s", "v1", "v2", "t"}, {"s", "v2", "v1", "t"});
    return b.build();
}

// Two unit pairs whose old paths are disjoint but whose new paths both cross
// the capacity-1 edge (m1,m2).
inline UpdateFlowNetwork crossing_network() {
    NetworkBuilder b;
    b.set_source("s");
    b.set_terminal("t");
    b.add_edge("s", "a", 2);
    b.add_edge("a", "t", 2);
    b.add_edge("s", "b", 2);
    b.add_edge("b", "t", 2);
    b.add_edge("s", "m1", 2);
    b.add_edge("m1", "m2", 1);
    b.add_edge("m2", "t", 2);
    b.add_pair(1, 1, {"s", "a", "t"}, {"s", "m1", "m2", "t"});
    b.add_pair(2, 1, {"s", "b", "t"}, {"s", "m1", "m2", "t"});
    return b.build();
}

// Two pairs that trade a pair of rail edges: pair 1 reroutes from rail
// (c,d) to rail (e,f), pair 2 the other way around. With both rails at
// capacity 1 the reroute deadlocks; widening (e,f) to 2 admits exactly the
// order pair-1-first.
inline UpdateFlowNetwork swap_gadget(int64_t cap_e1, int64_t cap_e2) {
    NetworkBuilder b;
    b.set_source("s");
    b.set_terminal("t");
    b.add_edge("s", "x1", 2);
    b.add_edge("s", "x2", 2);
    b.add_edge("y1", "t", 2);
    b.add_edge("y2", "t", 2);
    b.add_edge("c", "d", cap_e1);
    b.add_edge("e", "f", cap_e2);
    b.add_edge("x1", "c", 2);
    b.add_edge("d", "y1", 2);
    b.add_edge("x1", "e", 2);
    b.add_edge("f", "y1", 2);
    b.add_edge("x2", "e", 2);
    b.add_edge("f", "y2", 2);
    b.add_edge("x2", "c", 2);
    b.add_edge("d", "y2", 2);
    b.add_pair(1, 1, {"s", "x1", "c", "d", "y1", "t"}, {"s", "x1", "e", "f", "y1", "t"});
    b.add_pair(2, 1, {"s", "x2", "e", "f", "y2", "t"}, {"s", "x2", "c", "d", "y2", "t"});
    return b.build();
}

inline Update up(const UpdateFlowNetwork& net, const std::string& vertex, int pair_id) {
    int pair = -1;
    for (size_t i = 0; i < net.pair_count(); ++i)
        if (net.pairs[i].id == pair_id) pair = static_cast<int>(i);
    return Update{net.vertex(vertex), pair};
}

inline std::vector<std::string> path_names(const UpdateFlowNetwork& net,
                                           const std::vector<VertexId>& path) {
    std::vector<std::string> out;
    for (VertexId v : path) out.push_back(net.name(v));
    return out;
}

// Independent derivation of the per-pair active edge set, used to
// cross-check the walk-based operations: an edge is active for a pair iff
// it is on both paths, or on exactly one path and toggled accordingly.
inline std::set<EdgeId> active_edges(const NetworkState& state, int pair) {
    const UpdateFlowNetwork& net = state.network();
    const FlowPair& p = net.pairs[static_cast<size_t>(pair)];
    std::set<EdgeId> shared(p.old_edges.begin(), p.old_edges.end());
    std::set<EdgeId> out;
    for (EdgeId e : p.new_edges) {
        VertexId tail = net.edges[static_cast<size_t>(e)].tail;
        if (shared.count(e) || state.is_resolved(Update{tail, pair})) out.insert(e);
    }
    for (EdgeId e : p.old_edges) {
        VertexId tail = net.edges[static_cast<size_t>(e)].tail;
        bool on_new = std::find(p.new_edges.begin(), p.new_edges.end(), e) != p.new_edges.end();
        if (on_new || !state.is_resolved(Update{tail, pair})) out.insert(e);
    }
    return out;
}

}  // namespace frtest

#endif
