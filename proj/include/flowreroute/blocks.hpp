#ifndef FLOWREROUTE_BLOCKS_HPP
#define FLOWREROUTE_BLOCKS_HPP

#include <queue>
#include <variant>

#include "flowreroute/model.hpp"

// DAG machinery: topological order, decomposition of each pair into blocks
// (maximal divergent segments between consecutive vertices common to both
// paths), the total block order, the touch relation, and the block-atomic
// congestion check used when enumerating labels.

namespace flowreroute {

struct TopoOrder {
    std::vector<int32_t> rank;      // vertex -> 1..|V|
    std::vector<VertexId> order;    // rank-1 -> vertex
};

struct CycleError {
    std::vector<VertexId> cycle;
};

// Kahn's algorithm; ties broken by lexicographic vertex name so the order is
// reproducible across runs. On failure returns a witness cycle.
inline std::variant<TopoOrder, CycleError> topological_order(const UpdateFlowNetwork& net) {
    size_t nv = net.vertex_count();
    std::vector<int32_t> indeg(nv, 0);
    std::vector<std::vector<VertexId>> succ(nv);
    for (const Edge& e : net.edges) {
        ++indeg[static_cast<size_t>(e.head)];
        succ[static_cast<size_t>(e.tail)].push_back(e.head);
    }
    auto name_greater = [&](VertexId a, VertexId b) { return net.name(a) > net.name(b); };
    std::priority_queue<VertexId, std::vector<VertexId>, decltype(name_greater)> ready(name_greater);
    for (size_t v = 0; v < nv; ++v)
        if (indeg[v] == 0) ready.push(static_cast<VertexId>(v));

    TopoOrder topo;
    topo.rank.assign(nv, 0);
    while (!ready.empty()) {
        VertexId v = ready.top();
        ready.pop();
        topo.order.push_back(v);
        topo.rank[static_cast<size_t>(v)] = static_cast<int32_t>(topo.order.size());
        for (VertexId w : succ[static_cast<size_t>(v)])
            if (--indeg[static_cast<size_t>(w)] == 0) ready.push(w);
    }
    if (topo.order.size() == nv) return topo;

    // walk predecessors among the leftover vertices until one repeats
    std::vector<std::vector<VertexId>> pred(nv);
    for (const Edge& e : net.edges)
        if (topo.rank[static_cast<size_t>(e.tail)] == 0 && topo.rank[static_cast<size_t>(e.head)] == 0)
            pred[static_cast<size_t>(e.head)].push_back(e.tail);
    VertexId v = -1;
    for (size_t i = 0; i < nv; ++i)
        if (topo.rank[i] == 0) v = static_cast<VertexId>(i);
    std::vector<VertexId> trail;
    std::vector<int32_t> pos(nv, -1);
    while (pos[static_cast<size_t>(v)] < 0) {
        pos[static_cast<size_t>(v)] = static_cast<int32_t>(trail.size());
        trail.push_back(v);
        v = pred[static_cast<size_t>(v)].front();
    }
    CycleError err;
    err.cycle.assign(trail.begin() + pos[static_cast<size_t>(v)], trail.end());
    std::reverse(err.cycle.begin(), err.cycle.end());
    return err;
}

struct Block {
    int pair = -1;          // 0-based pair index
    int index = -1;         // block number within the pair, 0-based
    VertexId start = -1;
    VertexId end = -1;
    int64_t demand = 0;
    std::vector<EdgeId> old_seg;      // old-path edges from start to end
    std::vector<EdgeId> new_seg;      // new-path edges from start to end
    std::vector<int32_t> vertex_ranks;  // ranks of all block vertices, sorted
};

struct BlockSet {
    std::vector<Block> blocks;               // sorted ascending by compare_blocks
    std::vector<std::vector<int>> by_pair;   // pair -> indices into blocks, ascending
};

// Three-level rule: start vertex by topological rank, then end vertex, then
// pair index. A strict total order on distinct blocks.
inline bool compare_blocks(const Block& a, const Block& b, const TopoOrder& topo) {
    int32_t sa = topo.rank[static_cast<size_t>(a.start)], sb = topo.rank[static_cast<size_t>(b.start)];
    if (sa != sb) return sa < sb;
    int32_t ea = topo.rank[static_cast<size_t>(a.end)], eb = topo.rank[static_cast<size_t>(b.end)];
    if (ea != eb) return ea < eb;
    return a.pair < b.pair;
}

// One block has a vertex strictly inside the other's span (symmetric). Every
// block with an interior vertex touches itself.
inline bool touches(const Block& a, const Block& b, const TopoOrder& topo) {
    auto inside = [&](const Block& x, const Block& y) {
        int32_t lo = topo.rank[static_cast<size_t>(y.start)];
        int32_t hi = topo.rank[static_cast<size_t>(y.end)];
        auto it = std::upper_bound(x.vertex_ranks.begin(), x.vertex_ranks.end(), lo);
        return it != x.vertex_ranks.end() && *it < hi;
    };
    return inside(a, b) || inside(b, a);
}

// For each pair: common vertices of the two paths, sorted topologically,
// delimit the spans; spans where the paths diverge become blocks, spans where
// they coincide (a single shared edge) yield none.
inline BlockSet decompose_blocks(const UpdateFlowNetwork& net, const TopoOrder& topo) {
    BlockSet bs;
    bs.by_pair.resize(net.pair_count());
    for (size_t pi = 0; pi < net.pair_count(); ++pi) {
        const FlowPair& p = net.pairs[pi];
        std::vector<char> on_old(net.vertex_count(), 0);
        for (VertexId v : p.old_path) on_old[static_cast<size_t>(v)] = 1;
        std::vector<VertexId> common;
        for (VertexId v : p.new_path)
            if (on_old[static_cast<size_t>(v)]) common.push_back(v);
        std::sort(common.begin(), common.end(), [&](VertexId a, VertexId b) {
            return topo.rank[static_cast<size_t>(a)] < topo.rank[static_cast<size_t>(b)];
        });
        assert(!common.empty() && common.front() == net.source && common.back() == net.terminal);

        // position of each common vertex along both paths
        std::vector<int32_t> pos_old(net.vertex_count(), -1), pos_new(net.vertex_count(), -1);
        for (size_t i = 0; i < p.old_path.size(); ++i) pos_old[static_cast<size_t>(p.old_path[i])] = static_cast<int32_t>(i);
        for (size_t i = 0; i < p.new_path.size(); ++i) pos_new[static_cast<size_t>(p.new_path[i])] = static_cast<int32_t>(i);

        int next_index = 0;
        for (size_t c = 0; c + 1 < common.size(); ++c) {
            VertexId z0 = common[c], z1 = common[c + 1];
            int32_t o0 = pos_old[static_cast<size_t>(z0)], o1 = pos_old[static_cast<size_t>(z1)];
            int32_t n0 = pos_new[static_cast<size_t>(z0)], n1 = pos_new[static_cast<size_t>(z1)];
            assert(o0 < o1 && n0 < n1);
            if (o1 == o0 + 1 && n1 == n0 + 1 &&
                p.old_out[static_cast<size_t>(z0)] == p.new_out[static_cast<size_t>(z0)]) {
                continue;  // shared edge, never toggled
            }
            Block b;
            b.pair = static_cast<int>(pi);
            b.index = next_index++;
            b.start = z0;
            b.end = z1;
            b.demand = p.demand;
            for (int32_t i = o0; i < o1; ++i)
                b.old_seg.push_back(p.old_out[static_cast<size_t>(p.old_path[static_cast<size_t>(i)])]);
            for (int32_t i = n0; i < n1; ++i)
                b.new_seg.push_back(p.new_out[static_cast<size_t>(p.new_path[static_cast<size_t>(i)])]);
            for (int32_t i = o0; i <= o1; ++i)
                b.vertex_ranks.push_back(topo.rank[static_cast<size_t>(p.old_path[static_cast<size_t>(i)])]);
            for (int32_t i = n0 + 1; i <= n1 - 1; ++i)
                b.vertex_ranks.push_back(topo.rank[static_cast<size_t>(p.new_path[static_cast<size_t>(i)])]);
            std::sort(b.vertex_ranks.begin(), b.vertex_ranks.end());
            assert(b.vertex_ranks.size() >= 3);
            bs.blocks.push_back(std::move(b));
        }
    }
    std::sort(bs.blocks.begin(), bs.blocks.end(),
              [&](const Block& a, const Block& b) { return compare_blocks(a, b, topo); });
    for (size_t i = 0; i < bs.blocks.size(); ++i)
        bs.by_pair[static_cast<size_t>(bs.blocks[i].pair)].push_back(static_cast<int>(i));
    return bs;
}

// Edge loads while simulating block-atomic updates of one permutation.
struct LoadState {
    std::vector<int64_t> load;      // per edge
    std::vector<char> updated;      // per block id used by the caller

    explicit LoadState(const UpdateFlowNetwork& net) : load(net.edges.size(), 0) {}
};

// Atomically moves the block's demand from its old segment to its new
// segment; fails (state unchanged) if a new-segment edge would exceed
// capacity together with the loads already present.
inline std::optional<EdgeId> apply_block_update(LoadState& ls, const Block& b,
                                                const UpdateFlowNetwork& net) {
    for (EdgeId e : b.new_seg)
        if (ls.load[static_cast<size_t>(e)] + b.demand > net.edges[static_cast<size_t>(e)].capacity)
            return e;
    for (EdgeId e : b.old_seg) ls.load[static_cast<size_t>(e)] -= b.demand;
    for (EdgeId e : b.new_seg) ls.load[static_cast<size_t>(e)] += b.demand;
    return std::nullopt;
}

// A permutation (update order, first element updated first) of blocks is
// congestion free when the simulated sequence of block updates never
// overloads an edge. Loads are tracked over the participating blocks only;
// final schedules are re-verified against the full Consistency Rule.
inline bool is_congestion_free(const std::vector<const Block*>& perm, const UpdateFlowNetwork& net) {
    LoadState ls(net);
    for (const Block* b : perm)
        for (EdgeId e : b->old_seg) ls.load[static_cast<size_t>(e)] += b->demand;
    for (const Block* b : perm)
        if (apply_block_update(ls, *b, net)) return false;
    return true;
}

}  // namespace flowreroute

#endif
