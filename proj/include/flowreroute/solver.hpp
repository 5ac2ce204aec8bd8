#ifndef FLOWREROUTE_SOLVER_HPP
#define FLOWREROUTE_SOLVER_HPP

#include "flowreroute/blocks.hpp"

// The FPT pipeline: per-block touch lists, enumeration of congestion-free
// labels, the trimmed auxiliary graph (inconsistency edges between
// consecutive groups only), a left-to-right dynamic program for an
// independent set with one label per group, and schedule extraction along
// the precedence digraph of the chosen labels.

namespace flowreroute {

// Label = congestion-free permutation of the blocks touching the group's
// block, in update order (first element updated first).
struct RhGroup {
    int block = -1;                        // index into BlockSet::blocks
    std::vector<std::vector<int>> labels;  // each a permutation of block indices
};

struct RhGraph {
    std::vector<RhGroup> groups;  // ascending block order, one group per block
    // incompat[g][a][b]: label a of group g is inconsistent with label b of
    // group g+1. No edges exist between groups farther apart.
    std::vector<std::vector<std::vector<char>>> incompat;

    size_t label_count() const {
        size_t n = 0;
        for (const auto& g : groups) n += g.labels.size();
        return n;
    }
};

// True iff the blocks common to both permutations appear in the same
// relative order.
inline bool labels_consistent(const std::vector<int>& p1, const std::vector<int>& p2) {
    std::vector<std::pair<int, int>> pos2;
    for (size_t i = 0; i < p2.size(); ++i) pos2.push_back({p2[i], static_cast<int>(i)});
    std::sort(pos2.begin(), pos2.end());
    int last = -1;
    for (int b : p1) {
        auto it = std::lower_bound(pos2.begin(), pos2.end(), std::make_pair(b, -1));
        if (it == pos2.end() || it->first != b) continue;
        if (it->second < last) return false;
        last = it->second;
    }
    return true;
}

// Blocks of `remaining_limit`-bounded prefix that touch b (b itself
// included). Elimination goes largest-first, so the remaining set is always
// a prefix of the ascending block order.
inline std::vector<int> touch_list(int bi, int remaining_limit, const BlockSet& bs,
                                   const TopoOrder& topo) {
    const Block& b = bs.blocks[static_cast<size_t>(bi)];
    std::vector<int> tb;
    for (const auto& pair_blocks : bs.by_pair) {
        for (int j : pair_blocks) {
            if (j > remaining_limit) break;
            const Block& other = bs.blocks[static_cast<size_t>(j)];
            int32_t os = topo.rank[static_cast<size_t>(other.start)];
            if (os >= topo.rank[static_cast<size_t>(b.end)]) break;
            if (topo.rank[static_cast<size_t>(other.end)] <= topo.rank[static_cast<size_t>(b.start)])
                continue;
            if (j == bi || touches(b, other, topo)) tb.push_back(j);
        }
    }
    std::sort(tb.begin(), tb.end());
    return tb;
}

// All congestion-free permutations of tb, enumerated lexicographically in
// block order.
inline std::vector<std::vector<int>> congestion_free_labels(const std::vector<int>& tb,
                                                            const BlockSet& bs,
                                                            const UpdateFlowNetwork& net) {
    std::vector<int> perm(tb);
    std::sort(perm.begin(), perm.end());
    std::vector<std::vector<int>> labels;
    do {
        std::vector<const Block*> blocks;
        for (int i : perm) blocks.push_back(&bs.blocks[static_cast<size_t>(i)]);
        if (is_congestion_free(blocks, net)) labels.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return labels;
}

struct BuildRhResult {
    bool feasible = true;
    int empty_block = -1;  // block whose label set came up empty
    RhGraph rh;
};

// Iterates blocks largest-to-smallest; the touch list is taken against the
// not-yet-eliminated blocks, and inconsistency edges go to the immediately
// previous group only.
inline BuildRhResult build_rh(const UpdateFlowNetwork& net, const TopoOrder& topo,
                              const BlockSet& bs) {
    size_t n = bs.blocks.size();
    BuildRhResult res;
    res.rh.groups.resize(n);
    if (n > 1) res.rh.incompat.resize(n - 1);
    for (size_t step = 0; step < n; ++step) {
        int bi = static_cast<int>(n - 1 - step);
        std::vector<int> tb = touch_list(bi, bi, bs, topo);
        if (tb.size() > net.pair_count())
            throw std::logic_error("touch list larger than k; block decomposition is broken");
        assert(std::find(tb.begin(), tb.end(), bi) != tb.end());
        RhGroup group;
        group.block = bi;
        group.labels = congestion_free_labels(tb, bs, net);
        if (group.labels.empty()) {
            res.feasible = false;
            res.empty_block = bi;
            return res;
        }
        res.rh.groups[static_cast<size_t>(bi)] = std::move(group);
        if (bi + 1 < static_cast<int>(n)) {
            const auto& cur = res.rh.groups[static_cast<size_t>(bi)].labels;
            const auto& next = res.rh.groups[static_cast<size_t>(bi) + 1].labels;
            auto& m = res.rh.incompat[static_cast<size_t>(bi)];
            m.assign(cur.size(), std::vector<char>(next.size(), 0));
            for (size_t a = 0; a < cur.size(); ++a)
                for (size_t b = 0; b < next.size(); ++b)
                    m[a][b] = !labels_consistent(cur[a], next[b]);
        }
    }
    return res;
}

// Left-to-right DP; f(i,v) extends the first extendable predecessor, making
// the output deterministic. Returns one label index per group, or nullopt.
inline std::optional<std::vector<int>> find_independent_set(const RhGraph& rh,
                                                            size_t* dp_states = nullptr) {
    size_t n = rh.groups.size();
    if (n == 0) return std::vector<int>{};
    std::vector<std::vector<int>> parent(n);
    size_t states = 0;
    for (size_t g = 0; g < n; ++g) {
        parent[g].assign(rh.groups[g].labels.size(), -2);  // -2 = unreachable
        for (size_t v = 0; v < rh.groups[g].labels.size(); ++v) {
            ++states;
            if (g == 0) {
                parent[g][v] = -1;
                continue;
            }
            for (size_t u = 0; u < rh.groups[g - 1].labels.size(); ++u) {
                if (parent[g - 1][u] != -2 && !rh.incompat[g - 1][u][v]) {
                    parent[g][v] = static_cast<int>(u);
                    break;
                }
            }
        }
    }
    if (dp_states) *dp_states = states;
    for (size_t v = 0; v < rh.groups[n - 1].labels.size(); ++v) {
        if (parent[n - 1][v] == -2) continue;
        std::vector<int> choice(n);
        int cur = static_cast<int>(v);
        for (size_t g = n; g-- > 0;) {
            choice[g] = cur;
            cur = parent[g][static_cast<size_t>(cur)];
        }
        return choice;
    }
    return std::nullopt;
}

struct PrecedenceDigraph {
    std::vector<std::vector<int>> succ;  // block -> later blocks
    std::vector<int> indeg;
    bool acyclic = true;
};

// Union of the labels as directed paths (earlier updated -> later updated),
// identifying blocks across labels. Acyclic for any consistent selection.
inline PrecedenceDigraph build_precedence(const std::vector<const std::vector<int>*>& labels,
                                          size_t num_blocks) {
    PrecedenceDigraph d;
    d.succ.resize(num_blocks);
    d.indeg.assign(num_blocks, 0);
    std::vector<std::vector<char>> have(num_blocks, std::vector<char>(num_blocks, 0));
    for (const auto* label : labels) {
        for (size_t i = 0; i + 1 < label->size(); ++i) {
            int a = (*label)[i], b = (*label)[i + 1];
            if (have[static_cast<size_t>(a)][static_cast<size_t>(b)]) continue;
            have[static_cast<size_t>(a)][static_cast<size_t>(b)] = 1;
            d.succ[static_cast<size_t>(a)].push_back(b);
            ++d.indeg[static_cast<size_t>(b)];
        }
    }
    // Kahn pass just to certify acyclicity
    std::vector<int> indeg(d.indeg);
    std::vector<int> stack;
    for (size_t i = 0; i < num_blocks; ++i)
        if (indeg[i] == 0) stack.push_back(static_cast<int>(i));
    size_t seen = 0;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        ++seen;
        for (int w : d.succ[static_cast<size_t>(v)])
            if (--indeg[static_cast<size_t>(w)] == 0) stack.push_back(w);
    }
    d.acyclic = seen == num_blocks;
    return d;
}

// Expands one parallel wave of precedence-minimal blocks into the three
// block-atomic rounds: activate the new interior edges, switch the starts,
// then retire the old interior edges. Only updates that toggle an edge of
// the wave's own blocks are emitted; boundary vertices belong to the
// neighbouring segment's rounds.
inline Schedule extract_schedule(const UpdateFlowNetwork& net, const BlockSet& bs,
                                 const PrecedenceDigraph& prec) {
    size_t n = bs.blocks.size();
    Schedule sched;
    std::vector<int> indeg(prec.indeg);
    std::vector<char> done(n, 0);
    size_t remaining = n;
    while (remaining > 0) {
        std::vector<int> wave;
        for (size_t i = 0; i < n; ++i)
            if (!done[i] && indeg[i] == 0) wave.push_back(static_cast<int>(i));
        assert(!wave.empty());
        std::vector<Update> round_a, round_b, round_c;
        for (int bi : wave) {
            const Block& b = bs.blocks[static_cast<size_t>(bi)];
            for (EdgeId e : b.new_seg) {
                VertexId tail = net.edges[static_cast<size_t>(e)].tail;
                if (tail != b.start) round_a.push_back(Update{tail, b.pair});
            }
            round_b.push_back(Update{b.start, b.pair});
            for (EdgeId e : b.old_seg) {
                VertexId tail = net.edges[static_cast<size_t>(e)].tail;
                if (tail != b.start) round_c.push_back(Update{tail, b.pair});
            }
        }
        for (auto* round : {&round_a, &round_b, &round_c}) {
            if (round->empty()) continue;
            std::sort(round->begin(), round->end());
            sched.rounds.push_back(std::move(*round));
        }
        for (int bi : wave) {
            done[static_cast<size_t>(bi)] = 1;
            --remaining;
            for (int w : prec.succ[static_cast<size_t>(bi)]) --indeg[static_cast<size_t>(w)];
        }
    }
    return sched;
}

struct SolveResult {
    enum class Kind { feasible, infeasible, not_a_dag, invalid, internal_error };
    Kind kind = Kind::internal_error;
    Schedule schedule;                  // feasible
    int infeasible_block = -1;          // block with empty label set, -1 = no independent set
    std::string detail;
    std::vector<VertexId> cycle;        // not_a_dag witness
    std::vector<Violation> violations;  // invalid / internal_error

    size_t num_blocks = 0;
    size_t labels_enumerated = 0;
    size_t dp_states = 0;
};

// Optional artifacts for debugging dumps and tests.
struct SolveArtifacts {
    TopoOrder topo;
    BlockSet blocks;
    RhGraph rh;
    std::vector<int> chosen;  // label index per group
    bool has_rh = false;
};

inline SolveResult solve(const UpdateFlowNetwork& net, SolveArtifacts* artifacts = nullptr) {
    SolveResult res;
    res.violations = validate_network(net);
    if (!res.violations.empty()) {
        res.kind = SolveResult::Kind::invalid;
        return res;
    }
    auto topo_or_cycle = topological_order(net);
    if (std::holds_alternative<CycleError>(topo_or_cycle)) {
        res.kind = SolveResult::Kind::not_a_dag;
        res.cycle = std::get<CycleError>(topo_or_cycle).cycle;
        return res;
    }
    const TopoOrder& topo = std::get<TopoOrder>(topo_or_cycle);
    BlockSet bs = decompose_blocks(net, topo);
    res.num_blocks = bs.blocks.size();

    BuildRhResult rh = build_rh(net, topo, bs);
    if (artifacts) {
        artifacts->topo = topo;
        artifacts->blocks = bs;
    }
    if (!rh.feasible) {
        res.kind = SolveResult::Kind::infeasible;
        res.infeasible_block = rh.empty_block;
        const Block& b = bs.blocks[static_cast<size_t>(rh.empty_block)];
        res.detail = "no congestion-free label for the block of pair " +
                     std::to_string(net.pairs[static_cast<size_t>(b.pair)].id) + " spanning (" +
                     net.name(b.start) + "," + net.name(b.end) + ")";
        return res;
    }
    res.labels_enumerated = rh.rh.label_count();
    auto choice = find_independent_set(rh.rh, &res.dp_states);
    if (artifacts) {
        artifacts->rh = rh.rh;
        artifacts->has_rh = true;
    }
    if (!choice) {
        res.kind = SolveResult::Kind::infeasible;
        res.detail = "no independent set with one label per block group";
        return res;
    }
    if (artifacts) artifacts->chosen = *choice;

    std::vector<const std::vector<int>*> labels;
    for (size_t g = 0; g < rh.rh.groups.size(); ++g)
        labels.push_back(&rh.rh.groups[g].labels[static_cast<size_t>((*choice)[g])]);
    PrecedenceDigraph prec = build_precedence(labels, bs.blocks.size());
    if (!prec.acyclic) {
        res.kind = SolveResult::Kind::internal_error;
        res.detail = "precedence digraph of a consistent selection has a cycle";
        return res;
    }
    Schedule sched = extract_schedule(net, bs, prec);
    std::vector<Violation> bad = verify_schedule(net, sched);
    if (!bad.empty()) {
        res.kind = SolveResult::Kind::internal_error;
        res.detail = "extracted schedule failed verification";
        res.violations = std::move(bad);
        res.schedule = std::move(sched);
        return res;
    }
    res.kind = SolveResult::Kind::feasible;
    res.schedule = std::move(sched);
    return res;
}

}  // namespace flowreroute

#endif
