#ifndef FLOWREROUTE_ORACLE_HPP
#define FLOWREROUTE_ORACLE_HPP

#include <chrono>
#include <functional>
#include <unordered_map>
#include <unordered_set>

#include "flowreroute/model.hpp"

// Ground-truth exhaustive search over sets of resolved effective updates,
// valid on arbitrary directed instances. Three-valued: Feasible carries a
// verified singleton-round schedule, Infeasible is only reported when the
// reachable space was exhausted, LimitExceeded otherwise.

namespace flowreroute {

struct SearchLimits {
    size_t max_states = 10'000'000;
    int64_t max_depth = -1;  // -1: number of effective updates
    double max_seconds = 600.0;
};

struct OracleResult {
    enum class Kind { feasible, infeasible, limit_exceeded };
    Kind kind = Kind::limit_exceeded;
    Schedule schedule;  // singleton rounds, when feasible
    size_t states_visited = 0;
};

namespace detail {

struct BitsHash {
    size_t operator()(const std::vector<uint64_t>& v) const {
        size_t h = 1469598103934665603ull;
        for (uint64_t w : v) {
            h ^= std::hash<uint64_t>{}(w);
            h *= 1099511628211ull;
        }
        return h;
    }
};

// Search state over the effective-update universe. The state is a pure
// function of the resolved set; transient paths and loads are cached and
// patched per move.
//
// Updates whose vertex is off their pair's transient path change no
// transient flow and no load; resolving them is always consistent and can
// never invalidate a later move. The search therefore resolves every such
// update eagerly after each decision move, which collapses the state space
// to the decision-relevant switches without affecting feasibility.
class Search {
  public:
    Search(const UpdateFlowNetwork& net, const SearchLimits& limits)
        : net_(net),
          limits_(limits),
          state_(net),
          universe_(effective_updates(net)),
          bits_((universe_.size() + 63) / 64, 0),
          loads_(net.edges.size(), 0),
          on_path_(net.pair_count(), std::vector<char>(net.vertex_count(), 0)),
          paths_(net.pair_count()) {
        for (size_t i = 0; i < universe_.size(); ++i) index_[key_of(universe_[i])] = i;
        for (size_t p = 0; p < net.pair_count(); ++p) refresh_path(static_cast<int>(p));
        max_depth_ = limits.max_depth < 0 ? static_cast<int64_t>(universe_.size()) : limits.max_depth;
        deadline_ = std::chrono::steady_clock::now() +
                    std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                        std::chrono::duration<double>(limits.max_seconds));
    }

    size_t universe_size() const { return universe_.size(); }
    size_t states_visited() const { return states_; }
    bool limit_hit() const { return limit_hit_; }
    const std::vector<Update>& path() const { return path_; }
    const NetworkState& state() const { return state_; }

    bool update_resolved(const Update& u) const {
        auto it = index_.find(key_of(u));
        return it != index_.end() && test_bit(it->second);
    }

    // Depth-first exploration. When `goal` is true the search stops at the
    // first fully-updated state and leaves the successful raw sequence in
    // path(). The visitor, when given, is called once per canonical state.
    bool run(bool goal, const std::function<void(const Search&)>& visitor = nullptr) {
        close_invisible();
        return dfs(goal, visitor);
    }

  private:
    static std::pair<int, VertexId> key_of(const Update& u) { return {u.pair, u.vertex}; }

    bool test_bit(size_t i) const { return (bits_[i / 64] >> (i % 64)) & 1; }
    void set_bit(size_t i) { bits_[i / 64] |= uint64_t{1} << (i % 64); }
    void clear_bit(size_t i) { bits_[i / 64] &= ~(uint64_t{1} << (i % 64)); }

    void refresh_path(int pair) {
        TransientResult t = transient_path(state_, pair);
        assert(t.ok);
        for (VertexId v : paths_[static_cast<size_t>(pair)]) on_path_[static_cast<size_t>(pair)][static_cast<size_t>(v)] = 0;
        for (size_t i = 0; i + 1 < t.path.size(); ++i)
            loads_[static_cast<size_t>(state_.active_out(pair, t.path[i]))] +=
                net_.pairs[static_cast<size_t>(pair)].demand;
        paths_[static_cast<size_t>(pair)] = std::move(t.path);
        for (VertexId v : paths_[static_cast<size_t>(pair)]) on_path_[static_cast<size_t>(pair)][static_cast<size_t>(v)] = 1;
    }

    void remove_path_loads(int pair) {
        const auto& path = paths_[static_cast<size_t>(pair)];
        for (size_t i = 0; i + 1 < path.size(); ++i)
            loads_[static_cast<size_t>(state_.active_out(pair, path[i]))] -=
                net_.pairs[static_cast<size_t>(pair)].demand;
    }

    // Resolve every unresolved effective update whose vertex is off its
    // pair's transient path. A single sweep reaches the fixed point: these
    // moves change no transient path, so they cannot surface new ones.
    void close_invisible() {
        for (size_t i = 0; i < universe_.size(); ++i) {
            const Update& u = universe_[i];
            if (test_bit(i) || on_path_[static_cast<size_t>(u.pair)][static_cast<size_t>(u.vertex)]) continue;
            set_bit(i);
            state_.resolve_in_place(u);
            path_.push_back(u);
        }
    }

    bool tick() {
        ++states_;
        if (states_ >= limits_.max_states) {
            limit_hit_ = true;
            return false;
        }
        if ((states_ & 1023) == 0 && std::chrono::steady_clock::now() > deadline_) {
            limit_hit_ = true;
            return false;
        }
        return true;
    }

    bool dfs(bool goal, const std::function<void(const Search&)>& visitor) {
        if (!tick()) return false;
        if (visitor) visitor(*this);
        bool all = true;
        for (size_t w = 0; w < bits_.size() && all; ++w) {
            uint64_t want = w + 1 < bits_.size() || universe_.size() % 64 == 0
                                ? ~uint64_t{0}
                                : (uint64_t{1} << (universe_.size() % 64)) - 1;
            all = (bits_[w] & want) == want;
        }
        if (all) return goal;
        if (!memo_.insert(bits_).second) return false;

        for (size_t i = 0; i < universe_.size(); ++i) {
            if (test_bit(i)) continue;
            const Update& u = universe_[i];
            if (!on_path_[static_cast<size_t>(u.pair)][static_cast<size_t>(u.vertex)]) continue;  // handled by closure
            if (static_cast<int64_t>(path_.size()) >= max_depth_) {
                limit_hit_ = true;
                continue;
            }

            // tentatively resolve and re-route the pair
            std::vector<VertexId> saved_path = paths_[static_cast<size_t>(u.pair)];
            remove_path_loads(u.pair);
            state_.resolve_in_place(u);
            TransientResult t = transient_path(state_, u.pair);
            bool ok = t.ok;
            if (ok) {
                for (size_t j = 0; ok && j + 1 < t.path.size(); ++j) {
                    EdgeId e = state_.active_out(u.pair, t.path[j]);
                    ok = loads_[static_cast<size_t>(e)] + net_.pairs[static_cast<size_t>(u.pair)].demand <=
                         net_.edges[static_cast<size_t>(e)].capacity;
                }
            }
            if (!ok) {
                state_.unresolve_in_place(u);
                for (size_t j = 0; j + 1 < saved_path.size(); ++j)
                    loads_[static_cast<size_t>(state_.active_out(u.pair, saved_path[j]))] +=
                        net_.pairs[static_cast<size_t>(u.pair)].demand;
                continue;
            }

            size_t path_mark = path_.size();
            set_bit(i);
            path_.push_back(u);
            for (VertexId v : saved_path) on_path_[static_cast<size_t>(u.pair)][static_cast<size_t>(v)] = 0;
            for (size_t j = 0; j + 1 < t.path.size(); ++j)
                loads_[static_cast<size_t>(state_.active_out(u.pair, t.path[j]))] +=
                    net_.pairs[static_cast<size_t>(u.pair)].demand;
            paths_[static_cast<size_t>(u.pair)] = t.path;
            for (VertexId v : t.path) on_path_[static_cast<size_t>(u.pair)][static_cast<size_t>(v)] = 1;
            close_invisible();

            if (dfs(goal, visitor)) return true;

            // roll back: drop the new path's loads while the move is still
            // resolved, then unresolve the move and everything the closure
            // added, then restore the old path and its loads
            remove_path_loads(u.pair);
            while (path_.size() > path_mark) {
                Update undo = path_.back();
                path_.pop_back();
                state_.unresolve_in_place(undo);
                clear_bit(index_.at(key_of(undo)));
            }
            for (VertexId v : paths_[static_cast<size_t>(u.pair)]) on_path_[static_cast<size_t>(u.pair)][static_cast<size_t>(v)] = 0;
            paths_[static_cast<size_t>(u.pair)] = saved_path;
            for (VertexId v : saved_path) on_path_[static_cast<size_t>(u.pair)][static_cast<size_t>(v)] = 1;
            for (size_t j = 0; j + 1 < saved_path.size(); ++j)
                loads_[static_cast<size_t>(state_.active_out(u.pair, saved_path[j]))] +=
                    net_.pairs[static_cast<size_t>(u.pair)].demand;
        }
        return false;
    }

    const UpdateFlowNetwork& net_;
    SearchLimits limits_;
    NetworkState state_;
    std::vector<Update> universe_;
    std::map<std::pair<int, VertexId>, size_t> index_;
    std::vector<uint64_t> bits_;
    std::vector<int64_t> loads_;
    std::vector<std::vector<char>> on_path_;
    std::vector<std::vector<VertexId>> paths_;
    std::vector<Update> path_;
    std::unordered_set<std::vector<uint64_t>, BitsHash> memo_;
    size_t states_ = 0;
    int64_t max_depth_ = 0;
    bool limit_hit_ = false;
    std::chrono::steady_clock::time_point deadline_;
};

}  // namespace detail

// Recursion depth is bounded by the number of effective updates; refuse
// instances where that would exhaust the stack.
inline constexpr size_t kOracleMaxUniverse = 10000;

inline OracleResult brute_force(const UpdateFlowNetwork& net, const SearchLimits& limits = {}) {
    detail::Search search(net, limits);
    if (search.universe_size() > kOracleMaxUniverse) {
        OracleResult res;
        res.kind = OracleResult::Kind::limit_exceeded;
        return res;
    }
    bool found = search.run(true);
    OracleResult res;
    res.states_visited = search.states_visited();
    if (found) {
        res.kind = OracleResult::Kind::feasible;
        for (const Update& u : search.path()) res.schedule.rounds.push_back({u});
    } else if (search.limit_hit()) {
        res.kind = OracleResult::Kind::limit_exceeded;
    } else {
        res.kind = OracleResult::Kind::infeasible;
    }
    return res;
}

// Walks every reachable canonical state (eager closure applied) and calls
// the visitor with a predicate for membership of the resolved set. Used by
// property tests; returns false if a limit tripped before exhaustion.
inline bool enumerate_reachable(const UpdateFlowNetwork& net, const SearchLimits& limits,
                                const std::function<void(const std::function<bool(const Update&)>&)>& visit) {
    detail::Search search(net, limits);
    if (search.universe_size() > kOracleMaxUniverse) return false;
    search.run(false, [&](const detail::Search& s) {
        visit([&](const Update& u) { return s.update_resolved(u); });
    });
    return !search.limit_hit();
}

struct PrefixEnumeration {
    bool complete = true;  // false if a limit tripped
    std::vector<std::vector<Update>> sequences;
};

// All consistency-preserving sequences of effective updates of exactly the
// given length, deduplicated by resolved set (one representative each). No
// eager closure here: every raw prefix is reachable.
inline PrefixEnumeration enumerate_feasible_prefixes(const UpdateFlowNetwork& net, int depth,
                                                     const SearchLimits& limits = {}) {
    std::vector<Update> universe = effective_updates(net);
    size_t words = (universe.size() + 63) / 64;

    PrefixEnumeration out;
    std::unordered_map<std::vector<uint64_t>, std::vector<Update>, detail::BitsHash> level;
    level.emplace(std::vector<uint64_t>(words, 0), std::vector<Update>{});
    size_t states = 1;
    for (int d = 0; d < depth; ++d) {
        std::unordered_map<std::vector<uint64_t>, std::vector<Update>, detail::BitsHash> next;
        for (const auto& [bits, seq] : level) {
            NetworkState state(net);
            for (const Update& u : seq) state.resolve_in_place(u);
            for (size_t i = 0; i < universe.size(); ++i) {
                if ((bits[i / 64] >> (i % 64)) & 1) continue;
                std::vector<uint64_t> nbits(bits);
                nbits[i / 64] |= uint64_t{1} << (i % 64);
                if (next.count(nbits)) continue;
                state.resolve_in_place(universe[i]);
                if (check_consistency(state).empty()) {
                    if (++states > limits.max_states) {
                        out.complete = false;
                        state.unresolve_in_place(universe[i]);
                        break;
                    }
                    std::vector<Update> nseq(seq);
                    nseq.push_back(universe[i]);
                    next.emplace(std::move(nbits), std::move(nseq));
                }
                state.unresolve_in_place(universe[i]);
            }
            if (!out.complete) break;
        }
        level = std::move(next);
        if (!out.complete) break;
    }
    for (auto& [bits, seq] : level) out.sequences.push_back(seq);
    std::sort(out.sequences.begin(), out.sequences.end(),
              [](const std::vector<Update>& a, const std::vector<Update>& b) {
                  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
              });
    return out;
}

}  // namespace flowreroute

#endif
