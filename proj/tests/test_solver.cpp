#include <catch2/catch_amalgamated.hpp>

#include "flowreroute/solver.hpp"
#include "test_util.hpp"

using namespace flowreroute;

namespace {

struct Decomposed {
    UpdateFlowNetwork net;
    TopoOrder topo;
    BlockSet blocks;
};

Decomposed decompose(UpdateFlowNetwork net) {
    auto r = topological_order(net);
    REQUIRE(std::holds_alternative<TopoOrder>(r));
    Decomposed d{std::move(net), std::get<TopoOrder>(r), {}};
    d.blocks = decompose_blocks(d.net, d.topo);
    return d;
}

UpdateFlowNetwork single_block_network() {
    NetworkBuilder b;
    b.set_source("s");
    b.set_terminal("t");
    b.add_edge("s", "a", 1);
    b.add_edge("a", "b", 1);
    b.add_edge("b", "t", 1);
    b.add_edge("s", "c", 1);
    b.add_edge("c", "t", 1);
    b.add_pair(1, 1, {"s", "a", "b", "t"}, {"s", "c", "t"});
    return b.build();
}

// two span-disjoint blocks of different pairs around a common middle vertex
UpdateFlowNetwork disjoint_blocks_network() {
    NetworkBuilder b;
    b.set_source("s");
    b.set_terminal("t");
    b.add_edge("s", "a1", 1);
    b.add_edge("a1", "m", 1);
    b.add_edge("s", "a2", 1);
    b.add_edge("a2", "m", 1);
    b.add_edge("m", "t", 4);
    b.add_edge("s", "m", 4);
    b.add_edge("m", "b1", 1);
    b.add_edge("b1", "t", 1);
    b.add_edge("m", "b2", 1);
    b.add_edge("b2", "t", 1);
    b.add_pair(1, 1, {"s", "a1", "m", "t"}, {"s", "a2", "m", "t"});
    b.add_pair(2, 1, {"s", "m", "b1", "t"}, {"s", "m", "b2", "t"});
    return b.build();
}

}  // namespace

TEST_CASE("touch_list on a single-pair network is the block itself") {
    Decomposed d = decompose(single_block_network());
    REQUIRE(d.blocks.blocks.size() == 1);
    CHECK(touch_list(0, 0, d.blocks, d.topo) == std::vector<int>{0});
}

TEST_CASE("touch_list of the larger overlapping block contains both") {
    Decomposed d = decompose(frtest::swap_gadget(1, 2));
    REQUIRE(d.blocks.blocks.size() == 2);
    CHECK(touch_list(1, 1, d.blocks, d.topo) == std::vector<int>{0, 1});
    // after eliminating the larger block, the smaller only sees itself
    CHECK(touch_list(0, 0, d.blocks, d.topo) == std::vector<int>{0});
}

TEST_CASE("span-disjoint blocks have singleton touch lists") {
    Decomposed d = decompose(disjoint_blocks_network());
    REQUIRE(d.blocks.blocks.size() == 2);
    CHECK(touch_list(1, 1, d.blocks, d.topo) == std::vector<int>{1});
    CHECK(touch_list(0, 0, d.blocks, d.topo) == std::vector<int>{0});
}

TEST_CASE("congestion_free_labels enumerates exactly the surviving orders") {
    SECTION("singleton") {
        Decomposed d = decompose(single_block_network());
        auto labels = congestion_free_labels({0}, d.blocks, d.net);
        REQUIRE(labels.size() == 1);
        CHECK(labels[0] == std::vector<int>{0});
    }
    SECTION("one of two on the widened swap gadget") {
        Decomposed d = decompose(frtest::swap_gadget(1, 2));
        auto labels = congestion_free_labels({0, 1}, d.blocks, d.net);
        REQUIRE(labels.size() == 1);
        CHECK(labels[0] == std::vector<int>{0, 1});
    }
    SECTION("none on the deadlocked gadget") {
        Decomposed d = decompose(frtest::swap_gadget(1, 1));
        CHECK(congestion_free_labels({0, 1}, d.blocks, d.net).empty());
    }
}

TEST_CASE("labels_consistent compares the order of the common core") {
    CHECK(labels_consistent({0, 1}, {2, 3}));
    CHECK(labels_consistent({0, 1}, {0, 1, 2}));
    CHECK_FALSE(labels_consistent({0, 1}, {1, 0}));
    CHECK(labels_consistent({}, {0}));
    CHECK(labels_consistent({2, 0, 3}, {1, 2, 3}));
    CHECK_FALSE(labels_consistent({3, 2}, {1, 2, 3}));
}

TEST_CASE("build_rh produces one group per block with local edges only") {
    SECTION("single block") {
        Decomposed d = decompose(single_block_network());
        BuildRhResult r = build_rh(d.net, d.topo, d.blocks);
        REQUIRE(r.feasible);
        REQUIRE(r.rh.groups.size() == 1);
        CHECK(r.rh.groups[0].labels.size() == 1);
        CHECK(r.rh.incompat.empty());
    }
    SECTION("widened swap gadget") {
        Decomposed d = decompose(frtest::swap_gadget(1, 2));
        BuildRhResult r = build_rh(d.net, d.topo, d.blocks);
        REQUIRE(r.feasible);
        REQUIRE(r.rh.groups.size() == 2);
        CHECK(r.rh.groups[1].labels.size() == 1);  // larger block: only (0,1) survives
        REQUIRE(r.rh.incompat.size() == 1);
        CHECK(r.rh.incompat[0][0][0] == 0);  // consistent pair stays unconnected
    }
    SECTION("deadlocked gadget reports the first processed block") {
        Decomposed d = decompose(frtest::swap_gadget(1, 1));
        BuildRhResult r = build_rh(d.net, d.topo, d.blocks);
        REQUIRE_FALSE(r.feasible);
        CHECK(r.empty_block == 1);
    }
}

TEST_CASE("find_independent_set matches exhaustive search on small graphs") {
    SECTION("one group, one vertex") {
        RhGraph rh;
        rh.groups.push_back({0, {{0}}});
        auto choice = find_independent_set(rh);
        REQUIRE(choice.has_value());
        CHECK(*choice == std::vector<int>{0});
    }
    SECTION("two fully inconsistent groups") {
        RhGraph rh;
        rh.groups.push_back({0, {{0}, {1}}});
        rh.groups.push_back({1, {{2}, {3}}});
        rh.incompat = {{{1, 1}, {1, 1}}};
        CHECK_FALSE(find_independent_set(rh).has_value());
    }
    SECTION("three groups of two with a unique chain") {
        RhGraph rh;
        rh.groups.push_back({0, {{0}, {1}}});
        rh.groups.push_back({1, {{2}, {3}}});
        rh.groups.push_back({2, {{4}, {5}}});
        rh.incompat = {{{1, 1}, {0, 1}}, {{1, 0}, {1, 1}}};
        auto choice = find_independent_set(rh);
        REQUIRE(choice.has_value());
        CHECK(*choice == std::vector<int>{1, 0, 1});
        // exhaustive cross product agrees: exactly one selection is edge-free
        int count = 0;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (int c = 0; c < 2; ++c)
                    if (!rh.incompat[0][a][b] && !rh.incompat[1][b][c]) ++count;
        CHECK(count == 1);
    }
}

TEST_CASE("build_precedence unions labels into a path") {
    SECTION("single label") {
        std::vector<int> label = {0, 1, 2};
        PrecedenceDigraph d = build_precedence({&label}, 3);
        REQUIRE(d.acyclic);
        CHECK(d.succ[0] == std::vector<int>{1});
        CHECK(d.succ[1] == std::vector<int>{2});
        CHECK(d.indeg == std::vector<int>{0, 1, 1});
    }
    SECTION("two labels identified on the shared block") {
        std::vector<int> l1 = {0, 1}, l2 = {1, 2};
        PrecedenceDigraph d = build_precedence({&l1, &l2}, 3);
        REQUIRE(d.acyclic);
        CHECK(d.succ[0] == std::vector<int>{1});
        CHECK(d.succ[1] == std::vector<int>{2});
    }
    SECTION("a cyclic union is reported") {
        std::vector<int> l1 = {0, 1}, l2 = {1, 0};
        PrecedenceDigraph d = build_precedence({&l1, &l2}, 2);
        CHECK_FALSE(d.acyclic);
    }
}

TEST_CASE("extract_schedule realizes the three-round block update") {
    UpdateFlowNetwork net = single_block_network();
    SolveArtifacts art;
    SolveResult res = solve(net, &art);
    REQUIRE(res.kind == SolveResult::Kind::feasible);
    REQUIRE(res.schedule.rounds.size() == 3);
    // activate the interior of the new path, switch the start, retire the old
    CHECK(res.schedule.rounds[0] == std::vector<Update>{frtest::up(net, "c", 1)});
    CHECK(res.schedule.rounds[1] == std::vector<Update>{frtest::up(net, "s", 1)});
    CHECK(res.schedule.rounds[2] ==
          std::vector<Update>{frtest::up(net, "a", 1), frtest::up(net, "b", 1)});
}

TEST_CASE("solve handles the swap gadget and orders the blocks") {
    SolveResult res = solve(frtest::swap_gadget(1, 2));
    REQUIRE(res.kind == SolveResult::Kind::feasible);
    CHECK(res.num_blocks == 2);
    UpdateFlowNetwork net = frtest::swap_gadget(1, 2);
    CHECK(verify_schedule(net, res.schedule).empty());
    CHECK(verify_schedule(net, refine_to_singletons(res.schedule)).empty());
    // pair 1 must switch strictly before pair 2
    int switch1 = -1, switch2 = -1;
    for (size_t r = 0; r < res.schedule.rounds.size(); ++r)
        for (const Update& u : res.schedule.rounds[r]) {
            if (u.vertex == net.vertex("x1") && u.pair == 0) switch1 = static_cast<int>(r);
            if (u.vertex == net.vertex("x2") && u.pair == 1) switch2 = static_cast<int>(r);
        }
    REQUIRE(switch1 >= 0);
    REQUIRE(switch2 >= 0);
    CHECK(switch1 < switch2);
}

TEST_CASE("solve reports infeasibility on the deadlocked gadget") {
    SolveResult res = solve(frtest::swap_gadget(1, 1));
    CHECK(res.kind == SolveResult::Kind::infeasible);
    CHECK(res.infeasible_block >= 0);
}

TEST_CASE("solve classifies cyclic and invalid inputs") {
    CHECK(solve(frtest::fig2_network()).kind == SolveResult::Kind::not_a_dag);
    NetworkBuilder b;
    b.set_source("s");
    b.set_terminal("t");
    b.add_edge("s", "t", 1);
    b.add_pair(1, 2, {"s", "t"}, {"s", "t"});
    CHECK(solve(b.build()).kind == SolveResult::Kind::invalid);
}

TEST_CASE("precedence-independent blocks update in one parallel wave") {
    UpdateFlowNetwork net = disjoint_blocks_network();
    SolveResult res = solve(net);
    REQUIRE(res.kind == SolveResult::Kind::feasible);
    CHECK(res.schedule.rounds.size() == 3);  // one wave, both blocks together
    CHECK(verify_schedule(net, res.schedule).empty());
    CHECK(verify_schedule(net, refine_to_singletons(res.schedule)).empty());
}

TEST_CASE("chosen labels are consistent across every group pair") {
    for (auto make : {+[] { return frtest::swap_gadget(1, 2); },
                      +[] { return disjoint_blocks_network(); }}) {
        UpdateFlowNetwork net = make();
        SolveArtifacts art;
        SolveResult res = solve(net, &art);
        REQUIRE(res.kind == SolveResult::Kind::feasible);
        REQUIRE(art.has_rh);
        for (size_t i = 0; i < art.rh.groups.size(); ++i)
            for (size_t j = i + 1; j < art.rh.groups.size(); ++j)
                CHECK(labels_consistent(
                    art.rh.groups[i].labels[static_cast<size_t>(art.chosen[i])],
                    art.rh.groups[j].labels[static_cast<size_t>(art.chosen[j])]));
    }
}
