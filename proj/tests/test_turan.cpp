#include "oracles.hpp"

#include "tightree/embedding.hpp"
#include "tightree/errors.hpp"
#include "tightree/tree_gen.hpp"
#include "tightree/turan.hpp"

#include <doctest.h>

using namespace tightree;

namespace {

Hypergraph two_edge_tree() { return oracle::graph_of(3, 4, {{0, 1, 2}, {0, 1, 3}}); }

} // namespace

TEST_CASE("bound evaluators") {
    CHECK(kalai_bound(3, 20, 22) == 1463);
    CHECK(kalai_bound(3, 2, 7) == 7);
    CHECK(kalai_bound(3, 2, 6) == 5);
    CHECK(bounded_trunk_bound(3, 20, 2, 22) == 7854);
    CHECK(bounded_trunk_bound(3, 20, 1, 22) == kalai_bound(3, 20, 22));
    CHECK(bounded_trunk_bound(4, 5, 3, 9) >= kalai_bound(4, 5, 9));
    CHECK(shadow_bound(complete_hypergraph(3, 22), 20) == 1463);
    CHECK_THROWS_AS(kalai_bound(1, 2, 5), PreconditionError);
    CHECK_THROWS_AS(kalai_bound(3, 0, 5), PreconditionError);
    CHECK_THROWS_AS(kalai_bound(3, 2, 2), PreconditionError);
    CHECK_THROWS_AS(bounded_trunk_bound(3, 2, 0, 5), PreconditionError);
}

TEST_CASE("pair packing oracle") {
    CHECK(oracle::max_pair_packing(6) == 4);
    CHECK(oracle::max_pair_packing(7) == 7);
}

TEST_CASE("exact Turan numbers for the two-edge tree") {
    for (int n : {5, 6, 7}) {
        auto result = brute_force_turan(n, two_edge_tree());
        CHECK(result.complete);
        CHECK(result.value == oracle::max_pair_packing(n));
        CHECK(result.witness.size() == result.value);
        CHECK(embed_backtracking(two_edge_tree(), result.witness).status == SearchStatus::NoEmbedding);
        CHECK_FALSE(result.exceeds_bound);
        // Maximality spot check: every extra triple creates a copy.
        for (const auto& e : oracle::all_triples(n)) {
            VertexSet triple(std::vector<Vertex>(e.begin(), e.end()));
            if (!result.witness.contains(triple))
                CHECK(embed_backtracking(two_edge_tree(), result.witness.with_edge(triple)).status ==
                      SearchStatus::Found);
        }
    }
    auto seven = brute_force_turan(7, two_edge_tree());
    CHECK(seven.lines().front() == "ex = 7 (bound 7) COMPLETE");
    CHECK(brute_force_turan(6, two_edge_tree()).lines().front() == "ex = 4 (bound 5) COMPLETE");
}

TEST_CASE("single-edge pattern gives zero") {
    auto one = oracle::graph_of(3, 3, {{0, 1, 2}});
    for (int n : {3, 5, 8})
        CHECK(brute_force_turan(n, one).value == 0);
}

TEST_CASE("turan search reports budget exhaustion") {
    auto result = brute_force_turan(7, two_edge_tree(), 10);
    CHECK_FALSE(result.complete);
    CHECK(result.lines().front().find("INCOMPLETE") != std::string::npos);
    CHECK_THROWS_AS(brute_force_turan(11, two_edge_tree()), PreconditionError);
    CHECK_THROWS_AS(brute_force_turan(2, two_edge_tree()), PreconditionError);
}

TEST_CASE("turan search is thread independent") {
    auto path = oracle::graph_of(3, 5, {{0, 1, 2}, {1, 2, 3}, {2, 3, 4}});
    auto one = brute_force_turan(6, path, 5'000'000, 1);
    auto many = brute_force_turan(6, path, 5'000'000, 8);
    CHECK(one.lines() == many.lines());
    CHECK(one.complete);
}

TEST_CASE("steiner construction") {
    auto single = steiner_lower_bound(5, 4);
    CHECK(single.blocks.size() == 1);
    CHECK(single.graph.size() == 10);

    auto small = steiner_lower_bound(9, 2);
    CHECK(small.blocks_linear);
    CHECK(embed_backtracking(two_edge_tree(), small.graph).status == SearchStatus::NoEmbedding);
    CHECK(Rational(static_cast<long long>(small.graph.size())) <= small.shadow);
    CHECK(small.shadow <= small.kalai);

    for (int t = 2; t <= 5; ++t)
        for (int n = t + 1; n <= 12; ++n) {
            auto s = steiner_lower_bound(n, t);
            CHECK(s.blocks_linear);
            CHECK(Rational(static_cast<long long>(s.graph.size())) <= s.shadow);
            for (const auto& item : enumerate_tight_trees(3, t))
                CHECK(embed_backtracking(item.tree, s.graph).status == SearchStatus::NoEmbedding);
        }
    CHECK_THROWS_AS(steiner_lower_bound(5, 5), PreconditionError);
    CHECK_THROWS_AS(steiner_lower_bound(5, 1), PreconditionError);
}

TEST_CASE("steiner blocks are the first admissible ones in lexicographic order") {
    // Independent greedy over (t+1)-subsets in lexicographic order.
    const int n = 10, t = 3;
    std::vector<std::vector<int>> blocks;
    std::set<std::pair<int, int>> covered;
    std::vector<int> pick{0, 1, 2, 3};
    while (true) {
        bool ok = true;
        for (int i = 0; i < 4 && ok; ++i)
            for (int j = i + 1; j < 4 && ok; ++j)
                ok = !covered.count({pick[i], pick[j]});
        if (ok) {
            blocks.push_back(pick);
            for (int i = 0; i < 4; ++i)
                for (int j = i + 1; j < 4; ++j)
                    covered.insert({pick[i], pick[j]});
        }
        int k = 3;
        while (k >= 0 && pick[k] == n - 4 + k)
            --k;
        if (k < 0)
            break;
        ++pick[k];
        for (int i = k + 1; i < 4; ++i)
            pick[i] = pick[i - 1] + 1;
    }
    auto s = steiner_lower_bound(n, t);
    REQUIRE(s.blocks.size() == blocks.size());
    for (std::size_t i = 0; i < blocks.size(); ++i)
        CHECK(oracle::Edge(s.blocks[i].begin(), s.blocks[i].end()) == blocks[i]);
}

TEST_CASE("bound audit") {
    auto rt = random_tight_tree(3, 20, 2, 3);
    auto steiner = steiner_lower_bound(60, 20).graph;
    auto quiet = bound_audit(steiner, rt.tree);
    CHECK_FALSE(quiet.exceeds);
    CHECK_FALSE(quiet.copy);
    CHECK(quiet.lines()[1] == "bound satisfied");

    auto k22 = complete_hypergraph(3, 22);
    auto loud = bound_audit(k22, rt.tree);
    CHECK(loud.exceeds);
    REQUIRE(loud.copy);
    CHECK(validate_embedding(rt.tree, k22, loud.copy->embedding));

    CHECK_FALSE(bound_audit(rt.tree, rt.tree).exceeds);
}
