#include "oracles.hpp"

#include "tightree/embedding.hpp"
#include "tightree/errors.hpp"
#include "tightree/trunk_embedder.hpp"
#include "tightree/tree_gen.hpp"
#include "tightree/turan.hpp"

#include <doctest.h>

using namespace tightree;

namespace {

Hypergraph fano() {
    return oracle::graph_of(3, 7, {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5}});
}

Hypergraph two_edge_tree() { return oracle::graph_of(3, 4, {{0, 1, 2}, {0, 1, 3}}); }

/// Independent check: injective, and every mapped edge is a host edge.
bool embeds(const Hypergraph& tree, const Hypergraph& host, const Embedding& emb) {
    std::set<int> images;
    for (auto v : tree.active_vertices()) {
        auto it = emb.map.find(v);
        if (it == emb.map.end() || !images.insert(it->second).second)
            return false;
    }
    auto host_edges = oracle::edges_of(host);
    std::set<oracle::Edge> hs(host_edges.begin(), host_edges.end());
    for (const auto& e : oracle::edges_of(tree)) {
        oracle::Edge img;
        for (int v : e)
            img.push_back(emb.map.at(v));
        std::sort(img.begin(), img.end());
        if (!hs.count(img))
            return false;
    }
    return true;
}

TrunkCertificate trunk_of(const Hypergraph& tree) { return *min_trunk_size(tree, 2).certificate; }

} // namespace

TEST_CASE("validate_embedding") {
    auto t = two_edge_tree();
    Embedding id;
    for (Vertex v = 0; v < 4; ++v)
        id.map[v] = v;
    compute_edge_images(t, id);
    CHECK(validate_embedding(t, t, id));
    CHECK(id.edge_images == std::vector<VertexSet>{{0, 1, 2}, {0, 1, 3}});

    Embedding collapse = id;
    collapse.map[3] = 2;
    CHECK_FALSE(validate_embedding(t, complete_hypergraph(3, 5), collapse));

    Embedding missing = id;
    missing.map.erase(3);
    CHECK_FALSE(validate_embedding(t, complete_hypergraph(3, 5), missing));

    Embedding off = id;
    off.map[3] = 4;
    CHECK_FALSE(validate_embedding(t, t, off));
    CHECK(validate_embedding(t, complete_hypergraph(3, 5), off));
}

TEST_CASE("backtracking examples") {
    auto none = embed_backtracking(two_edge_tree(), fano());
    CHECK(none.status == SearchStatus::NoEmbedding);
    CHECK_FALSE(none.embedding);

    auto path = oracle::graph_of(3, 6, {{0, 1, 2}, {1, 2, 3}, {2, 3, 4}, {3, 4, 5}});
    auto self = embed_backtracking(path, path);
    REQUIRE(self.status == SearchStatus::Found);
    CHECK(validate_embedding(path, path, *self.embedding));

    auto starved = embed_backtracking(path, complete_hypergraph(3, 9), 2);
    CHECK(starved.status == SearchStatus::BudgetExhausted);
    CHECK(to_string(SearchStatus::BudgetExhausted) == "budget-exhausted");

    CHECK_THROWS_AS(embed_backtracking(path, complete_hypergraph(4, 6)), PreconditionError);
}

TEST_CASE("backtracking handles patterns that are not tight trees") {
    auto loose = oracle::graph_of(3, 6, {{0, 1, 2}, {3, 4, 5}});
    CHECK(embed_backtracking(loose, complete_hypergraph(3, 6)).status == SearchStatus::Found);
    CHECK(embed_backtracking(loose, complete_hypergraph(3, 5)).status == SearchStatus::NoEmbedding);
    CHECK(embed_backtracking(complete_hypergraph(3, 4), fano()).status == SearchStatus::NoEmbedding);
}

TEST_CASE("backtracking agrees with brute force on small hosts") {
    Rng rng(8);
    auto trees = enumerate_tight_trees(3, 3);
    for (int round = 0; round < 40; ++round) {
        auto host = oracle::random_graph(6, 1, 4, rng);
        for (const auto& item : trees) {
            auto found = embed_backtracking(item.tree, host);
            // Brute force over all injections of the five tree vertices.
            bool exists = false;
            std::vector<int> perm(6);
            std::iota(perm.begin(), perm.end(), 0);
            auto hs = oracle::edges_of(host);
            std::set<oracle::Edge> hset(hs.begin(), hs.end());
            do {
                bool all = true;
                for (const auto& e : oracle::edges_of(item.tree)) {
                    oracle::Edge img{perm[e[0]], perm[e[1]], perm[e[2]]};
                    std::sort(img.begin(), img.end());
                    all = all && hset.count(img);
                }
                exists = exists || all;
            } while (!exists && std::next_permutation(perm.begin(), perm.end()));
            CHECK((found.status == SearchStatus::Found) == exists);
            if (found.embedding)
                CHECK(embeds(item.tree, host, *found.embedding));
        }
    }
}

TEST_CASE("tight component sizes") {
    auto g = oracle::graph_of(3, 9, {{0, 1, 2}, {1, 2, 3}, {4, 5, 6}, {6, 7, 8}});
    CHECK(tight_component_sizes(g) == std::vector<std::size_t>{4, 3, 3});
}

TEST_CASE("trunk embedder on K22 with 20-edge trees") {
    auto k22 = complete_hypergraph(3, 22);
    std::map<std::string, int> cases;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        auto rt = random_tight_tree(3, 20, 2, seed);
        auto result = embed_trunk2(rt.tree, rt.trunk, k22);
        CHECK(validate_embedding(rt.tree, k22, result.embedding));
        CHECK(embeds(rt.tree, k22, result.embedding));
        CHECK(result.trace.m == 19);
        for (const auto& g : result.trace.gates)
            CHECK_MESSAGE(g.passed, g.name << " " << g.detail);
        ++cases[result.trace.case_name];
    }
    for (auto [name, count] : cases)
        MESSAGE(name << ": " << count);
}

TEST_CASE("trunk embedder keeps placements away from the special pair") {
    auto k22 = complete_hypergraph(3, 22);
    auto rt = random_tight_tree_with_trunk(3, 20, 2, 4);
    auto result = embed_trunk2(rt.tree, rt.trunk, k22);
    REQUIRE(result.trace.pair);
    const auto& p = *result.trace.pair;
    std::set<Vertex> used;
    for (const auto& step : result.trace.steps)
        for (Vertex v : step.images) {
            CHECK_FALSE(VertexSet({p.a, p.b, p.c, p.d}).contains(v));
            CHECK(used.insert(v).second);
        }
}

TEST_CASE("the broom goes through the center-heavy route") {
    oracle::Edges edges{{0, 1, 2}, {0, 1, 3}};
    for (int i = 0; i < 18; ++i)
        edges.push_back({0, 1, 4 + i});
    auto broom = oracle::graph_of(3, 22, edges);
    auto k22 = complete_hypergraph(3, 22);
    auto result = embed_trunk2(broom, trunk_of(broom), k22);
    CHECK(result.trace.route == "center-heavy");
    CHECK(validate_embedding(broom, k22, result.embedding));
}

TEST_CASE("two-edge tree maps onto the special pair") {
    auto t = two_edge_tree();
    auto k6 = complete_hypergraph(3, 6);
    auto result = embed_trunk2(t, trunk_of(t), k6);
    REQUIRE(result.trace.pair);
    std::set<VertexSet> images(result.embedding.edge_images.begin(), result.embedding.edge_images.end());
    CHECK(images == std::set<VertexSet>{result.trace.pair->e, result.trace.pair->f});
    CHECK(validate_embedding(t, k6, result.embedding));
}

TEST_CASE("trunk embedder preconditions") {
    auto rt = random_tight_tree_with_trunk(3, 20, 2, 2);
    // K21 sits exactly on the bound: 1330 = (19/3) 210.
    CHECK_THROWS_AS(embed_trunk2(rt.tree, rt.trunk, complete_hypergraph(3, 21)), PreconditionError);
    auto steiner = steiner_lower_bound(60, 20).graph;
    CHECK_THROWS_AS(embed_trunk2(rt.tree, rt.trunk, steiner), PreconditionError);

    auto path = oracle::graph_of(3, 7, {{0, 1, 2}, {1, 2, 3}, {2, 3, 4}, {3, 4, 5}, {4, 5, 6}});
    TrunkCertificate fake = rt.trunk;
    CHECK_THROWS_AS(embed_trunk2(path, fake, complete_hypergraph(3, 10)), PreconditionError);
    CHECK_THROWS_AS(embed_trunk2(rt.tree, rt.trunk, complete_hypergraph(2, 30)), PreconditionError);
}

TEST_CASE("trunk embedder on dense non-complete hosts") {
    int done = 0;
    for (std::uint64_t seed = 1; done < 6 && seed < 200; ++seed) {
        Rng rng(seed);
        auto host = oracle::random_graph(26 + static_cast<int>(rng.below(4)), 88 + rng.below(10), 100, rng);
        LinkIndex index(host);
        if (3 * static_cast<long long>(host.size()) <= 19 * static_cast<long long>(index.shadow_size()))
            continue;
        ++done;
        auto rt = random_tight_tree(3, 20, 2, seed);
        auto result = embed_trunk2(rt.tree, rt.trunk, host);
        CHECK(validate_embedding(rt.tree, host, result.embedding));
        CHECK(embeds(rt.tree, host, result.embedding));
        CHECK_FALSE(result.trace.used_fallback);
    }
    CHECK(done == 6);
}

TEST_CASE("trace lines are stable") {
    auto k22 = complete_hypergraph(3, 22);
    auto rt = random_tight_tree(3, 20, 2, 17);
    auto a = embed_trunk2(rt.tree, rt.trunk, k22).trace.lines();
    auto b = embed_trunk2(rt.tree, rt.trunk, k22).trace.lines();
    CHECK(a == b);
    CHECK_FALSE(a.empty());
}
