#include "oracles.hpp"

#include "tightree/errors.hpp"
#include "tightree/hg_format.hpp"
#include "tightree/hypergraph.hpp"

#include <doctest.h>

using namespace tightree;

namespace {

Hypergraph fano() {
    return oracle::graph_of(3, 7, {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5}});
}

Hypergraph single_edge() { return Hypergraph(3, 3, {VertexSet{0, 1, 2}}); }

} // namespace

TEST_CASE("vertex sets sort and reject repeats") {
    VertexSet s{3, 1, 2};
    CHECK(s.to_string() == "{1,2,3}");
    CHECK_THROWS_AS(VertexSet({1, 1}), PreconditionError);
    CHECK_THROWS_AS(VertexSet({-1, 2}), PreconditionError);
    CHECK(subsets_of_size(VertexSet{0, 1, 2}, 2).size() == 3);
}

TEST_CASE("hypergraph construction validates edges") {
    CHECK_THROWS_AS(Hypergraph(3, 4, {VertexSet{0, 1}}), PreconditionError);
    CHECK_THROWS_AS(Hypergraph(3, 4, {VertexSet{0, 1, 4}}), PreconditionError);
    CHECK_THROWS_AS(Hypergraph(3, 4, {VertexSet{0, 1, 2}, VertexSet{2, 1, 0}}), PreconditionError);
    Hypergraph g(3, 5, {VertexSet{2, 3, 4}, VertexSet{0, 1, 2}});
    CHECK(g.edge(0) == VertexSet{0, 1, 2});
    CHECK(format_edges(g) == "{0,1,2} {2,3,4}");
}

TEST_CASE("shadow") {
    CHECK(shadow(single_edge()) == std::vector<VertexSet>{{0, 1}, {0, 2}, {1, 2}});
    CHECK(shadow(Hypergraph(3, 4)).empty());
    CHECK(shadow(complete_hypergraph(3, 4)).size() == 6);
}

TEST_CASE("link") {
    CHECK(link(complete_hypergraph(3, 4), {0, 1}) == std::vector<VertexSet>{{2}, {3}});
    CHECK(link(Hypergraph(3, 4, {VertexSet{0, 1, 2}}), {3}).empty());
    CHECK(link(complete_hypergraph(3, 5), {0}).size() == 6);
    CHECK_THROWS_AS(link(single_edge(), {0, 1, 2}), PreconditionError);
}

TEST_CASE("degree and min_p_degree") {
    CHECK(degree(complete_hypergraph(3, 5), {0, 1}) == 3);
    CHECK(degree(single_edge(), {0, 1, 2}) == 1);
    auto f = fano();
    for (const auto& d : shadow(f))
        CHECK(degree(f, d) == 1);
    CHECK(min_p_degree(complete_hypergraph(3, 5), 2) == 3);
    CHECK(min_p_degree(Hypergraph(3, 4, {VertexSet{0, 1, 2}, VertexSet{0, 1, 3}}), 2) == 1);
    CHECK(min_p_degree(complete_hypergraph(3, 22), 2) == 20);
    CHECK_THROWS_AS(min_p_degree(Hypergraph(3, 4), 2), PreconditionError);
}

TEST_CASE("degree equals link size on random graphs") {
    Rng rng(11);
    for (int round = 0; round < 20; ++round) {
        auto g = oracle::random_graph(8, 1, 2, rng);
        LinkIndex index(g);
        for (const auto& d : shadow(g)) {
            CHECK(degree(g, d) == link(g, d).size());
            CHECK(index.degree(d) == degree(g, d));
        }
    }
}

TEST_CASE("default weights") {
    auto k4 = complete_hypergraph(3, 4);
    CHECK(default_weight_edge(k4, {0, 1, 2}) == make_rational(3, 2));
    CHECK(default_weight_edge(single_edge(), {0, 1, 2}) == 3);
    CHECK(default_weight_edge(complete_hypergraph(3, 25), {3, 7, 9}) == make_rational(3, 23));
    CHECK(default_weight_pair(k4, {0, 1}) == make_rational(1, 2));
    CHECK_THROWS_AS(default_weight_pair(single_edge(), {0, 3}), PreconditionError);
    CHECK_THROWS_AS(default_weight_edge(k4, {0, 1, 4}), PreconditionError);
}

TEST_CASE("weight identity against a double count") {
    auto k4 = weight_identity_check(complete_hypergraph(3, 4));
    CHECK(k4.lhs == 6);
    CHECK(k4.rhs == 6);
    CHECK(k4.equal);
    auto one = weight_identity_check(single_edge());
    CHECK((one.lhs == 3 && one.rhs == 3 && one.equal));

    Rng rng(5);
    for (int round = 0; round < 50; ++round) {
        int n = 3 + static_cast<int>(rng.below(8));
        auto g = oracle::random_graph(n, 1 + rng.below(9), 10, rng);
        auto report = weight_identity_check(g);
        auto count = oracle::weight_sum_double_count(oracle::edges_of(g), n);
        CHECK(report.equal);
        CHECK(report.lhs == Rational(count.scaled) / Rational(count.scale));
        CHECK(static_cast<std::int64_t>(report.rhs) == count.shadow);
    }
}

TEST_CASE("peeling examples") {
    auto k5 = complete_hypergraph(3, 5);
    CHECK(peel_to_min_codegree(k5, 2).graph == k5);
    auto gone = peel_to_min_codegree(single_edge(), 1);
    CHECK(gone.graph.empty());
    CHECK(gone.emptied);
    auto k22 = complete_hypergraph(3, 22);
    auto same = peel_to_min_codegree(k22, make_rational(19, 3));
    CHECK(same.graph == k22);
    CHECK(same.rounds == 0);
}

TEST_CASE("peeling reaches the unique maximal subgraph") {
    Rng rng(23);
    for (int round = 0; round < 30; ++round) {
        auto g = oracle::random_graph(9, 1 + rng.below(3), 4, rng);
        const int k = 2;
        auto peeled = peel_to_min_codegree(g, k).graph;
        // Independent fixed point: remove one low edge at a time in reverse order.
        auto edges = oracle::edges_of(g);
        bool changed = true;
        while (changed) {
            changed = false;
            std::map<std::pair<int, int>, int> deg;
            for (const auto& e : edges)
                for (int i = 0; i < 3; ++i)
                    for (int j = i + 1; j < 3; ++j)
                        ++deg[{e[i], e[j]}];
            for (std::size_t i = edges.size(); i-- > 0;) {
                const auto& e = edges[i];
                if (deg[{e[0], e[1]}] <= k || deg[{e[0], e[2]}] <= k || deg[{e[1], e[2]}] <= k) {
                    edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(i));
                    changed = true;
                    break;
                }
            }
        }
        CHECK(oracle::edges_of(peeled) == edges);
    }
}

TEST_CASE("hg parse and round trip") {
    auto doc = parse_hg("# a comment\n3 5\n2 1 0\n\n4 3 2 # trailing\n");
    CHECK(doc.graph.size() == 2);
    CHECK(doc.graph.edge(0) == VertexSet{0, 1, 2});
    CHECK(format_hg(doc.graph) == "3 5\n0 1 2\n2 3 4\n");
    CHECK(parse_hg(format_hg(doc.graph)).graph == doc.graph);

    auto ordered = parse_hg("3 5\n0 1 2\n1 2 3\n2 3 4\n# order: 0 1 2\n");
    REQUIRE(ordered.order);
    CHECK(parse_hg(format_hg(ordered.graph, ordered.order)).order == ordered.order);
}

TEST_CASE("hg errors carry line numbers") {
    auto line_of = [](const char* text) {
        try {
            parse_hg(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        return -1;
    };
    CHECK(line_of("3 4\n0 1 2\n0 1 2\n") == 3);
    CHECK(line_of("3 4\n0 1\n") == 2);
    CHECK(line_of("# x\n3 4\n0 1 9\n") == 3);
    CHECK(line_of("3 4\n0 1 x\n") == 2);
    CHECK(line_of("3\n") == 1);
    CHECK(line_of("3 5\n0 1 2\n2 3 4\n# order: 0 5\n") == 4);
}
