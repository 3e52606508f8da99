#pragma once

// Independent reference implementations used only by tests. They work on plain
// vectors of sorted triples and share no code with the library beyond I/O types.

#include "tightree/hypergraph.hpp"
#include "tightree/rng.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

namespace oracle {

using Edge = std::vector<int>;
using Edges = std::vector<Edge>;

inline Edges edges_of(const tightree::Hypergraph& g) {
    Edges out;
    for (const auto& e : g.edges())
        out.emplace_back(e.begin(), e.end());
    return out;
}

inline tightree::Hypergraph graph_of(int r, int n, const Edges& edges) {
    std::vector<tightree::VertexSet> es;
    for (const auto& e : edges)
        es.emplace_back(std::vector<tightree::Vertex>(e.begin(), e.end()));
    return tightree::Hypergraph(r, n, std::move(es));
}

inline bool subset(const Edge& small, const Edge& big) {
    return std::all_of(small.begin(), small.end(),
                       [&](int v) { return std::find(big.begin(), big.end(), v) != big.end(); });
}

/// Checks one sequence of edges against the definition of a proper ordering.
inline bool proper(const Edges& seq) {
    if (seq.empty())
        return false;
    std::set<int> seen(seq[0].begin(), seq[0].end());
    for (std::size_t i = 1; i < seq.size(); ++i) {
        std::vector<int> fresh;
        for (int v : seq[i])
            if (!seen.count(v))
                fresh.push_back(v);
        if (fresh.size() != 1)
            return false;
        Edge rest;
        for (int v : seq[i])
            if (v != fresh[0])
                rest.push_back(v);
        bool anchored = false;
        for (std::size_t j = 0; j < i && !anchored; ++j)
            anchored = subset(rest, seq[j]);
        if (!anchored)
            return false;
        seen.insert(seq[i].begin(), seq[i].end());
    }
    return true;
}

/// Tries all t! orderings.
inline bool tight_by_permutations(Edges edges) {
    if (edges.empty())
        return false;
    std::sort(edges.begin(), edges.end());
    do {
        if (proper(edges))
            return true;
    } while (std::next_permutation(edges.begin(), edges.end()));
    return false;
}

/// Minimum trunk size straight from the definition: some proper ordering lists the
/// trunk first and every vertex outside the trunk has degree one.
inline std::optional<std::size_t> min_trunk_by_definition(Edges edges) {
    std::map<int, int> deg;
    for (const auto& e : edges)
        for (int v : e)
            ++deg[v];
    std::optional<std::size_t> best;
    std::sort(edges.begin(), edges.end());
    do {
        if (!proper(edges))
            continue;
        for (std::size_t k = 1; k < edges.size(); ++k) {
            std::set<int> inside;
            for (std::size_t i = 0; i < k; ++i)
                inside.insert(edges[i].begin(), edges[i].end());
            bool ok = true;
            for (auto [v, d] : deg)
                if (!inside.count(v) && d != 1)
                    ok = false;
            if (ok && (!best || k < *best))
                best = k;
        }
    } while (std::next_permutation(edges.begin(), edges.end()));
    return best;
}

/// Sum of edge weights scaled by lcm(1..n): each pair contributes lcm/d(pair) per edge.
struct ScaledSum {
    std::int64_t scaled = 0;
    std::int64_t scale = 1;
    std::int64_t shadow = 0;
};

inline ScaledSum weight_sum_double_count(const Edges& edges, int n) {
    std::int64_t scale = 1;
    for (int k = 1; k <= std::max(n, 1); ++k)
        scale = std::lcm(scale, static_cast<std::int64_t>(k));
    std::map<std::pair<int, int>, int> deg;
    for (const auto& e : edges)
        for (std::size_t i = 0; i < e.size(); ++i)
            for (std::size_t j = i + 1; j < e.size(); ++j)
                ++deg[{e[i], e[j]}];
    ScaledSum s;
    s.scale = scale;
    s.shadow = static_cast<std::int64_t>(deg.size());
    for (const auto& e : edges)
        for (std::size_t i = 0; i < e.size(); ++i)
            for (std::size_t j = i + 1; j < e.size(); ++j)
                s.scaled += scale / deg[{e[i], e[j]}];
    return s;
}

/// Least sorted edge list over all n! relabelings (tiny n only).
inline Edges brute_canonical(const Edges& edges, int n) {
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::optional<Edges> best;
    do {
        Edges mapped;
        for (const auto& e : edges) {
            Edge m;
            for (int v : e)
                m.push_back(perm[static_cast<std::size_t>(v)]);
            std::sort(m.begin(), m.end());
            mapped.push_back(m);
        }
        std::sort(mapped.begin(), mapped.end());
        if (!best || mapped < *best)
            best = mapped;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return *best;
}

inline Edges all_triples(int n) {
    Edges out;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c)
                out.push_back({a, b, c});
    return out;
}

/// Largest family of triples on n points in which every pair lies in at most one
/// triple, by plain branch and bound over triples.
inline std::size_t max_pair_packing(int n) {
    Edges triples = all_triples(n);
    std::size_t best = 0;
    std::vector<std::vector<bool>> used(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n)));
    std::size_t pairs_left = static_cast<std::size_t>(n * (n - 1) / 2);
    std::function<void(std::size_t, std::size_t)> go = [&](std::size_t from, std::size_t count) {
        best = std::max(best, count);
        if (count + pairs_left / 3 <= best)
            return;
        for (std::size_t i = from; i < triples.size(); ++i) {
            const auto& t = triples[i];
            auto& u = used;
            if (u[t[0]][t[1]] || u[t[0]][t[2]] || u[t[1]][t[2]])
                continue;
            u[t[0]][t[1]] = u[t[0]][t[2]] = u[t[1]][t[2]] = true;
            pairs_left -= 3;
            go(i + 1, count + 1);
            pairs_left += 3;
            u[t[0]][t[1]] = u[t[0]][t[2]] = u[t[1]][t[2]] = false;
        }
    };
    go(0, 0);
    return best;
}

/// Random 3-graph on n vertices keeping each triple with probability num/den.
inline tightree::Hypergraph random_graph(int n, std::uint64_t num, std::uint64_t den, tightree::Rng& rng) {
    Edges keep;
    for (auto& t : all_triples(n))
        if (rng.chance(num, den))
            keep.push_back(t);
    return graph_of(3, n, keep);
}

} // namespace oracle
