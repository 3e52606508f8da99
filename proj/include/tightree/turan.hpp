#pragma once

#include "tightree/hypergraph.hpp"
#include "tightree/trunk_embedder.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tightree {

/// ((t-1)/r) C(n, r-1).
Rational kalai_bound(int r, int t, int n);
/// ((t-1)/r) |∂G|.
Rational shadow_bound(const Hypergraph& g, int t);
/// ((t-1)/r + (r^r + 1 - 1/r)(c-1)) C(n, r-1): the bound for trees whose trunks have c edges.
Rational bounded_trunk_bound(int r, int t, int c, int n);

struct TuranStats {
    std::uint64_t graphs_examined = 0;
    std::uint64_t embed_nodes = 0;
    /// Number of pairwise non-isomorphic pattern-free graphs kept per edge count.
    std::vector<std::size_t> level_sizes;
};

struct TuranResult {
    int n = 0;
    std::size_t value = 0;
    /// Least canonical form among the largest pattern-free graphs found.
    Hypergraph witness{3, 0};
    bool complete = false;
    Rational bound;
    /// True when a completed search beat ((t-1)/r) C(n, r-1).
    bool exceeds_bound = false;
    TuranStats stats;

    std::vector<std::string> lines() const;
};

/// Largest number of edges in an n-vertex r-graph without a copy of `pattern`,
/// grown edge by edge over isomorphism classes. `budget` caps the number of
/// candidate graphs examined; when hit, the result is flagged incomplete.
TuranResult brute_force_turan(int n, const Hypergraph& pattern, std::uint64_t budget = 5'000'000, int threads = 1);

struct SteinerResult {
    Hypergraph graph{3, 0};
    std::vector<VertexSet> blocks;
    Rational kalai;
    Rational shadow;
    /// e(G) / kalai_bound.
    Rational ratio;
    bool blocks_linear = false;

    std::vector<std::string> lines() const;
};

/// True when every two blocks share at most one vertex.
bool blocks_pairwise_linear(const std::vector<VertexSet>& blocks);

/// Packs (t+1)-sets whose pairs are pairwise uncovered, taking the lexicographically
/// first admissible block each time, and places a complete 3-graph on every block.
/// No tight 3-tree with t edges fits: it spans t+2 vertices inside one block.
SteinerResult steiner_lower_bound(int n, int t);

struct AuditReport {
    std::size_t edges = 0;
    Rational bound;
    bool exceeds = false;
    std::optional<Trunk2Result> copy;

    std::vector<std::string> lines() const;
};

/// Compares e(G) with ((t-1)/3)|∂G|; above it, runs the trunk embedder and reports the copy.
AuditReport bound_audit(const Hypergraph& host, const Hypergraph& tree, const EmbedOptions& options = {});

} // namespace tightree
