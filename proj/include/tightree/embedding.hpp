#pragma once

#include "tightree/hypergraph.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tightree {

/// Injective vertex map V(T) -> V(G) plus the image of every tree edge.
struct Embedding {
    std::map<Vertex, Vertex> map;
    /// Aligned with the tree's sorted edge list.
    std::vector<VertexSet> edge_images;

    std::string to_string() const;
};

/// Recomputes injectivity and edge membership from scratch; stored edge images are ignored.
bool validate_embedding(const Hypergraph& tree, const Hypergraph& host, const Embedding& embedding);

/// Fills `edge_images` from `map`.
void compute_edge_images(const Hypergraph& tree, Embedding& embedding);

enum class SearchStatus { Found, NoEmbedding, BudgetExhausted };

std::string to_string(SearchStatus status);

struct BacktrackResult {
    SearchStatus status = SearchStatus::NoEmbedding;
    std::optional<Embedding> embedding;
    std::uint64_t nodes = 0;
};

/// Complete backtracking over injections, placing tree edges in a proper ordering
/// (or a greedy overlap order when the pattern is not a tight tree). `budget`
/// bounds the number of candidate assignments; NoEmbedding is only reported when
/// the search space was exhausted within it.
BacktrackResult embed_backtracking(const Hypergraph& tree, const Hypergraph& host,
                                   std::uint64_t budget = 50'000'000);

/// Vertex counts of the tight components of `g` (edges joined when they share an
/// (r-1)-set), largest first.
std::vector<std::size_t> tight_component_sizes(const Hypergraph& g);

} // namespace tightree
