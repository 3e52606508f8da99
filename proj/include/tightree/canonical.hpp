#pragma once

#include "tightree/hypergraph.hpp"

#include <string>
#include <vector>

namespace tightree {

/// Isomorphism-invariant form: the lexicographically least sorted edge list over
/// all vertex relabelings that respect an invariant refinement of the vertices.
struct CanonicalForm {
    int r = 0;
    int n = 0;
    std::vector<VertexSet> edges;

    auto operator<=>(const CanonicalForm&) const = default;
    bool operator==(const CanonicalForm&) const = default;

    Hypergraph to_hypergraph() const { return Hypergraph(r, n, edges); }
    /// Compact key for hashing/dedup.
    std::string key() const;
};

/// Desk scale only: cost grows with the product of refined cell sizes factorial.
CanonicalForm canonical_form(const Hypergraph& g);

bool isomorphic(const Hypergraph& a, const Hypergraph& b);

} // namespace tightree
