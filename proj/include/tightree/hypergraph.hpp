#pragma once

#include "tightree/rational.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace tightree {

using Vertex = std::int32_t;

/// A strictly increasing list of vertex ids.
class VertexSet {
public:
    VertexSet() = default;
    /// Sorts `vertices`; throws PreconditionError on repeats or negative ids.
    explicit VertexSet(std::vector<Vertex> vertices);
    VertexSet(std::initializer_list<Vertex> vertices);

    std::size_t size() const noexcept { return v_.size(); }
    bool empty() const noexcept { return v_.empty(); }
    Vertex operator[](std::size_t i) const { return v_[i]; }
    auto begin() const noexcept { return v_.begin(); }
    auto end() const noexcept { return v_.end(); }
    const std::vector<Vertex>& vertices() const noexcept { return v_; }

    bool contains(Vertex x) const;
    bool contains_all(const VertexSet& other) const;
    VertexSet without(Vertex x) const;
    VertexSet with(Vertex x) const;
    VertexSet minus(const VertexSet& other) const;
    VertexSet intersect(const VertexSet& other) const;

    std::string to_string() const;

    auto operator<=>(const VertexSet&) const = default;
    bool operator==(const VertexSet&) const = default;

private:
    std::vector<Vertex> v_;
};

struct VertexSetHash {
    std::size_t operator()(const VertexSet& s) const noexcept;
};

/// Every k-subset of `s`, in lexicographic order.
std::vector<VertexSet> subsets_of_size(const VertexSet& s, std::size_t k);

/// An r-uniform hypergraph on vertices 0..n-1. Edges are kept sorted and unique.
class Hypergraph {
public:
    Hypergraph(int r, int n);
    /// Validates uniformity and vertex range; throws PreconditionError on duplicates.
    Hypergraph(int r, int n, std::vector<VertexSet> edges);

    int r() const noexcept { return r_; }
    int n() const noexcept { return n_; }
    std::size_t size() const noexcept { return edges_.size(); }
    bool empty() const noexcept { return edges_.empty(); }
    std::span<const VertexSet> edges() const noexcept { return edges_; }
    const VertexSet& edge(std::size_t i) const { return edges_[i]; }

    bool contains(const VertexSet& e) const;
    std::optional<std::size_t> index_of(const VertexSet& e) const;

    /// Vertices that lie in at least one edge, increasing.
    std::vector<Vertex> active_vertices() const;

    Hypergraph with_edge(const VertexSet& e) const;
    Hypergraph subgraph(std::span<const std::size_t> edge_indices) const;

    bool operator==(const Hypergraph&) const = default;

private:
    int r_;
    int n_;
    std::vector<VertexSet> edges_;
};

/// "{0,1,2} {0,1,3}" in sorted edge order.
std::string format_edges(const Hypergraph& g);

/// The complete r-graph on n vertices.
Hypergraph complete_hypergraph(int r, int n);

/// Codegree table: every (r-1)-set of the shadow with its neighbourhood N_G(D).
class LinkIndex {
public:
    explicit LinkIndex(const Hypergraph& g);

    std::size_t degree(const VertexSet& d) const;
    /// Empty when `d` is not in the shadow.
    std::span<const Vertex> neighbours(const VertexSet& d) const;
    bool in_shadow(const VertexSet& d) const { return table_.contains(d); }
    std::size_t shadow_size() const noexcept { return table_.size(); }
    /// Shadow elements in lexicographic order.
    std::vector<VertexSet> shadow() const;

private:
    std::unordered_map<VertexSet, std::vector<Vertex>, VertexSetHash> table_;
};

std::vector<VertexSet> shadow(const Hypergraph& g);

/// L_G(D) = { e \ D : D ⊆ e }. Throws when |D| >= r.
std::vector<VertexSet> link(const Hypergraph& g, const VertexSet& d);

std::size_t degree(const Hypergraph& g, const VertexSet& d);

/// Minimum degree over the p-sets covered by some edge. Throws on the empty graph.
std::size_t min_p_degree(const Hypergraph& g, int p);

/// 1 / d_G(D). Throws when D is not in the shadow.
Rational default_weight_pair(const Hypergraph& g, const VertexSet& d);
Rational default_weight_pair(const LinkIndex& index, const VertexSet& d);
/// Sum of the default weights of the (r-1)-subsets of `e`. Throws when e ∉ E(G).
Rational default_weight_edge(const Hypergraph& g, const VertexSet& e);
Rational default_weight_edge(const LinkIndex& index, const VertexSet& e);

struct WeightIdentity {
    Rational lhs;
    std::size_t rhs = 0;
    bool equal = false;
};

/// Sum of w(e) over all edges against |shadow|.
WeightIdentity weight_identity_check(const Hypergraph& g);

struct PeelResult {
    Hypergraph graph;
    int rounds = 0;
    std::size_t removed_edges = 0;
    bool emptied = false;
};

/// Repeatedly removes every edge through an (r-1)-set of degree <= floor(q),
/// scanning the shadow lexicographically and deleting in batches.
PeelResult peel_to_min_codegree(const Hypergraph& g, const Rational& q);

} // namespace tightree
