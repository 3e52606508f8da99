#pragma once

#include "tightree/hypergraph.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace tightree {

/// A proper ordering: every edge after the first brings exactly one new vertex,
/// and its remaining r-1 vertices sit inside an earlier edge.
struct TightTreeWitness {
    /// Edge indices (into the hypergraph's sorted edge list) in placement order.
    std::vector<std::size_t> ordering;
    /// new_vertex[i] for positions i >= 1; position 0 holds nullopt.
    std::vector<std::optional<Vertex>> new_vertex;
    /// anchor[i] is a position j < i whose edge contains ordering[i] minus its new vertex.
    std::vector<std::optional<std::size_t>> anchor;
};

struct OrderingRefutation {
    /// 1-based position of the first edge that breaks the ordering.
    std::size_t failing_index = 0;
    std::string reason;
};

/// Checks one ordering. Throws PreconditionError unless `ordering` is a permutation of all edges.
std::variant<TightTreeWitness, OrderingRefutation> is_proper_ordering(const Hypergraph& h,
                                                                     std::span<const std::size_t> ordering);

/// Backtracking search for a proper ordering; deterministic for a fixed input.
std::optional<TightTreeWitness> find_proper_ordering(const Hypergraph& h);

/// Builds an ordering by always placing the smallest placeable edge, never backtracking.
/// Returns nullopt when that greedy dead-ends.
std::optional<TightTreeWitness> greedy_proper_ordering(const Hypergraph& h);

bool is_tight_tree(const Hypergraph& h);

/// Vertices of degree exactly one.
VertexSet leaves(const Hypergraph& t);

struct TrunkCertificate {
    /// Trunk edge indices, increasing.
    std::vector<std::size_t> trunk_edges;
    /// Proper ordering of the whole tree listing the trunk first.
    TightTreeWitness witness;
};

struct TrunkRefutation {
    std::string reason;
};

/// Throws PreconditionError when `t` is not a tight tree or `trunk` is empty/out of range.
std::variant<TrunkCertificate, TrunkRefutation> is_trunk(const Hypergraph& t, std::vector<std::size_t> trunk);

struct TrunkSearch {
    /// Minimum trunk size, or nullopt when every trunk is larger than the cap.
    std::optional<std::size_t> size;
    std::optional<TrunkCertificate> certificate;
};

/// Searches trunks by increasing size up to `cap`. Requires a tight tree with >= 2 edges.
TrunkSearch min_trunk_size(const Hypergraph& t, std::size_t cap);

/// Leaf counts around a trunk {e1, e2} of a tight 3-tree, e1 = xyu and e2 = xyv.
struct MuProfile {
    Vertex x = 0, y = 0, u = 0, v = 0;
    int xy = 0, xu = 0, xv = 0, yu = 0, yv = 0;
    std::size_t t = 0;

    int sum() const { return xy + xu + xv + yu + yv; }
};

/// Labels x < y on the shared pair, u from e1 and v from e2.
MuProfile mu_profile(const Hypergraph& t, std::size_t e1, std::size_t e2);

} // namespace tightree
