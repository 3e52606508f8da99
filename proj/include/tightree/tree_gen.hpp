#pragma once

#include "tightree/hypergraph.hpp"
#include "tightree/tight_tree.hpp"

#include <cstdint>
#include <vector>

namespace tightree {

struct EnumeratedTree {
    Hypergraph tree;
    TightTreeWitness witness;
};

/// Every tight r-tree with t edges up to isomorphism, in canonical form on
/// vertices 0..t+r-2, sorted by canonical form. Desk scale: 2 <= r <= 4, 1 <= t <= 7.
std::vector<EnumeratedTree> enumerate_tight_trees(int r, int t, int threads = 1);

struct RandomTree {
    Hypergraph tree;
    TrunkCertificate trunk;
    /// Distinct (r-1)-subsets of trunk edges, sorted, with how many leaf edges hang on each.
    std::vector<VertexSet> attachment_sets;
    std::vector<int> attachment_counts;
};

/// Picks a trunk size uniformly in 1..min(max_trunk, t), grows a random trunk, then
/// spreads the t - |trunk| leaf edges over the trunk's (r-1)-subsets with a uniformly
/// random composition, and finally shuffles vertex ids. Reproducible per seed.
RandomTree random_tight_tree(int r, int t, int max_trunk, std::uint64_t seed);

/// Same, with the trunk size fixed.
RandomTree random_tight_tree_with_trunk(int r, int t, int trunk_size, std::uint64_t seed);

} // namespace tightree
