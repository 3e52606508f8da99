#include "tightree/tree_gen.hpp"

#include "tightree/canonical.hpp"
#include "tightree/errors.hpp"
#include "tightree/parallel.hpp"
#include "tightree/rng.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace tightree {

std::vector<EnumeratedTree> enumerate_tight_trees(int r, int t, int threads) {
    if (r < 2 || r > 4 || t < 1 || t > 7)
        throw PreconditionError("tree enumeration is limited to 2 <= r <= 4 and 1 <= t <= 7");

    std::vector<Vertex> first(static_cast<std::size_t>(r));
    std::iota(first.begin(), first.end(), 0);
    std::vector<CanonicalForm> level{canonical_form(Hypergraph(r, r, {VertexSet(first)}))};

    for (int size = 1; size < t; ++size) {
        std::vector<Hypergraph> children;
        for (const auto& parent : level) {
            const int n = parent.n;
            for (const auto& e : parent.edges)
                for (Vertex drop : e) {
                    std::vector<VertexSet> edges = parent.edges;
                    edges.push_back(e.without(drop).with(static_cast<Vertex>(n)));
                    children.emplace_back(r, n + 1, std::move(edges));
                }
        }
        std::vector<CanonicalForm> forms(children.size());
        parallel_for(children.size(), threads, [&](std::size_t i) { forms[i] = canonical_form(children[i]); });
        std::sort(forms.begin(), forms.end());
        forms.erase(std::unique(forms.begin(), forms.end()), forms.end());
        level = std::move(forms);
    }

    std::vector<EnumeratedTree> out;
    out.reserve(level.size());
    for (const auto& form : level) {
        Hypergraph tree = form.to_hypergraph();
        auto witness = find_proper_ordering(tree);
        if (!witness)
            throw InternalDiagnostic("enumerated hypergraph is not a tight tree: " + format_edges(tree));
        out.push_back({std::move(tree), std::move(*witness)});
    }
    return out;
}

namespace {

    /// Uniform composition of `total` into `parts` non-negative parts (stars and bars).
    std::vector<int> random_composition(Rng& rng, int total, std::size_t parts) {
        std::vector<int> counts(parts, 0);
        if (parts == 0)
            return counts;
        const std::size_t slots = static_cast<std::size_t>(total) + parts - 1;
        // Floyd's sampling of parts-1 bar positions among `slots`.
        std::vector<std::size_t> bars;
        for (std::size_t j = slots - (parts - 1); j < slots; ++j) {
            std::size_t pick = rng.below(j + 1);
            if (std::find(bars.begin(), bars.end(), pick) != bars.end())
                pick = j;
            bars.push_back(pick);
        }
        std::sort(bars.begin(), bars.end());
        std::size_t prev = 0, part = 0;
        for (auto b : bars) {
            counts[part++] = static_cast<int>(b - prev);
            prev = b + 1;
        }
        counts[part] = static_cast<int>(slots - prev);
        return counts;
    }

} // namespace

RandomTree random_tight_tree_with_trunk(int r, int t, int trunk_size, std::uint64_t seed) {
    if (r < 2 || t < 1 || trunk_size < 1 || trunk_size > t)
        throw PreconditionError("random tree needs r >= 2 and 1 <= trunk size <= t");
    Rng rng(seed);

    std::vector<VertexSet> trunk;
    std::vector<Vertex> first(static_cast<std::size_t>(r));
    std::iota(first.begin(), first.end(), 0);
    trunk.emplace_back(first);
    Vertex next = r;
    for (int i = 1; i < trunk_size; ++i) {
        const auto& host = trunk[rng.below(trunk.size())];
        Vertex drop = host[rng.below(host.size())];
        trunk.push_back(host.without(drop).with(next++));
    }

    std::vector<VertexSet> sets;
    for (const auto& e : trunk)
        for (Vertex v : e)
            sets.push_back(e.without(v));
    std::sort(sets.begin(), sets.end());
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());

    auto counts = random_composition(rng, t - trunk_size, sets.size());
    std::vector<VertexSet> edges = trunk;
    for (std::size_t i = 0; i < sets.size(); ++i)
        for (int k = 0; k < counts[i]; ++k)
            edges.push_back(sets[i].with(next++));

    const int n = t + r - 1;
    std::vector<Vertex> relabel(static_cast<std::size_t>(n));
    std::iota(relabel.begin(), relabel.end(), 0);
    rng.shuffle(relabel);
    auto apply = [&](const VertexSet& s) {
        std::vector<Vertex> vs;
        for (Vertex v : s)
            vs.push_back(relabel[static_cast<std::size_t>(v)]);
        return VertexSet(std::move(vs));
    };
    std::vector<VertexSet> mapped;
    for (const auto& e : edges)
        mapped.push_back(apply(e));
    Hypergraph tree(r, n, mapped);

    std::vector<std::size_t> trunk_index;
    for (const auto& e : trunk)
        trunk_index.push_back(tree.index_of(apply(e)).value());
    auto verdict = is_trunk(tree, trunk_index);
    auto* cert = std::get_if<TrunkCertificate>(&verdict);
    if (!cert)
        throw InternalDiagnostic("random tree generator produced an invalid trunk: " +
                                 std::get<TrunkRefutation>(verdict).reason);

    // Report attachment counts against the relabeled sets, in sorted order.
    std::vector<std::pair<VertexSet, int>> attach;
    for (std::size_t i = 0; i < sets.size(); ++i)
        attach.emplace_back(apply(sets[i]), counts[i]);
    std::sort(attach.begin(), attach.end());
    RandomTree out{std::move(tree), std::move(*cert), {}, {}};
    for (auto& [s, c] : attach) {
        out.attachment_sets.push_back(s);
        out.attachment_counts.push_back(c);
    }
    return out;
}

RandomTree random_tight_tree(int r, int t, int max_trunk, std::uint64_t seed) {
    if (r < 2 || t < 1 || max_trunk < 1)
        throw PreconditionError("random tree needs r >= 2, t >= 1 and max_trunk >= 1");
    Rng rng(seed ^ 0x5bd1e995u);
    int size = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(std::min(max_trunk, t))));
    return random_tight_tree_with_trunk(r, t, size, seed);
}

} // namespace tightree
