#include "tightree/canonical.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace tightree {

std::string CanonicalForm::key() const {
    std::string k;
    k.reserve(edges.size() * static_cast<std::size_t>(r) + 4);
    k.push_back(static_cast<char>(r));
    k.push_back(static_cast<char>(n & 0xff));
    k.push_back(static_cast<char>((n >> 8) & 0xff));
    for (const auto& e : edges)
        for (Vertex v : e) {
            k.push_back(static_cast<char>(v & 0xff));
            k.push_back(static_cast<char>((v >> 8) & 0xff));
        }
    return k;
}

namespace {

    /// Refines vertex colours until stable. Colours are ranks of invariant
    /// signatures, so the resulting ordered partition is isomorphism-invariant.
    std::vector<int> refine(const Hypergraph& g) {
        const auto n = static_cast<std::size_t>(g.n());
        std::vector<int> colour(n, 0);
        std::vector<std::vector<std::size_t>> incident(n);
        for (std::size_t i = 0; i < g.size(); ++i)
            for (Vertex v : g.edge(i))
                incident[static_cast<std::size_t>(v)].push_back(i);

        std::size_t classes = 1;
        while (true) {
            using Signature = std::pair<int, std::vector<std::vector<int>>>;
            std::vector<Signature> sig(n);
            for (std::size_t v = 0; v < n; ++v) {
                sig[v].first = colour[v];
                for (auto ei : incident[v]) {
                    std::vector<int> others;
                    for (Vertex w : g.edge(ei))
                        if (static_cast<std::size_t>(w) != v)
                            others.push_back(colour[static_cast<std::size_t>(w)]);
                    std::sort(others.begin(), others.end());
                    sig[v].second.push_back(std::move(others));
                }
                std::sort(sig[v].second.begin(), sig[v].second.end());
            }
            std::vector<Signature> distinct = sig;
            std::sort(distinct.begin(), distinct.end());
            distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
            for (std::size_t v = 0; v < n; ++v)
                colour[v] = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), sig[v]) - distinct.begin());
            if (distinct.size() == classes)
                break;
            classes = distinct.size();
        }
        return colour;
    }

    std::vector<VertexSet> relabel(const Hypergraph& g, const std::vector<Vertex>& image) {
        std::vector<VertexSet> out;
        out.reserve(g.size());
        for (const auto& e : g.edges()) {
            std::vector<Vertex> vs;
            vs.reserve(e.size());
            for (Vertex v : e)
                vs.push_back(image[static_cast<std::size_t>(v)]);
            out.emplace_back(std::move(vs));
        }
        std::sort(out.begin(), out.end());
        return out;
    }

} // namespace

CanonicalForm canonical_form(const Hypergraph& g) {
    const auto colour = refine(g);
    std::map<int, std::vector<Vertex>> cells;
    for (std::size_t v = 0; v < colour.size(); ++v)
        cells[colour[v]].push_back(static_cast<Vertex>(v));

    // Cell k receives the consecutive labels after the cells before it; within a
    // cell every arrangement is tried.
    std::vector<std::vector<Vertex>> members;
    std::vector<Vertex> base;
    Vertex next = 0;
    for (auto& [c, vs] : cells) {
        members.push_back(vs);
        base.push_back(next);
        next += static_cast<Vertex>(vs.size());
    }

    std::vector<Vertex> image(colour.size(), 0);
    std::vector<VertexSet> best;
    bool have_best = false;

    // Odometer over the per-cell permutations.
    std::vector<bool> touched(colour.size(), false);
    for (const auto& e : g.edges())
        for (Vertex v : e)
            touched[static_cast<std::size_t>(v)] = true;
    std::vector<std::vector<Vertex>> perm = members;
    std::vector<std::size_t> movable;
    for (std::size_t c = 0; c < perm.size(); ++c)
        if (touched[static_cast<std::size_t>(perm[c].front())])
            movable.push_back(c);
    while (true) {
        for (std::size_t c = 0; c < perm.size(); ++c)
            for (std::size_t i = 0; i < perm[c].size(); ++i)
                image[static_cast<std::size_t>(perm[c][i])] = base[c] + static_cast<Vertex>(i);
        auto candidate = relabel(g, image);
        if (!have_best || candidate < best) {
            best = std::move(candidate);
            have_best = true;
        }
        // Isolated vertices never show up in the edge list, so their cells stay fixed.
        std::size_t k = 0;
        while (k < movable.size() && !std::next_permutation(perm[movable[k]].begin(), perm[movable[k]].end()))
            ++k;
        if (k == movable.size())
            break;
    }
    return CanonicalForm{g.r(), g.n(), std::move(best)};
}

bool isomorphic(const Hypergraph& a, const Hypergraph& b) {
    if (a.r() != b.r() || a.n() != b.n() || a.size() != b.size())
        return false;
    return canonical_form(a) == canonical_form(b);
}

} // namespace tightree
