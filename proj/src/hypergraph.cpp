#include "tightree/hypergraph.hpp"

#include "tightree/errors.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tightree {

VertexSet::VertexSet(std::vector<Vertex> vertices) : v_(std::move(vertices)) {
    std::sort(v_.begin(), v_.end());
    if (std::adjacent_find(v_.begin(), v_.end()) != v_.end())
        throw PreconditionError("repeated vertex in set");
    if (!v_.empty() && v_.front() < 0)
        throw PreconditionError("negative vertex id");
}

VertexSet::VertexSet(std::initializer_list<Vertex> vertices) : VertexSet(std::vector<Vertex>(vertices)) {}

bool VertexSet::contains(Vertex x) const {
    return std::binary_search(v_.begin(), v_.end(), x);
}

bool VertexSet::contains_all(const VertexSet& other) const {
    return std::includes(v_.begin(), v_.end(), other.v_.begin(), other.v_.end());
}

VertexSet VertexSet::without(Vertex x) const {
    VertexSet out;
    out.v_.reserve(v_.size());
    for (Vertex y : v_)
        if (y != x)
            out.v_.push_back(y);
    return out;
}

VertexSet VertexSet::with(Vertex x) const {
    if (contains(x))
        return *this;
    VertexSet out = *this;
    out.v_.insert(std::upper_bound(out.v_.begin(), out.v_.end(), x), x);
    return out;
}

VertexSet VertexSet::minus(const VertexSet& other) const {
    VertexSet out;
    std::set_difference(v_.begin(), v_.end(), other.v_.begin(), other.v_.end(), std::back_inserter(out.v_));
    return out;
}

VertexSet VertexSet::intersect(const VertexSet& other) const {
    VertexSet out;
    std::set_intersection(v_.begin(), v_.end(), other.v_.begin(), other.v_.end(), std::back_inserter(out.v_));
    return out;
}

std::string VertexSet::to_string() const {
    std::string s = "{";
    for (std::size_t i = 0; i < v_.size(); ++i) {
        if (i)
            s += ',';
        s += std::to_string(v_[i]);
    }
    return s + "}";
}

std::size_t VertexSetHash::operator()(const VertexSet& s) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ULL ^ s.size();
    for (Vertex v : s)
        h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

std::vector<VertexSet> subsets_of_size(const VertexSet& s, std::size_t k) {
    std::vector<VertexSet> out;
    if (k > s.size())
        return out;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i)
        idx[i] = i;
    while (true) {
        std::vector<Vertex> pick;
        pick.reserve(k);
        for (auto i : idx)
            pick.push_back(s[i]);
        out.emplace_back(std::move(pick));
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == s.size() - k + (i - 1))
            --i;
        if (i == 0)
            break;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j)
            idx[j] = idx[j - 1] + 1;
    }
    return out;
}

Hypergraph::Hypergraph(int r, int n) : r_(r), n_(n) {
    if (r < 1)
        throw PreconditionError("uniformity must be positive");
    if (n < 0)
        throw PreconditionError("vertex count must be non-negative");
}

Hypergraph::Hypergraph(int r, int n, std::vector<VertexSet> edges) : Hypergraph(r, n) {
    for (const auto& e : edges) {
        if (static_cast<int>(e.size()) != r)
            throw PreconditionError("edge " + e.to_string() + " does not have " + std::to_string(r) + " vertices");
        if (!e.empty() && e.vertices().back() >= n)
            throw PreconditionError("edge " + e.to_string() + " uses a vertex outside 0.." + std::to_string(n - 1));
    }
    std::sort(edges.begin(), edges.end());
    auto dup = std::adjacent_find(edges.begin(), edges.end());
    if (dup != edges.end())
        throw PreconditionError("duplicate edge " + dup->to_string());
    edges_ = std::move(edges);
}

bool Hypergraph::contains(const VertexSet& e) const {
    return std::binary_search(edges_.begin(), edges_.end(), e);
}

std::optional<std::size_t> Hypergraph::index_of(const VertexSet& e) const {
    auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
    if (it == edges_.end() || *it != e)
        return std::nullopt;
    return static_cast<std::size_t>(it - edges_.begin());
}

std::vector<Vertex> Hypergraph::active_vertices() const {
    std::set<Vertex> seen;
    for (const auto& e : edges_)
        seen.insert(e.begin(), e.end());
    return {seen.begin(), seen.end()};
}

Hypergraph Hypergraph::with_edge(const VertexSet& e) const {
    auto edges = edges_;
    edges.push_back(e);
    return Hypergraph(r_, n_, std::move(edges));
}

Hypergraph Hypergraph::subgraph(std::span<const std::size_t> edge_indices) const {
    std::vector<VertexSet> edges;
    edges.reserve(edge_indices.size());
    for (auto i : edge_indices)
        edges.push_back(edges_.at(i));
    return Hypergraph(r_, n_, std::move(edges));
}

std::string format_edges(const Hypergraph& g) {
    std::string out;
    for (const auto& e : g.edges()) {
        if (!out.empty())
            out += ' ';
        out += e.to_string();
    }
    return out;
}

Hypergraph complete_hypergraph(int r, int n) {
    std::vector<Vertex> all(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        all[static_cast<std::size_t>(i)] = i;
    return Hypergraph(r, n, subsets_of_size(VertexSet(all), static_cast<std::size_t>(r)));
}

LinkIndex::LinkIndex(const Hypergraph& g) {
    for (const auto& e : g.edges())
        for (Vertex v : e)
            table_[e.without(v)].push_back(v);
    for (auto& [d, nb] : table_)
        std::sort(nb.begin(), nb.end());
}

std::size_t LinkIndex::degree(const VertexSet& d) const {
    auto it = table_.find(d);
    return it == table_.end() ? 0 : it->second.size();
}

std::span<const Vertex> LinkIndex::neighbours(const VertexSet& d) const {
    auto it = table_.find(d);
    if (it == table_.end())
        return {};
    return it->second;
}

std::vector<VertexSet> LinkIndex::shadow() const {
    std::vector<VertexSet> out;
    out.reserve(table_.size());
    for (const auto& [d, nb] : table_)
        out.push_back(d);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<VertexSet> shadow(const Hypergraph& g) {
    return LinkIndex(g).shadow();
}

std::vector<VertexSet> link(const Hypergraph& g, const VertexSet& d) {
    if (static_cast<int>(d.size()) >= g.r())
        throw PreconditionError("link of a set with at least r vertices");
    std::vector<VertexSet> out;
    for (const auto& e : g.edges())
        if (e.contains_all(d))
            out.push_back(e.minus(d));
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t degree(const Hypergraph& g, const VertexSet& d) {
    std::size_t count = 0;
    for (const auto& e : g.edges())
        if (e.contains_all(d))
            ++count;
    return count;
}

std::size_t min_p_degree(const Hypergraph& g, int p) {
    if (p < 1 || p > g.r() - 1)
        throw PreconditionError("p must lie in 1..r-1");
    if (g.empty())
        throw PreconditionError("minimum degree of the empty hypergraph is undefined");
    std::map<VertexSet, std::size_t> counts;
    for (const auto& e : g.edges())
        for (auto& s : subsets_of_size(e, static_cast<std::size_t>(p)))
            ++counts[s];
    std::size_t best = counts.begin()->second;
    for (const auto& [s, c] : counts)
        best = std::min(best, c);
    return best;
}

Rational default_weight_pair(const LinkIndex& index, const VertexSet& d) {
    auto deg = index.degree(d);
    if (deg == 0)
        throw PreconditionError("set " + d.to_string() + " is not in the shadow");
    return Rational(1, static_cast<long long>(deg));
}

Rational default_weight_pair(const Hypergraph& g, const VertexSet& d) {
    if (static_cast<int>(d.size()) != g.r() - 1)
        throw PreconditionError("default weight is defined on (r-1)-sets");
    return default_weight_pair(LinkIndex(g), d);
}

Rational default_weight_edge(const LinkIndex& index, const VertexSet& e) {
    Rational w = 0;
    for (Vertex v : e)
        w += default_weight_pair(index, e.without(v));
    return w;
}

Rational default_weight_edge(const Hypergraph& g, const VertexSet& e) {
    if (!g.contains(e))
        throw PreconditionError("edge " + e.to_string() + " is not in the hypergraph");
    return default_weight_edge(LinkIndex(g), e);
}

WeightIdentity weight_identity_check(const Hypergraph& g) {
    LinkIndex index(g);
    WeightIdentity out;
    for (const auto& e : g.edges())
        out.lhs += default_weight_edge(index, e);
    out.rhs = index.shadow_size();
    out.equal = out.lhs == Rational(static_cast<long long>(out.rhs));
    return out;
}

PeelResult peel_to_min_codegree(const Hypergraph& g, const Rational& q) {
    const BigInt threshold = floor(q);
    std::vector<VertexSet> edges(g.edges().begin(), g.edges().end());
    PeelResult out{g, 0, 0, false};
    while (true) {
        Hypergraph current(g.r(), g.n(), edges);
        LinkIndex index(current);
        std::set<VertexSet> low;
        for (const auto& d : index.shadow())
            if (BigInt(index.degree(d)) <= threshold)
                low.insert(d);
        if (low.empty()) {
            out.graph = std::move(current);
            break;
        }
        ++out.rounds;
        std::vector<VertexSet> kept;
        kept.reserve(edges.size());
        for (const auto& e : edges) {
            bool hit = false;
            for (Vertex v : e)
                if (low.contains(e.without(v))) {
                    hit = true;
                    break;
                }
            if (hit)
                ++out.removed_edges;
            else
                kept.push_back(e);
        }
        edges = std::move(kept);
    }
    out.emptied = out.graph.empty();
    return out;
}

} // namespace tightree
