#include "tightree/tight_tree.hpp"

#include "tightree/errors.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <unordered_set>

namespace tightree {

namespace {

    void require_permutation(const Hypergraph& h, std::span<const std::size_t> ordering) {
        if (ordering.size() != h.size())
            throw PreconditionError("ordering must list every edge exactly once");
        std::vector<bool> used(h.size(), false);
        for (auto i : ordering) {
            if (i >= h.size() || used[i])
                throw PreconditionError("ordering must list every edge exactly once");
            used[i] = true;
        }
    }

    /// Tracks the vertices covered by a growing prefix of edges.
    struct Cover {
        explicit Cover(int n) : count(static_cast<std::size_t>(std::max(n, 0)), 0) {}

        std::vector<int> count;

        void add(const VertexSet& e) {
            for (Vertex v : e)
                ++count[static_cast<std::size_t>(v)];
        }
        void remove(const VertexSet& e) {
            for (Vertex v : e)
                --count[static_cast<std::size_t>(v)];
        }
        bool seen(Vertex v) const { return count[static_cast<std::size_t>(v)] > 0; }
    };

    /// If `e` can follow the placed edges, returns (new vertex, anchor position).
    std::optional<std::pair<Vertex, std::size_t>> placement(const Hypergraph& h, const Cover& cover,
                                                            const std::vector<std::size_t>& placed, const VertexSet& e) {
        std::optional<Vertex> fresh;
        for (Vertex v : e) {
            if (!cover.seen(v)) {
                if (fresh)
                    return std::nullopt;
                fresh = v;
            }
        }
        if (!fresh)
            return std::nullopt;
        VertexSet rest = e.without(*fresh);
        for (std::size_t j = 0; j < placed.size(); ++j)
            if (h.edge(placed[j]).contains_all(rest))
                return std::make_pair(*fresh, j);
        return std::nullopt;
    }

    TightTreeWitness start_witness(std::size_t first) {
        TightTreeWitness w;
        w.ordering.push_back(first);
        w.new_vertex.push_back(std::nullopt);
        w.anchor.push_back(std::nullopt);
        return w;
    }

} // namespace

std::variant<TightTreeWitness, OrderingRefutation> is_proper_ordering(const Hypergraph& h,
                                                                     std::span<const std::size_t> ordering) {
    require_permutation(h, ordering);
    if (ordering.empty())
        return OrderingRefutation{1, "no edges"};
    Cover cover(h.n());
    TightTreeWitness w = start_witness(ordering[0]);
    cover.add(h.edge(ordering[0]));
    for (std::size_t i = 1; i < ordering.size(); ++i) {
        const auto& e = h.edge(ordering[i]);
        std::size_t fresh_count = 0;
        for (Vertex v : e)
            fresh_count += cover.seen(v) ? 0 : 1;
        if (fresh_count != 1)
            return OrderingRefutation{i + 1, "edge " + e.to_string() + " brings " + std::to_string(fresh_count) +
                                                 " new vertices"};
        auto where = placement(h, cover, w.ordering, e);
        if (!where)
            return OrderingRefutation{i + 1, "edge " + e.to_string() + " is not anchored in an earlier edge"};
        w.ordering.push_back(ordering[i]);
        w.new_vertex.push_back(where->first);
        w.anchor.push_back(where->second);
        cover.add(e);
    }
    return w;
}

std::optional<TightTreeWitness> find_proper_ordering(const Hypergraph& h) {
    if (h.empty())
        return std::nullopt;
    const std::size_t t = h.size();
    std::unordered_set<std::vector<bool>> dead;
    std::vector<bool> used(t, false);
    Cover cover(h.n());
    TightTreeWitness w;

    std::function<bool()> extend = [&]() -> bool {
        if (w.ordering.size() == t)
            return true;
        if (dead.contains(used))
            return false;
        for (std::size_t i = 0; i < t; ++i) {
            if (used[i])
                continue;
            auto where = placement(h, cover, w.ordering, h.edge(i));
            if (!where)
                continue;
            used[i] = true;
            cover.add(h.edge(i));
            w.ordering.push_back(i);
            w.new_vertex.push_back(where->first);
            w.anchor.push_back(where->second);
            if (extend())
                return true;
            w.ordering.pop_back();
            w.new_vertex.pop_back();
            w.anchor.pop_back();
            cover.remove(h.edge(i));
            used[i] = false;
        }
        dead.insert(used);
        return false;
    };

    for (std::size_t first = 0; first < t; ++first) {
        w = start_witness(first);
        used.assign(t, false);
        used[first] = true;
        cover = Cover(h.n());
        cover.add(h.edge(first));
        if (extend())
            return w;
    }
    return std::nullopt;
}

std::optional<TightTreeWitness> greedy_proper_ordering(const Hypergraph& h) {
    if (h.empty())
        return std::nullopt;
    std::vector<bool> used(h.size(), false);
    Cover cover(h.n());
    TightTreeWitness w = start_witness(0);
    used[0] = true;
    cover.add(h.edge(0));
    while (w.ordering.size() < h.size()) {
        bool placed = false;
        for (std::size_t i = 0; i < h.size() && !placed; ++i) {
            if (used[i])
                continue;
            if (auto where = placement(h, cover, w.ordering, h.edge(i))) {
                used[i] = true;
                cover.add(h.edge(i));
                w.ordering.push_back(i);
                w.new_vertex.push_back(where->first);
                w.anchor.push_back(where->second);
                placed = true;
            }
        }
        if (!placed)
            return std::nullopt;
    }
    return w;
}

bool is_tight_tree(const Hypergraph& h) {
    return find_proper_ordering(h).has_value();
}

VertexSet leaves(const Hypergraph& t) {
    std::map<Vertex, int> deg;
    for (const auto& e : t.edges())
        for (Vertex v : e)
            ++deg[v];
    std::vector<Vertex> out;
    for (auto [v, d] : deg)
        if (d == 1)
            out.push_back(v);
    return VertexSet(std::move(out));
}

std::variant<TrunkCertificate, TrunkRefutation> is_trunk(const Hypergraph& t, std::vector<std::size_t> trunk) {
    if (trunk.empty())
        throw PreconditionError("trunk must be nonempty");
    std::sort(trunk.begin(), trunk.end());
    if (std::adjacent_find(trunk.begin(), trunk.end()) != trunk.end() || trunk.back() >= t.size())
        throw PreconditionError("trunk edge indices must be distinct and in range");
    if (!is_tight_tree(t))
        throw PreconditionError("hypergraph is not a tight tree");

    Hypergraph sub = t.subgraph(trunk);
    auto sub_witness = find_proper_ordering(sub);
    if (!sub_witness)
        return TrunkRefutation{"trunk edges do not form a tight tree"};

    std::vector<bool> in_trunk(t.size(), false);
    std::vector<bool> covered(static_cast<std::size_t>(t.n()), false);
    for (auto i : trunk) {
        in_trunk[i] = true;
        for (Vertex v : t.edge(i))
            covered[static_cast<std::size_t>(v)] = true;
    }
    VertexSet leaf_set = leaves(t);
    for (Vertex v : t.active_vertices())
        if (!covered[static_cast<std::size_t>(v)] && !leaf_set.contains(v))
            return TrunkRefutation{"vertex " + std::to_string(v) + " outside the trunk is not a leaf"};

    // Trunk first (in its own proper order), then the leaf edges by index.
    TightTreeWitness w;
    std::vector<std::size_t> trunk_position(t.size(), 0);
    for (std::size_t p = 0; p < sub_witness->ordering.size(); ++p) {
        std::size_t edge = t.index_of(sub.edge(sub_witness->ordering[p])).value();
        trunk_position[edge] = p;
        w.ordering.push_back(edge);
        w.new_vertex.push_back(sub_witness->new_vertex[p]);
        w.anchor.push_back(sub_witness->anchor[p]);
    }
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (in_trunk[i])
            continue;
        const auto& e = t.edge(i);
        std::optional<Vertex> outside;
        for (Vertex v : e) {
            if (!covered[static_cast<std::size_t>(v)]) {
                if (outside)
                    return TrunkRefutation{"edge " + e.to_string() + " has two vertices outside the trunk"};
                outside = v;
            }
        }
        if (!outside)
            return TrunkRefutation{"edge " + e.to_string() + " lies inside the trunk's vertex set but is not a trunk edge"};
        VertexSet rest = e.without(*outside);
        std::optional<std::size_t> anchor;
        for (std::size_t p = 0; p < sub_witness->ordering.size() && !anchor; ++p)
            if (t.edge(w.ordering[p]).contains_all(rest))
                anchor = p;
        if (!anchor)
            return TrunkRefutation{"edge " + e.to_string() + " is not attached to an (r-1)-subset of a trunk edge"};
        w.ordering.push_back(i);
        w.new_vertex.push_back(outside);
        w.anchor.push_back(anchor);
    }
    return TrunkCertificate{std::move(trunk), std::move(w)};
}

TrunkSearch min_trunk_size(const Hypergraph& t, std::size_t cap) {
    if (t.size() < 2)
        throw PreconditionError("trunks are defined for tight trees with at least two edges");
    if (!is_tight_tree(t))
        throw PreconditionError("hypergraph is not a tight tree");

    // An edge without a leaf can never be a leaf attachment, so it is in every trunk.
    VertexSet leaf_set = leaves(t);
    std::vector<std::size_t> forced, optional_edges;
    for (std::size_t i = 0; i < t.size(); ++i) {
        bool has_leaf = std::any_of(t.edge(i).begin(), t.edge(i).end(), [&](Vertex v) { return leaf_set.contains(v); });
        (has_leaf ? optional_edges : forced).push_back(i);
    }

    const std::size_t upper = std::min(cap, t.size());
    for (std::size_t k = std::max<std::size_t>(1, forced.size()); k <= upper; ++k) {
        const std::size_t extra = k - forced.size();
        if (extra > optional_edges.size())
            break;
        std::vector<std::size_t> pick(extra);
        std::iota(pick.begin(), pick.end(), 0);
        while (true) {
            std::vector<std::size_t> trunk = forced;
            for (auto p : pick)
                trunk.push_back(optional_edges[p]);
            auto verdict = is_trunk(t, trunk);
            if (auto* cert = std::get_if<TrunkCertificate>(&verdict))
                return TrunkSearch{k, std::move(*cert)};
            std::size_t i = extra;
            while (i > 0 && pick[i - 1] == optional_edges.size() - extra + (i - 1))
                --i;
            if (i == 0)
                break;
            ++pick[i - 1];
            for (std::size_t j = i; j < extra; ++j)
                pick[j] = pick[j - 1] + 1;
        }
    }
    return TrunkSearch{};
}

MuProfile mu_profile(const Hypergraph& t, std::size_t e1, std::size_t e2) {
    if (t.r() != 3)
        throw PreconditionError("mu profile is defined for 3-uniform trees");
    if (e1 == e2 || e1 >= t.size() || e2 >= t.size())
        throw PreconditionError("mu profile needs two distinct trunk edges");
    if (!std::holds_alternative<TrunkCertificate>(is_trunk(t, {e1, e2})))
        throw PreconditionError("edges " + t.edge(e1).to_string() + ", " + t.edge(e2).to_string() + " are not a trunk");
    const auto& a = t.edge(e1);
    const auto& b = t.edge(e2);
    VertexSet shared = a.intersect(b);
    MuProfile mu;
    mu.x = shared[0];
    mu.y = shared[1];
    mu.u = a.minus(shared)[0];
    mu.v = b.minus(shared)[0];
    mu.t = t.size();
    auto d = [&](Vertex p, Vertex q) { return static_cast<int>(degree(t, VertexSet{p, q})); };
    mu.xy = d(mu.x, mu.y) - 2;
    mu.xu = d(mu.x, mu.u) - 1;
    mu.xv = d(mu.x, mu.v) - 1;
    mu.yu = d(mu.y, mu.u) - 1;
    mu.yv = d(mu.y, mu.v) - 1;
    return mu;
}

} // namespace tightree
