#include "tightree/embedding.hpp"

#include "tightree/errors.hpp"
#include "tightree/tight_tree.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace tightree {

std::string Embedding::to_string() const {
    std::string out;
    for (const auto& [from, to] : map) {
        if (!out.empty())
            out += ' ';
        out += std::to_string(from) + "->" + std::to_string(to);
    }
    return out;
}

void compute_edge_images(const Hypergraph& tree, Embedding& embedding) {
    embedding.edge_images.clear();
    for (const auto& e : tree.edges()) {
        std::vector<Vertex> image;
        for (Vertex v : e)
            image.push_back(embedding.map.at(v));
        embedding.edge_images.emplace_back(std::move(image));
    }
}

bool validate_embedding(const Hypergraph& tree, const Hypergraph& host, const Embedding& embedding) {
    if (tree.r() != host.r())
        return false;
    for (Vertex v : tree.active_vertices())
        if (!embedding.map.contains(v))
            return false;
    std::set<Vertex> image;
    for (const auto& [from, to] : embedding.map) {
        if (to < 0 || to >= host.n())
            return false;
        if (!image.insert(to).second)
            return false;
    }
    for (const auto& e : tree.edges()) {
        std::vector<Vertex> mapped;
        for (Vertex v : e)
            mapped.push_back(embedding.map.at(v));
        std::sort(mapped.begin(), mapped.end());
        if (std::adjacent_find(mapped.begin(), mapped.end()) != mapped.end())
            return false;
        if (!host.contains(VertexSet(mapped)))
            return false;
    }
    return true;
}

std::string to_string(SearchStatus status) {
    switch (status) {
    case SearchStatus::Found:
        return "found";
    case SearchStatus::NoEmbedding:
        return "none";
    case SearchStatus::BudgetExhausted:
        return "budget-exhausted";
    }
    return "?";
}

std::vector<std::size_t> tight_component_sizes(const Hypergraph& g) {
    const std::size_t m = g.size();
    std::vector<std::size_t> parent(m);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    std::unordered_map<VertexSet, std::size_t, VertexSetHash> first_edge;
    for (std::size_t i = 0; i < m; ++i)
        for (Vertex v : g.edge(i)) {
            auto [it, fresh] = first_edge.emplace(g.edge(i).without(v), i);
            if (!fresh)
                parent[find(i)] = find(it->second);
        }
    std::map<std::size_t, std::set<Vertex>> vertices;
    for (std::size_t i = 0; i < m; ++i)
        vertices[find(i)].insert(g.edge(i).begin(), g.edge(i).end());
    std::vector<std::size_t> out;
    for (const auto& [root, vs] : vertices)
        out.push_back(vs.size());
    std::sort(out.rbegin(), out.rend());
    return out;
}

namespace {

    struct BudgetExceeded {};

    class Backtracker {
    public:
        Backtracker(const Hypergraph& tree, const Hypergraph& host, std::uint64_t budget)
            : tree_(tree), host_(host), index_(host), budget_(budget) {
            tree_vertices_ = tree.active_vertices();
            build_order();
            build_prunes();
            map_.assign(static_cast<std::size_t>(tree.n()), -1);
            used_.assign(static_cast<std::size_t>(host.n()), false);
            for (std::size_t i = 0; i < host.size(); ++i)
                for (Vertex v : host.edge(i))
                    host_edges_at_[v].push_back(i);
        }

        BacktrackResult run() {
            BacktrackResult out;
            if (tree_.empty()) {
                out.status = SearchStatus::Found;
                out.embedding = Embedding{};
                return out;
            }
            if (tree_vertices_.size() > static_cast<std::size_t>(host_.n()) || tree_.size() > host_.size()) {
                out.status = SearchStatus::NoEmbedding;
                return out;
            }
            try {
                bool found = step(0);
                out.status = found ? SearchStatus::Found : SearchStatus::NoEmbedding;
                if (found) {
                    Embedding emb;
                    for (Vertex v : tree_vertices_)
                        emb.map[v] = map_[static_cast<std::size_t>(v)];
                    compute_edge_images(tree_, emb);
                    out.embedding = std::move(emb);
                }
            } catch (const BudgetExceeded&) {
                out.status = SearchStatus::BudgetExhausted;
            }
            out.nodes = nodes_;
            return out;
        }

    private:
        void build_order() {
            if (auto w = find_proper_ordering(tree_)) {
                order_ = w->ordering;
                tight_ = true;
                return;
            }
            // Not a tight tree: place the edge sharing most vertices with what is already placed.
            std::vector<bool> placed(tree_.size(), false);
            std::set<Vertex> seen;
            for (std::size_t k = 0; k < tree_.size(); ++k) {
                std::size_t best = SIZE_MAX;
                std::size_t best_overlap = 0;
                for (std::size_t i = 0; i < tree_.size(); ++i) {
                    if (placed[i])
                        continue;
                    std::size_t overlap = 0;
                    for (Vertex v : tree_.edge(i))
                        overlap += seen.contains(v) ? 1 : 0;
                    if (best == SIZE_MAX || overlap > best_overlap) {
                        best = i;
                        best_overlap = overlap;
                    }
                }
                placed[best] = true;
                order_.push_back(best);
                seen.insert(tree_.edge(best).begin(), tree_.edge(best).end());
            }
        }

        void build_prunes() {
            // After placing order_[k], every (r-1)-set of the tree that just became fully
            // mapped must have host codegree at least its tree codegree.
            LinkIndex tindex(tree_);
            std::set<VertexSet> done;
            std::set<Vertex> seen;
            checks_.resize(order_.size());
            vertex_checks_.resize(order_.size());
            for (std::size_t k = 0; k < order_.size(); ++k) {
                const auto& e = tree_.edge(order_[k]);
                for (Vertex v : e)
                    if (seen.insert(v).second)
                        vertex_checks_[k].push_back({v, static_cast<std::size_t>(
                                                             std::count_if(tree_.edges().begin(), tree_.edges().end(),
                                                                           [&](const VertexSet& f) { return f.contains(v); }))});
                for (const auto& d : tindex.shadow()) {
                    if (done.contains(d))
                        continue;
                    if (std::all_of(d.begin(), d.end(), [&](Vertex v) { return seen.contains(v); })) {
                        done.insert(d);
                        checks_[k].push_back({d, tindex.degree(d)});
                    }
                }
            }
            if (tight_) {
                auto sizes = tight_component_sizes(host_);
                largest_component_ = sizes.empty() ? 0 : sizes.front();
            }
        }

        void tick() {
            if (++nodes_ > budget_)
                throw BudgetExceeded{};
        }

        bool consistent(std::size_t k) {
            for (const auto& [v, deg] : vertex_checks_[k])
                if (host_edges_at_[map_[static_cast<std::size_t>(v)]].size() < deg)
                    return false;
            for (const auto& [d, deg] : checks_[k]) {
                std::vector<Vertex> image;
                for (Vertex v : d)
                    image.push_back(map_[static_cast<std::size_t>(v)]);
                if (index_.degree(VertexSet(std::move(image))) < deg)
                    return false;
            }
            return true;
        }

        bool step(std::size_t k) {
            if (k == order_.size())
                return true;
            if (k == 0 && tight_ && largest_component_ < tree_vertices_.size())
                return false;
            const auto& e = tree_.edge(order_[k]);
            std::vector<Vertex> fresh;
            std::vector<Vertex> fixed_image;
            for (Vertex v : e) {
                if (map_[static_cast<std::size_t>(v)] < 0)
                    fresh.push_back(v);
                else
                    fixed_image.push_back(map_[static_cast<std::size_t>(v)]);
            }
            if (fresh.empty()) {
                std::sort(fixed_image.begin(), fixed_image.end());
                return host_.contains(VertexSet(fixed_image)) && consistent(k) && step(k + 1);
            }
            if (fresh.size() == 1) {
                std::sort(fixed_image.begin(), fixed_image.end());
                for (Vertex z : index_.neighbours(VertexSet(fixed_image))) {
                    if (used_[static_cast<std::size_t>(z)])
                        continue;
                    tick();
                    if (assign({fresh[0]}, {z}, k))
                        return true;
                }
                return false;
            }
            // Several new vertices: try every host edge containing the fixed part, in every arrangement.
            std::vector<std::size_t> candidates;
            if (fixed_image.empty()) {
                candidates.resize(host_.size());
                std::iota(candidates.begin(), candidates.end(), 0);
            } else {
                VertexSet fixed(fixed_image);
                for (std::size_t i : host_edges_at_[fixed[0]])
                    if (host_.edge(i).contains_all(fixed))
                        candidates.push_back(i);
            }
            VertexSet fixed(fixed_image);
            for (std::size_t i : candidates) {
                VertexSet rest = host_.edge(i).minus(fixed);
                if (std::any_of(rest.begin(), rest.end(), [&](Vertex z) { return used_[static_cast<std::size_t>(z)]; }))
                    continue;
                std::vector<Vertex> targets(rest.begin(), rest.end());
                do {
                    tick();
                    if (assign(fresh, targets, k))
                        return true;
                } while (std::next_permutation(targets.begin(), targets.end()));
            }
            return false;
        }

        bool assign(const std::vector<Vertex>& from, const std::vector<Vertex>& to, std::size_t k) {
            for (std::size_t i = 0; i < from.size(); ++i) {
                map_[static_cast<std::size_t>(from[i])] = to[i];
                used_[static_cast<std::size_t>(to[i])] = true;
            }
            bool ok = consistent(k) && step(k + 1);
            if (!ok)
                for (std::size_t i = 0; i < from.size(); ++i) {
                    map_[static_cast<std::size_t>(from[i])] = -1;
                    used_[static_cast<std::size_t>(to[i])] = false;
                }
            return ok;
        }

        const Hypergraph& tree_;
        const Hypergraph& host_;
        LinkIndex index_;
        std::uint64_t budget_;
        std::uint64_t nodes_ = 0;
        std::vector<Vertex> tree_vertices_;
        std::vector<std::size_t> order_;
        bool tight_ = false;
        std::size_t largest_component_ = 0;
        std::vector<std::vector<std::pair<VertexSet, std::size_t>>> checks_;
        std::vector<std::vector<std::pair<Vertex, std::size_t>>> vertex_checks_;
        std::vector<Vertex> map_;
        std::vector<bool> used_;
        std::unordered_map<Vertex, std::vector<std::size_t>> host_edges_at_;
    };

} // namespace

BacktrackResult embed_backtracking(const Hypergraph& tree, const Hypergraph& host, std::uint64_t budget) {
    if (tree.r() != host.r())
        throw PreconditionError("tree and host must have the same uniformity");
    return Backtracker(tree, host, budget).run();
}

} // namespace tightree
