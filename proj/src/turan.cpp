#include "tightree/turan.hpp"

#include "tightree/canonical.hpp"
#include "tightree/embedding.hpp"
#include "tightree/errors.hpp"
#include "tightree/parallel.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace tightree {

namespace {

    BigInt binomial(int n, int k) {
        if (k < 0 || k > n)
            return 0;
        BigInt out = 1;
        for (int i = 1; i <= k; ++i)
            out = out * (n - k + i) / i;
        return out;
    }

    void check_bound_parameters(int r, int t, int n) {
        if (r < 2 || t < 1 || n < r)
            throw PreconditionError("bounds need r >= 2, t >= 1 and n >= r");
    }

} // namespace

Rational kalai_bound(int r, int t, int n) {
    check_bound_parameters(r, t, n);
    return Rational(BigInt(t - 1), BigInt(r)) * Rational(binomial(n, r - 1));
}

Rational shadow_bound(const Hypergraph& g, int t) {
    if (t < 1)
        throw PreconditionError("t must be positive");
    return Rational(BigInt(t - 1), BigInt(g.r())) * Rational(BigInt(LinkIndex(g).shadow_size()));
}

Rational bounded_trunk_bound(int r, int t, int c, int n) {
    check_bound_parameters(r, t, n);
    if (c < 1)
        throw PreconditionError("trunk size must be positive");
    BigInt power = 1;
    for (int i = 0; i < r; ++i)
        power *= r;
    Rational a = (Rational(power + 1) - Rational(BigInt(1), BigInt(r))) * (c - 1);
    return (Rational(BigInt(t - 1), BigInt(r)) + a) * Rational(binomial(n, r - 1));
}

std::vector<std::string> TuranResult::lines() const {
    std::vector<std::string> out;
    out.push_back("ex = " + std::to_string(value) + " (bound " + to_string(bound) + ") " +
                  (complete ? "COMPLETE" : "INCOMPLETE"));
    if (exceeds_bound)
        out.push_back("finding: value exceeds ((t-1)/r) C(n, r-1)");
    std::string levels = "levels";
    for (auto s : stats.level_sizes)
        levels += " " + std::to_string(s);
    out.push_back(levels);
    out.push_back("graphs examined " + std::to_string(stats.graphs_examined) + ", embedding nodes " +
                  std::to_string(stats.embed_nodes));
    out.push_back("witness " + format_edges(witness));
    return out;
}

TuranResult brute_force_turan(int n, const Hypergraph& pattern, std::uint64_t budget, int threads) {
    const int r = pattern.r();
    if (n < r)
        throw PreconditionError("need at least r vertices");
    if (pattern.empty())
        throw PreconditionError("pattern has no edges");
    if (n > 10)
        throw PreconditionError("exhaustive Turan search is limited to n <= 10");

    std::vector<Vertex> all(static_cast<std::size_t>(n));
    std::iota(all.begin(), all.end(), 0);
    const std::vector<VertexSet> candidates = subsets_of_size(VertexSet(all), static_cast<std::size_t>(r));

    TuranResult result;
    result.n = n;
    result.bound = kalai_bound(r, static_cast<int>(pattern.size()), n);
    result.complete = true;

    std::vector<CanonicalForm> level{canonical_form(Hypergraph(r, n))};
    std::vector<CanonicalForm> best = level;
    result.stats.level_sizes.push_back(1);
    while (true) {
        std::vector<Hypergraph> children;
        for (const auto& parent : level)
            for (const auto& e : candidates)
                if (!std::binary_search(parent.edges.begin(), parent.edges.end(), e)) {
                    auto edges = parent.edges;
                    edges.push_back(e);
                    children.emplace_back(r, n, std::move(edges));
                }
        result.stats.graphs_examined += children.size();
        if (result.stats.graphs_examined > budget) {
            result.complete = false;
            break;
        }
        std::vector<CanonicalForm> forms(children.size());
        parallel_for(children.size(), threads, [&](std::size_t i) { forms[i] = canonical_form(children[i]); });
        std::sort(forms.begin(), forms.end());
        forms.erase(std::unique(forms.begin(), forms.end()), forms.end());

        std::vector<SearchStatus> status(forms.size());
        std::vector<std::uint64_t> nodes(forms.size());
        parallel_for(forms.size(), threads, [&](std::size_t i) {
            auto found = embed_backtracking(pattern, forms[i].to_hypergraph(), budget);
            status[i] = found.status;
            nodes[i] = found.nodes;
        });
        std::vector<CanonicalForm> next;
        for (std::size_t i = 0; i < forms.size(); ++i) {
            result.stats.embed_nodes += nodes[i];
            if (status[i] == SearchStatus::BudgetExhausted)
                result.complete = false;
            else if (status[i] == SearchStatus::NoEmbedding)
                next.push_back(std::move(forms[i]));
        }
        if (next.empty())
            break;
        result.stats.level_sizes.push_back(next.size());
        best = next;
        level = std::move(next);
    }
    result.value = best.front().edges.size();
    result.witness = best.front().to_hypergraph();
    result.exceeds_bound = result.complete && Rational(static_cast<long long>(result.value)) > result.bound;
    return result;
}

bool blocks_pairwise_linear(const std::vector<VertexSet>& blocks) {
    for (std::size_t i = 0; i < blocks.size(); ++i)
        for (std::size_t j = i + 1; j < blocks.size(); ++j)
            if (blocks[i].intersect(blocks[j]).size() > 1)
                return false;
    return true;
}

namespace {

    class Bits {
    public:
        explicit Bits(std::size_t n = 0) : words_((n + 63) / 64, 0) {}
        void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
        void reset(std::size_t i) { words_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
        bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1; }
        std::size_t count() const {
            std::size_t c = 0;
            for (auto w : words_)
                c += static_cast<std::size_t>(std::popcount(w));
            return c;
        }
        bool none() const {
            return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
        }
        /// Index of the lowest set bit; only call when not none().
        std::size_t first() const {
            for (std::size_t k = 0;; ++k)
                if (words_[k])
                    return k * 64 + static_cast<std::size_t>(std::countr_zero(words_[k]));
        }
        Bits& operator&=(const Bits& o) {
            for (std::size_t k = 0; k < words_.size(); ++k)
                words_[k] &= o.words_[k];
            return *this;
        }
        Bits without(const Bits& o) const {
            Bits out = *this;
            for (std::size_t k = 0; k < words_.size(); ++k)
                out.words_[k] &= ~o.words_[k];
            return out;
        }

    private:
        std::vector<std::uint64_t> words_;
    };

    /// Lexicographically least k-clique of the graph `adj` on n vertices, if any.
    class CliqueFinder {
    public:
        CliqueFinder(const std::vector<Bits>& adj, std::size_t n, std::size_t k) : adj_(adj), n_(n), k_(k) {}

        std::optional<std::vector<std::size_t>> find() {
            Bits all(n_);
            for (std::size_t v = 0; v < n_; ++v)
                all.set(v);
            if (search(all))
                return chosen_;
            return std::nullopt;
        }

    private:
        /// Greedy colouring size of `cand`, an upper bound on its clique number.
        std::size_t colour_bound(const Bits& cand) const {
            std::size_t colours = 0;
            Bits left = cand;
            while (!left.none()) {
                ++colours;
                Bits avail = left;
                while (!avail.none()) {
                    std::size_t v = avail.first();
                    left.reset(v);
                    avail.reset(v);
                    avail = avail.without(adj_[v]);
                }
            }
            return colours;
        }

        bool search(Bits cand) {
            if (chosen_.size() == k_)
                return true;
            while (!cand.none()) {
                const std::size_t need = k_ - chosen_.size();
                if (cand.count() < need || colour_bound(cand) < need)
                    return false;
                std::size_t v = cand.first();
                cand.reset(v);
                Bits next = cand;
                next &= adj_[v];
                chosen_.push_back(v);
                if (search(next))
                    return true;
                chosen_.pop_back();
            }
            return chosen_.size() == k_;
        }

        const std::vector<Bits>& adj_;
        std::size_t n_, k_;
        std::vector<std::size_t> chosen_;
    };

} // namespace

SteinerResult steiner_lower_bound(int n, int t) {
    if (t < 2 || n < t + 1)
        throw PreconditionError("steiner construction needs t >= 2 and n >= t+1");
    const std::size_t size = static_cast<std::size_t>(n);
    const std::size_t k = static_cast<std::size_t>(t) + 1;
    // Graph of pairs not yet covered by a block.
    std::vector<Bits> uncovered(size, Bits(size));
    for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = 0; j < size; ++j)
            if (i != j)
                uncovered[i].set(j);

    SteinerResult out;
    std::vector<VertexSet> edges;
    while (true) {
        auto clique = CliqueFinder(uncovered, size, k).find();
        if (!clique)
            break;
        std::vector<Vertex> block;
        for (auto v : *clique)
            block.push_back(static_cast<Vertex>(v));
        for (auto a : *clique)
            for (auto b : *clique)
                if (a != b)
                    uncovered[a].reset(b);
        VertexSet bs(block);
        for (auto& e : subsets_of_size(bs, 3))
            edges.push_back(std::move(e));
        out.blocks.push_back(std::move(bs));
    }
    out.graph = Hypergraph(3, n, std::move(edges));
    out.kalai = kalai_bound(3, t, n);
    out.shadow = shadow_bound(out.graph, t);
    out.ratio = Rational(static_cast<long long>(out.graph.size())) / out.kalai;
    out.blocks_linear = blocks_pairwise_linear(out.blocks);
    return out;
}

std::vector<std::string> SteinerResult::lines() const {
    std::vector<std::string> out;
    out.push_back("blocks " + std::to_string(blocks.size()) + " of size " +
                  std::to_string(blocks.empty() ? 0 : blocks.front().size()));
    out.push_back("edges " + std::to_string(graph.size()));
    out.push_back("shadow bound " + to_string(shadow));
    out.push_back("kalai bound " + to_string(kalai));
    out.push_back("ratio to kalai bound " + to_string(ratio));
    out.push_back(std::string("blocks pairwise share <= 1 vertex: ") + (blocks_linear ? "yes" : "NO"));
    return out;
}

std::vector<std::string> AuditReport::lines() const {
    std::vector<std::string> out;
    out.push_back("edges " + std::to_string(edges) + ", shadow bound " + to_string(bound));
    if (!exceeds) {
        out.push_back("bound satisfied");
        return out;
    }
    out.push_back("bound exceeded");
    if (copy) {
        out.push_back("copy found: " + copy->embedding.to_string());
        out.push_back("route " + copy->trace.route + " case " + copy->trace.case_name);
    }
    return out;
}

AuditReport bound_audit(const Hypergraph& host, const Hypergraph& tree, const EmbedOptions& options) {
    if (host.r() != 3 || tree.r() != 3)
        throw PreconditionError("the audit handles 3-graphs only");
    if (!is_tight_tree(tree))
        throw PreconditionError("pattern is not a tight tree");
    AuditReport report;
    report.edges = host.size();
    report.bound = shadow_bound(host, static_cast<int>(tree.size()));
    report.exceeds = Rational(static_cast<long long>(host.size())) > report.bound;
    if (!report.exceeds)
        return report;
    auto trunk = min_trunk_size(tree, 2);
    if (!trunk.size)
        throw PreconditionError("pattern has no trunk with at most two edges");
    report.copy = embed_trunk2(tree, *trunk.certificate, host, options);
    return report;
}

} // namespace tightree
