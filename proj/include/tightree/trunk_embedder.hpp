#pragma once

#include "tightree/discharging.hpp"
#include "tightree/embedding.hpp"
#include "tightree/errors.hpp"
#include "tightree/tight_tree.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tightree {

/// One numeric condition checked on the way to an embedding, with exact values.
struct GateCheck {
    std::string name;
    std::string detail;
    bool passed = false;
    /// Hard gates abort the run on failure; soft ones (below the nominal range) are only recorded.
    bool hard = true;
};

/// Leaves hanging on one tree pair, sent into the neighbourhood of its image pair.
struct PlacementStep {
    VertexSet tree_pair;
    VertexSet host_pair;
    std::vector<Vertex> leaves;
    std::vector<Vertex> images;
    /// Candidates left in N'_G(host_pair) when the step started.
    std::size_t available = 0;
};

struct EmbedTrace {
    std::size_t tree_edges = 0;
    int m = 0;
    std::vector<std::string> notes;
    std::size_t host_edges_before = 0;
    std::size_t host_edges_after = 0;
    int peel_rounds = 0;
    /// "center-heavy" or "center-light".
    std::string route;
    /// Descriptive case name, e.g. "center-light/wide-left/high-center".
    std::string case_name;
    std::vector<std::string> relabelings;
    std::optional<SpecialPair> pair;
    std::optional<DischargeTrace> discharge;
    MuProfile mu;
    std::vector<GateCheck> gates;
    std::vector<PlacementStep> steps;
    bool used_fallback = false;

    std::vector<std::string> lines() const;
};

/// A hard gate failed: the stated inequality does not hold at this m.
class GateFailure : public InternalDiagnostic {
public:
    GateFailure(const std::string& message, EmbedTrace trace) : InternalDiagnostic(message), trace_(std::move(trace)) {}
    const EmbedTrace& trace() const noexcept { return trace_; }

private:
    EmbedTrace trace_;
};

/// Greedy leaf placement ran out of candidates for a pair.
class GreedyExhausted : public InternalDiagnostic {
public:
    GreedyExhausted(const std::string& message, EmbedTrace trace, VertexSet tree_pair, VertexSet host_pair)
        : InternalDiagnostic(message), trace_(std::move(trace)), tree_pair_(std::move(tree_pair)),
          host_pair_(std::move(host_pair)) {}
    const EmbedTrace& trace() const noexcept { return trace_; }
    const VertexSet& tree_pair() const noexcept { return tree_pair_; }
    const VertexSet& host_pair() const noexcept { return host_pair_; }

private:
    EmbedTrace trace_;
    VertexSet tree_pair_;
    VertexSet host_pair_;
};

struct EmbedOptions {
    /// On greedy starvation, run the complete backtracking embedder instead of throwing.
    bool fallback_to_backtracking = false;
    std::uint64_t fallback_budget = 50'000'000;
};

struct Trunk2Result {
    Embedding embedding;
    EmbedTrace trace;
};

/// Embeds a tight 3-tree with a trunk of at most two edges into a host with
/// e(G) > ((t-1)/3)|∂G|, following the discharging case analysis: peel, find a
/// special pair, pick a case and place leaf sets greedily in the case's order.
/// A one-edge trunk is extended by its first other edge. Throws PreconditionError
/// on unmet hypotheses, GateFailure on a failed case inequality and
/// GreedyExhausted when placement starves (unless the fallback is enabled).
Trunk2Result embed_trunk2(const Hypergraph& tree, const TrunkCertificate& trunk, const Hypergraph& host,
                          const EmbedOptions& options = {});

} // namespace tightree
