#pragma once

#include "tightree/hypergraph.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tightree {

/// |{z outside e ∪ f : xyz ∈ G}|. Requires e, f ∈ G sharing exactly two vertices
/// and {x, y} ⊂ e ∪ f with x != y.
int d_prime(const Hypergraph& g, const VertexSet& e, const VertexSet& f, Vertex x, Vertex y);

enum class PairKind { CenterPair, MinCodegreePair };

std::string to_string(PairKind kind);

/// Two edges e = abc and f = adc glued along ac, with the data that certifies them.
struct SpecialPair {
    VertexSet e, f;
    Vertex a = 0, b = 0, c = 0, d = 0;
    /// d' for all six pairs inside {a, b, c, d}.
    std::map<VertexSet, int> dprimes;
    Rational w_e, w_f, w_ac;
    PairKind kind = PairKind::CenterPair;

    int dprime(Vertex x, Vertex y) const { return dprimes.at(VertexSet{x, y}); }
    std::string to_string() const;
};

/// Builds a pair from labels, computing d' values and weights from `g`.
SpecialPair make_special_pair(const Hypergraph& g, const LinkIndex& index, Vertex a, Vertex b, Vertex c, Vertex d,
                              PairKind kind);

struct Clause {
    std::string name;
    bool holds = false;
    std::string detail;
};

struct ClauseReport {
    std::vector<Clause> clauses;
    bool ok() const;
    std::string to_string() const;
};

/// How a light edge chose the edges it marks.
enum class MarkRule {
    /// Both smaller sides are comfortably large: every other edge through the high side.
    AllThroughHigh,
    /// Low side at its minimum: edges acx with abx missing.
    MissingLowApex,
    /// Medium side at its minimum: edges acx with bcx missing.
    MissingMediumApex,
    /// Edges sharing the light edge's minimum-codegree pair.
    MinCodegreePair,
};

std::string to_string(MarkRule rule);

struct MarkRecord {
    VertexSet marker;
    MarkRule rule = MarkRule::AllThroughHigh;
    /// The marker's labels (low side ab, medium bc, high ac), or the marked pair as ac.
    Vertex a = 0, b = 0, c = 0;
    std::vector<VertexSet> marked;
};

struct Transfer {
    VertexSet from;
    VertexSet to;
    Rational amount;
};

struct DischargeTrace {
    Rational w0;
    /// Sorted edge list of the host, aligned with the per-edge vectors below.
    std::vector<VertexSet> edges;
    std::vector<bool> light;
    std::vector<Rational> charge_before;
    std::vector<Rational> charge_after;
    std::vector<MarkRecord> marks;
    std::vector<Transfer> transfers;
    /// "light-marks-light", "discharging" or "exhaustive-fallback".
    std::string route;
    std::vector<std::string> notes;

    Rational total_before() const;
    Rational total_after() const;
    bool conserved() const { return total_before() == total_after(); }
    /// Every heavy edge keeps at least w0 after the transfers.
    bool heavy_edges_keep_threshold() const;
    std::vector<std::string> lines() const;
};

struct FinderResult {
    SpecialPair pair;
    DischargeTrace trace;
};

struct FinderOptions {
    /// Run below the nominal parameter range (m < 20), recording a note instead of failing.
    bool allow_small_m = false;
    int threads = 1;
};

/// Edges e = abc, f = adc with w(e) < 3/m, w(ac) < 1/m, d'(ab), d'(cb) large and
/// f nearly light or heavily attached at d. Requires an r = 3 host with
/// e(G) > (m/3)|∂G| and minimum pair degree > m/3, and m >= 20 unless relaxed.
FinderResult find_center_pair(const Hypergraph& g, int m, const FinderOptions& options = {});

/// Recomputes everything from `g` and the labels; stored values are ignored.
ClauseReport verify_center_pair(const Hypergraph& g, int m, const SpecialPair& pair);

/// Edges e, f sharing e's minimum-codegree pair with w(e) < 1/γ and w(f) bounded
/// by the leftover charge. Requires e(G) > γ|∂G| and every edge's smallest pair degree >= 2.
FinderResult find_min_codegree_pair(const Hypergraph& g, const Rational& gamma, const FinderOptions& options = {});

ClauseReport verify_min_codegree_pair(const Hypergraph& g, const Rational& gamma, const SpecialPair& pair);

} // namespace tightree
