#include "tightree/discharging.hpp"

#include "tightree/errors.hpp"

#include <algorithm>
#include <sstream>

namespace tightree {

namespace {

    Rational ratio(long long num, long long den) {
        return Rational(BigInt(num), BigInt(den));
    }

    long long floor_div(long long num, long long den) {
        return num / den - ((num % den != 0) && ((num < 0) != (den < 0)) ? 1 : 0);
    }

    int count_outside(const LinkIndex& index, Vertex x, Vertex y, const VertexSet& avoid) {
        int count = 0;
        for (Vertex z : index.neighbours(VertexSet{x, y}))
            if (!avoid.contains(z))
                ++count;
        return count;
    }

    void require_three_uniform(const Hypergraph& g) {
        if (g.r() != 3)
            throw PreconditionError("special pairs are defined for 3-graphs");
    }

    /// 3e(G) > m|∂G| written as e(G) > (num/den)|∂G| with exact integers.
    bool above_threshold(const Hypergraph& g, const LinkIndex& index, const Rational& q) {
        return Rational(static_cast<long long>(g.size())) > q * static_cast<long long>(index.shadow_size());
    }

    std::size_t min_pair_degree(const LinkIndex& index, const VertexSet& e) {
        std::size_t best = SIZE_MAX;
        for (Vertex v : e)
            best = std::min(best, index.degree(e.without(v)));
        return best;
    }

    /// The pair of `e` with the smallest codegree, lexicographically first on ties.
    VertexSet min_codegree_pair(const LinkIndex& index, const VertexSet& e) {
        std::vector<VertexSet> pairs;
        for (Vertex v : e)
            pairs.push_back(e.without(v));
        std::sort(pairs.begin(), pairs.end());
        VertexSet best = pairs[0];
        for (const auto& p : pairs)
            if (index.degree(p) < index.degree(best))
                best = p;
        return best;
    }

    void add_clause(ClauseReport& report, std::string name, bool holds, std::string detail) {
        report.clauses.push_back({std::move(name), holds, std::move(detail)});
    }

    /// Shape checks shared by both verifiers; false when the labels do not describe two glued edges.
    bool check_shape(const Hypergraph& g, const SpecialPair& pair, ClauseReport& report) {
        bool distinct = true;
        std::vector<Vertex> labels{pair.a, pair.b, pair.c, pair.d};
        std::sort(labels.begin(), labels.end());
        if (std::adjacent_find(labels.begin(), labels.end()) != labels.end() || labels.front() < 0)
            distinct = false;
        if (!distinct) {
            add_clause(report, "shape", false, "labels a, b, c, d are not four distinct vertices");
            return false;
        }
        VertexSet e{pair.a, pair.b, pair.c};
        VertexSet f{pair.a, pair.d, pair.c};
        bool in_graph = g.contains(e) && g.contains(f);
        bool matches = e == pair.e && f == pair.f;
        std::string detail = "e=" + e.to_string() + (g.contains(e) ? " in G" : " not in G") + ", f=" + f.to_string() +
                             (g.contains(f) ? " in G" : " not in G");
        if (!matches)
            detail += "; stored edges " + pair.e.to_string() + ", " + pair.f.to_string() + " disagree with the labels";
        add_clause(report, "shape", in_graph && matches, detail);
        return in_graph;
    }

    std::string cmp(const Rational& lhs, const char* op, const Rational& rhs) {
        return to_string(lhs) + " " + op + " " + to_string(rhs);
    }

    std::string cmp(long long lhs, const char* op, long long rhs) {
        return std::to_string(lhs) + " " + op + " " + std::to_string(rhs);
    }

    /// First pair among `candidates` passing `verify`, scanning in order.
    template <typename Verify>
    std::optional<SpecialPair> first_verified(const std::vector<SpecialPair>& candidates, Verify&& verify) {
        for (const auto& p : candidates)
            if (verify(p).ok())
                return p;
        return std::nullopt;
    }

} // namespace

int d_prime(const Hypergraph& g, const VertexSet& e, const VertexSet& f, Vertex x, Vertex y) {
    require_three_uniform(g);
    if (!g.contains(e) || !g.contains(f))
        throw PreconditionError("d' needs two edges of the host");
    if (e.intersect(f).size() != 2)
        throw PreconditionError("d' needs edges sharing exactly two vertices");
    VertexSet both = e.minus(f);
    for (Vertex v : f)
        both = both.with(v);
    if (x == y || !both.contains(x) || !both.contains(y))
        throw PreconditionError("d' needs two distinct vertices of e ∪ f");
    int count = 0;
    for (const auto& h : g.edges())
        if (h.contains(x) && h.contains(y))
            for (Vertex z : h)
                if (z != x && z != y && !both.contains(z))
                    ++count;
    return count;
}

std::string to_string(PairKind kind) {
    return kind == PairKind::CenterPair ? "center-pair" : "min-codegree-pair";
}

std::string to_string(MarkRule rule) {
    switch (rule) {
    case MarkRule::AllThroughHigh:
        return "all-through-high";
    case MarkRule::MissingLowApex:
        return "missing-low-apex";
    case MarkRule::MissingMediumApex:
        return "missing-medium-apex";
    case MarkRule::MinCodegreePair:
        return "min-codegree-pair";
    }
    return "?";
}

std::string SpecialPair::to_string() const {
    std::ostringstream out;
    out << tightree::to_string(kind) << " e=" << e.to_string() << " f=" << f.to_string() << " a=" << a << " b=" << b
        << " c=" << c << " d=" << d << " w(e)=" << tightree::to_string(w_e) << " w(f)=" << tightree::to_string(w_f)
        << " w(ac)=" << tightree::to_string(w_ac);
    for (const auto& [p, v] : dprimes)
        out << " d'" << p.to_string() << "=" << v;
    return out.str();
}

SpecialPair make_special_pair(const Hypergraph& g, const LinkIndex& index, Vertex a, Vertex b, Vertex c, Vertex d,
                              PairKind kind) {
    SpecialPair p;
    p.a = a;
    p.b = b;
    p.c = c;
    p.d = d;
    p.e = VertexSet{a, b, c};
    p.f = VertexSet{a, d, c};
    if (!g.contains(p.e) || !g.contains(p.f))
        throw PreconditionError("special pair edges must lie in the host");
    p.kind = kind;
    VertexSet all{a, b, c, d};
    for (const auto& pr : subsets_of_size(all, 2))
        p.dprimes[pr] = count_outside(index, pr[0], pr[1], all);
    p.w_e = default_weight_edge(index, p.e);
    p.w_f = default_weight_edge(index, p.f);
    p.w_ac = default_weight_pair(index, VertexSet{a, c});
    return p;
}

bool ClauseReport::ok() const {
    return !clauses.empty() && std::all_of(clauses.begin(), clauses.end(), [](const Clause& c) { return c.holds; });
}

std::string ClauseReport::to_string() const {
    std::string out;
    for (const auto& c : clauses)
        out += "clause " + c.name + ": " + (c.holds ? "holds" : "FAILS") + " (" + c.detail + ")\n";
    return out;
}

Rational DischargeTrace::total_before() const {
    Rational s = 0;
    for (const auto& c : charge_before)
        s += c;
    return s;
}

Rational DischargeTrace::total_after() const {
    Rational s = 0;
    for (const auto& c : charge_after)
        s += c;
    return s;
}

bool DischargeTrace::heavy_edges_keep_threshold() const {
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (!light[i] && charge_after[i] < w0)
            return false;
    return true;
}

std::vector<std::string> DischargeTrace::lines() const {
    std::vector<std::string> out;
    std::size_t light_count = static_cast<std::size_t>(std::count(light.begin(), light.end(), true));
    out.push_back("discharge w0=" + to_string(w0) + " edges=" + std::to_string(edges.size()) +
                  " light=" + std::to_string(light_count) + " route=" + route);
    for (const auto& m : marks)
        out.push_back("mark " + m.marker.to_string() + " rule=" + to_string(m.rule) + " a=" + std::to_string(m.a) +
                      " b=" + std::to_string(m.b) + " c=" + std::to_string(m.c) +
                      " marked=" + std::to_string(m.marked.size()));
    for (const auto& t : transfers)
        out.push_back("transfer " + t.from.to_string() + " -> " + t.to.to_string() + " " + to_string(t.amount));
    out.push_back("charge total before=" + to_string(total_before()) + " after=" + to_string(total_after()));
    for (const auto& n : notes)
        out.push_back("note " + n);
    return out;
}

namespace {

    struct HostView {
        const Hypergraph& g;
        LinkIndex index;
        std::vector<Rational> weight;

        explicit HostView(const Hypergraph& host) : g(host), index(host) {
            weight.reserve(host.size());
            for (const auto& e : host.edges())
                weight.push_back(default_weight_edge(index, e));
        }
        std::size_t deg(Vertex x, Vertex y) const { return index.degree(VertexSet{x, y}); }
        std::size_t id(const VertexSet& e) const { return g.index_of(e).value(); }
    };

    DischargeTrace start_trace(const HostView& h, const Rational& w0) {
        DischargeTrace tr;
        tr.w0 = w0;
        tr.edges.assign(h.g.edges().begin(), h.g.edges().end());
        tr.charge_before = h.weight;
        tr.charge_after = h.weight;
        tr.light.resize(h.weight.size());
        for (std::size_t i = 0; i < h.weight.size(); ++i)
            tr.light[i] = h.weight[i] < w0;
        return tr;
    }

} // namespace

FinderResult find_center_pair(const Hypergraph& g, int m, const FinderOptions& options) {
    require_three_uniform(g);
    if (m < 1)
        throw PreconditionError("m must be positive");
    if (m < 20 && !options.allow_small_m)
        throw PreconditionError("the center-pair search needs m >= 20 (got " + std::to_string(m) + ")");
    if (g.empty())
        throw PreconditionError("host has no edges");
    HostView h(g);
    if (!above_threshold(g, h.index, ratio(m, 3)))
        throw PreconditionError("host does not satisfy e(G) > (m/3)|shadow|");
    if (3 * static_cast<long long>(min_p_degree(g, 2)) <= m)
        throw PreconditionError("host minimum pair degree is not above m/3");

    const Rational w0 = ratio(3, m);
    const long long third = floor_div(m, 3);
    const long long two_thirds = floor_div(2 * m, 3);
    DischargeTrace tr = start_trace(h, w0);
    if (m < 20)
        tr.notes.push_back("m=" + std::to_string(m) + " is below the nominal range m >= 20");

    auto verify = [&](const SpecialPair& p) { return verify_center_pair(g, m, p); };

    std::vector<std::vector<std::size_t>> markers_of(g.size());
    std::vector<SpecialPair> light_light;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!tr.light[i])
            continue;
        const VertexSet& e = g.edge(i);
        std::vector<VertexSet> sides;
        for (Vertex v : e)
            sides.push_back(e.without(v));
        std::sort(sides.begin(), sides.end(), [&](const VertexSet& p, const VertexSet& q) {
            auto dp = h.index.degree(p), dq = h.index.degree(q);
            return dp != dq ? dp < dq : p < q;
        });
        const Vertex b = sides[0].intersect(sides[1])[0];
        const Vertex a = sides[0].without(b)[0];
        const Vertex c = sides[1].without(b)[0];
        const long long low = static_cast<long long>(h.deg(a, b));
        const long long medium = static_cast<long long>(h.deg(b, c));

        MarkRecord rec;
        rec.marker = e;
        rec.a = a;
        rec.b = b;
        rec.c = c;
        if (low >= third + 2 && medium >= two_thirds + 2)
            rec.rule = MarkRule::AllThroughHigh;
        else if (low <= third + 1)
            rec.rule = MarkRule::MissingLowApex;
        else
            rec.rule = MarkRule::MissingMediumApex;
        for (Vertex x : h.index.neighbours(VertexSet{a, c})) {
            if (x == b)
                continue;
            if (rec.rule == MarkRule::MissingLowApex && g.contains(VertexSet{a, b, x}))
                continue;
            if (rec.rule == MarkRule::MissingMediumApex && g.contains(VertexSet{b, c, x}))
                continue;
            VertexSet f{a, c, x};
            rec.marked.push_back(f);
            std::size_t j = h.id(f);
            markers_of[j].push_back(i);
            if (tr.light[j])
                light_light.push_back(make_special_pair(g, h.index, a, b, c, x, PairKind::CenterPair));
        }
        tr.marks.push_back(std::move(rec));
    }

    if (auto p = first_verified(light_light, verify)) {
        tr.route = "light-marks-light";
        return {*p, std::move(tr)};
    }
    if (!light_light.empty())
        tr.notes.push_back(std::to_string(light_light.size()) + " light edges marked by light edges, none verified");

    // Heavy marked edges hand their surplus over w0 to their markers in equal parts.
    std::vector<std::vector<std::pair<std::size_t, Rational>>> received(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) {
        if (tr.light[j] || markers_of[j].empty())
            continue;
        const Rational share = (tr.charge_before[j] - w0) / static_cast<long long>(markers_of[j].size());
        for (std::size_t i : markers_of[j]) {
            tr.transfers.push_back({g.edge(j), g.edge(i), share});
            tr.charge_after[j] -= share;
            tr.charge_after[i] += share;
            received[i].push_back({j, share});
        }
    }

    std::vector<SpecialPair> candidates;
    for (std::size_t k = 0; k < tr.marks.size(); ++k) {
        const auto& rec = tr.marks[k];
        std::size_t i = h.id(rec.marker);
        if (tr.charge_after[i] >= w0 || received[i].empty())
            continue;
        auto best = received[i].front();
        for (const auto& r : received[i])
            if (r.second < best.second || (r.second == best.second && g.edge(r.first) < g.edge(best.first)))
                best = r;
        Vertex d = g.edge(best.first).minus(VertexSet{rec.a, rec.c})[0];
        candidates.push_back(make_special_pair(g, h.index, rec.a, rec.b, rec.c, d, PairKind::CenterPair));
    }
    if (auto p = first_verified(candidates, verify)) {
        tr.route = "discharging";
        return {*p, std::move(tr)};
    }
    tr.notes.push_back("discharging produced " + std::to_string(candidates.size()) +
                       " candidate pairs, none verified; scanning all adjacent pairs");

    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!tr.light[i])
            continue;
        const VertexSet& e = g.edge(i);
        for (const auto& ac : subsets_of_size(e, 2)) {
            Vertex b = e.minus(ac)[0];
            for (Vertex d : h.index.neighbours(ac)) {
                if (d == b)
                    continue;
                auto p = make_special_pair(g, h.index, ac[0], b, ac[1], d, PairKind::CenterPair);
                if (verify(p).ok()) {
                    tr.route = "exhaustive-fallback";
                    return {p, std::move(tr)};
                }
            }
        }
    }
    throw InternalDiagnostic("no center pair exists in a host meeting the hypotheses (m=" + std::to_string(m) + ")");
}

ClauseReport verify_center_pair(const Hypergraph& g, int m, const SpecialPair& pair) {
    ClauseReport report;
    if (g.r() != 3 || m < 1) {
        add_clause(report, "shape", false, "needs a 3-graph and m >= 1");
        return report;
    }
    if (!check_shape(g, pair, report))
        return report;
    LinkIndex index(g);
    const VertexSet all{pair.a, pair.b, pair.c, pair.d};
    auto dp = [&](Vertex x, Vertex y) { return static_cast<long long>(count_outside(index, x, y, all)); };
    const Rational w0 = ratio(3, m);
    const Rational we = default_weight_edge(index, VertexSet{pair.a, pair.b, pair.c});
    const Rational wf = default_weight_edge(index, VertexSet{pair.a, pair.d, pair.c});
    const Rational wac = default_weight_pair(index, VertexSet{pair.a, pair.c});

    add_clause(report, "(a) light e", we < w0, "w(e) " + cmp(we, "<", w0));
    add_clause(report, "(a) good ac", wac < ratio(1, m), "w(ac) " + cmp(wac, "<", ratio(1, m)));
    const long long ab = dp(pair.a, pair.b), cb = dp(pair.c, pair.b);
    add_clause(report, "(b) min side", std::min(ab, cb) >= floor_div(m, 3),
               "min(d'(ab), d'(cb)) " + cmp(std::min(ab, cb), ">=", floor_div(m, 3)));
    add_clause(report, "(c) max side", std::max(ab, cb) >= floor_div(2 * m, 3),
               "max(d'(ab), d'(cb)) " + cmp(std::max(ab, cb), ">=", floor_div(2 * m, 3)));
    const Rational lhs = 3 * (wf - w0), rhs = w0 - we;
    const long long far = std::max(dp(pair.a, pair.d), dp(pair.c, pair.d));
    const bool first = lhs < rhs, second = far >= m - 1;
    add_clause(report, "(d) f nearly light or anchored", first || second,
               "3(w(f)-3/m) " + cmp(lhs, "<", rhs) + " is " + (first ? "true" : "false") +
                   "; max(d'(ad), d'(cd)) " + cmp(far, ">=", m - 1) + " is " + (second ? "true" : "false"));
    return report;
}

FinderResult find_min_codegree_pair(const Hypergraph& g, const Rational& gamma, const FinderOptions& options) {
    (void)options;
    require_three_uniform(g);
    if (gamma <= 0)
        throw PreconditionError("gamma must be positive");
    if (g.empty())
        throw PreconditionError("host has no edges");
    HostView h(g);
    if (!above_threshold(g, h.index, gamma))
        throw PreconditionError("host does not satisfy e(G) > gamma |shadow|");
    for (const auto& e : g.edges())
        if (min_pair_degree(h.index, e) < 2)
            throw PreconditionError("edge " + e.to_string() + " has a pair of codegree 1");

    const Rational w0 = 1 / gamma;
    DischargeTrace tr = start_trace(h, w0);
    auto verify = [&](const SpecialPair& p) { return verify_min_codegree_pair(g, gamma, p); };

    std::vector<VertexSet> marked_pair(g.size());
    std::vector<SpecialPair> shared;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!tr.light[i])
            continue;
        const VertexSet& e = g.edge(i);
        VertexSet ac = min_codegree_pair(h.index, e);
        marked_pair[i] = ac;
        Vertex b = e.minus(ac)[0];
        MarkRecord rec;
        rec.marker = e;
        rec.rule = MarkRule::MinCodegreePair;
        rec.a = ac[0];
        rec.b = b;
        rec.c = ac[1];
        for (Vertex x : h.index.neighbours(ac)) {
            if (x == b)
                continue;
            VertexSet f = ac.with(x);
            rec.marked.push_back(f);
            if (tr.light[h.id(f)])
                shared.push_back(make_special_pair(g, h.index, ac[0], b, ac[1], x, PairKind::MinCodegreePair));
        }
        tr.marks.push_back(std::move(rec));
    }
    if (auto p = first_verified(shared, verify)) {
        tr.route = "light-marks-light";
        return {*p, std::move(tr)};
    }

    // Each heavy edge gives a third of its surplus to every light edge whose marked pair it contains.
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!tr.light[i])
            continue;
        const VertexSet& ac = marked_pair[i];
        for (Vertex x : h.index.neighbours(ac)) {
            std::size_t j = h.id(ac.with(x));
            if (j == i || tr.light[j])
                continue;
            Rational share = (tr.charge_before[j] - w0) / 3;
            tr.transfers.push_back({g.edge(j), g.edge(i), share});
            tr.charge_after[j] -= share;
            tr.charge_after[i] += share;
        }
    }

    std::vector<SpecialPair> candidates;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!tr.light[i] || tr.charge_after[i] >= w0)
            continue;
        const VertexSet& e = g.edge(i);
        const VertexSet& ac = marked_pair[i];
        Vertex b = e.minus(ac)[0];
        std::optional<std::size_t> best;
        for (Vertex x : h.index.neighbours(ac)) {
            if (x == b)
                continue;
            std::size_t j = h.id(ac.with(x));
            if (!best || h.weight[j] < h.weight[*best])
                best = j;
        }
        if (best)
            candidates.push_back(make_special_pair(g, h.index, ac[0], b, ac[1], g.edge(*best).minus(ac)[0],
                                                   PairKind::MinCodegreePair));
    }
    if (auto p = first_verified(candidates, verify)) {
        tr.route = "discharging";
        return {*p, std::move(tr)};
    }
    tr.notes.push_back("discharging produced " + std::to_string(candidates.size()) +
                       " candidate pairs, none verified; scanning all adjacent pairs");

    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!tr.light[i])
            continue;
        const VertexSet& e = g.edge(i);
        const std::size_t dmin = min_pair_degree(h.index, e);
        for (const auto& ac : subsets_of_size(e, 2)) {
            if (h.index.degree(ac) != dmin)
                continue;
            Vertex b = e.minus(ac)[0];
            for (Vertex d : h.index.neighbours(ac)) {
                if (d == b)
                    continue;
                auto p = make_special_pair(g, h.index, ac[0], b, ac[1], d, PairKind::MinCodegreePair);
                if (verify(p).ok()) {
                    tr.route = "exhaustive-fallback";
                    return {p, std::move(tr)};
                }
            }
        }
    }
    throw InternalDiagnostic("no min-codegree pair exists in a host with e(G) > " + to_string(gamma) + " |shadow|");
}

ClauseReport verify_min_codegree_pair(const Hypergraph& g, const Rational& gamma, const SpecialPair& pair) {
    ClauseReport report;
    if (g.r() != 3 || gamma <= 0) {
        add_clause(report, "shape", false, "needs a 3-graph and gamma > 0");
        return report;
    }
    if (!check_shape(g, pair, report))
        return report;
    LinkIndex index(g);
    const VertexSet e{pair.a, pair.b, pair.c};
    const VertexSet f{pair.a, pair.d, pair.c};
    const Rational w0 = 1 / gamma;
    const Rational we = default_weight_edge(index, e);
    const Rational wf = default_weight_edge(index, f);
    const long long dac = static_cast<long long>(index.degree(VertexSet{pair.a, pair.c}));
    const long long dmin = static_cast<long long>(min_pair_degree(index, e));

    add_clause(report, "(1) light e", we < w0, "w(e) " + cmp(we, "<", w0));
    add_clause(report, "(2) shared pair is the minimum", dac == dmin, "d(ac) " + cmp(dac, "=", dmin));
    if (dmin < 2) {
        add_clause(report, "(3) f bounded", false, "d_min(e) = " + std::to_string(dmin) + " < 2");
        return report;
    }
    const Rational bound = w0 + ratio(3, dmin - 1) * (w0 - we);
    add_clause(report, "(3) f bounded", wf < bound, "w(f) " + cmp(wf, "<", bound));
    return report;
}

} // namespace tightree
