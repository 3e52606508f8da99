#include "tightree/trunk_embedder.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tightree {

std::vector<std::string> EmbedTrace::lines() const {
    std::vector<std::string> out;
    out.push_back("tree edges=" + std::to_string(tree_edges) + " m=" + std::to_string(m));
    for (const auto& n : notes)
        out.push_back("note " + n);
    out.push_back("peel rounds=" + std::to_string(peel_rounds) + " host edges " + std::to_string(host_edges_before) +
                  " -> " + std::to_string(host_edges_after));
    if (discharge)
        for (auto& l : discharge->lines())
            out.push_back(l);
    if (pair)
        out.push_back("pair " + pair->to_string());
    if (!route.empty())
        out.push_back("route " + route + " case " + case_name);
    for (const auto& r : relabelings)
        out.push_back("relabel " + r);
    if (!route.empty())
        out.push_back("mu x=" + std::to_string(mu.x) + " y=" + std::to_string(mu.y) + " u=" + std::to_string(mu.u) +
                      " v=" + std::to_string(mu.v) + " xy=" + std::to_string(mu.xy) + " xu=" + std::to_string(mu.xu) +
                      " xv=" + std::to_string(mu.xv) + " yu=" + std::to_string(mu.yu) + " yv=" + std::to_string(mu.yv));
    for (const auto& g : gates)
        out.push_back("gate " + g.name + " " + (g.passed ? "pass" : (g.hard ? "FAIL" : "soft-fail")) + " " + g.detail);
    for (const auto& s : steps) {
        std::string line = "place " + s.tree_pair.to_string() + " -> " + s.host_pair.to_string() +
                           " available=" + std::to_string(s.available) + " leaves";
        for (std::size_t i = 0; i < s.leaves.size(); ++i)
            line += " " + std::to_string(s.leaves[i]) + "->" + std::to_string(s.images[i]);
        out.push_back(line);
    }
    if (used_fallback)
        out.push_back("fallback backtracking embedder used");
    return out;
}

namespace {

    long long fl(long long num, long long den) {
        return num / den - ((num % den != 0) && ((num < 0) != (den < 0)) ? 1 : 0);
    }

    Rational q(long long num, long long den) {
        return Rational(BigInt(num), BigInt(den));
    }

    class Pipeline {
    public:
        Pipeline(const Hypergraph& tree, std::vector<std::size_t> trunk_edges, const Hypergraph& host)
            : tree_(tree), trunk_(std::move(trunk_edges)), host_(host), index_(host) {}

        EmbedTrace trace;

        Embedding run() {
            const int m = static_cast<int>(tree_.size()) - 1;
            trace.m = m;
            trace.tree_edges = tree_.size();
            nominal_ = tree_.size() >= 20;
            if (!nominal_)
                trace.notes.push_back("t=" + std::to_string(tree_.size()) +
                                      " is below the nominal range t >= 20; case inequalities are advisory");
            label_tree();
            if (mu(x_, y_) >= fl(m, 3))
                heavy_center(m);
            else
                light_center(m);
            return place();
        }

        // Filled by the caller before run().
        int peel_rounds = 0;

    private:
        // ---- tree side -------------------------------------------------------------

        void label_tree() {
            const VertexSet& e1 = tree_.edge(trunk_[0]);
            const VertexSet& e2 = tree_.edge(trunk_[1]);
            VertexSet shared = e1.intersect(e2);
            x_ = shared[0];
            y_ = shared[1];
            u_ = e1.minus(shared)[0];
            v_ = e2.minus(shared)[0];
            VertexSet core{x_, y_, u_, v_};
            for (std::size_t i = 0; i < tree_.size(); ++i) {
                if (i == trunk_[0] || i == trunk_[1])
                    continue;
                VertexSet outside = tree_.edge(i).minus(core);
                Vertex leaf = outside[0];
                leaves_[tree_.edge(i).without(leaf)].push_back(leaf);
            }
            for (auto& [p, ls] : leaves_)
                std::sort(ls.begin(), ls.end());
        }

        long long mu(Vertex p, Vertex r) const {
            auto it = leaves_.find(VertexSet{p, r});
            return it == leaves_.end() ? 0 : static_cast<long long>(it->second.size());
        }
        long long xy() const { return mu(x_, y_); }
        long long xu() const { return mu(x_, u_); }
        long long xv() const { return mu(x_, v_); }
        long long yu() const { return mu(y_, u_); }
        long long yv() const { return mu(y_, v_); }

        std::string mu_values() const {
            return "xy=" + std::to_string(xy()) + " xu=" + std::to_string(xu()) + " xv=" + std::to_string(xv()) +
                   " yu=" + std::to_string(yu()) + " yv=" + std::to_string(yv());
        }
        void swap_xy(const std::string& why) {
            std::swap(x_, y_);
            trace.relabelings.push_back("tree x<->y (" + why + ")");
        }
        void swap_uv(const std::string& why) {
            std::swap(u_, v_);
            trace.relabelings.push_back("tree u<->v (" + why + ")");
        }
        void swap_both(const std::string& why) {
            std::swap(x_, y_);
            std::swap(u_, v_);
            trace.relabelings.push_back("tree x<->y and u<->v (" + why + ")");
        }

        // ---- host side -------------------------------------------------------------

        void set_pair(const SpecialPair& p) {
            a_ = p.a;
            b_ = p.b;
            c_ = p.c;
            d_ = p.d;
        }
        long long deg(Vertex p, Vertex r) const { return static_cast<long long>(index_.degree(VertexSet{p, r})); }
        long long dp(Vertex p, Vertex r) const {
            VertexSet avoid{a_, b_, c_, d_};
            long long count = 0;
            for (Vertex z : index_.neighbours(VertexSet{p, r}))
                if (!avoid.contains(z))
                    ++count;
            return count;
        }
        Rational w_edge(Vertex p, Vertex r, Vertex s) const { return default_weight_edge(index_, VertexSet{p, r, s}); }
        void swap_ac(const std::string& why) {
            std::swap(a_, c_);
            trace.relabelings.push_back("host a<->c (" + why + ")");
        }

        // ---- gates -----------------------------------------------------------------

        void gate(const std::string& name, bool passed, const std::string& detail) {
            trace.gates.push_back({name, detail, passed, nominal_});
            if (!passed && nominal_)
                throw GateFailure("gate '" + name + "' failed in case " + trace.case_name + ": " + detail, trace);
        }
        void gate_ge(const std::string& name, long long lhs, long long rhs) {
            gate(name, lhs >= rhs, std::to_string(lhs) + " >= " + std::to_string(rhs));
        }
        void gate_le(const std::string& name, long long lhs, long long rhs) {
            gate(name, lhs <= rhs, std::to_string(lhs) + " <= " + std::to_string(rhs));
        }
        void gate_gt(const std::string& name, long long lhs, long long rhs) {
            gate(name, lhs > rhs, std::to_string(lhs) + " > " + std::to_string(rhs));
        }
        void gate_lt(const std::string& name, const Rational& lhs, const Rational& rhs) {
            gate(name, lhs < rhs, to_string(lhs) + " < " + to_string(rhs));
        }

        void set_order(std::initializer_list<std::pair<Vertex*, Vertex*>> pairs) {
            order_.clear();
            for (auto [p, r] : pairs)
                order_.push_back({*p, *r});
        }

        // ---- heavy center pair -----------------------------------------------------

        void heavy_center(int m) {
            trace.route = "center-heavy";
            FinderOptions opt;
            opt.allow_small_m = true;
            auto found = find_center_pair(host_, m, opt);
            trace.discharge = std::move(found.trace);
            set_pair(found.pair);
            if (dp(a_, b_) > dp(c_, b_))
                swap_ac("d'(ab) <= d'(cb)");
            trace.pair = make_special_pair(host_, index_, a_, b_, c_, d_, PairKind::CenterPair);

            gate_lt("light e: w(e) < 3/m", w_edge(a_, b_, c_), q(3, m));
            gate_ge("good center: d(ac) >= m+1", deg(a_, c_), m + 1);
            gate_ge("low side: d'(ab) >= floor(m/3)", dp(a_, b_), fl(m, 3));
            gate_ge("high side: d'(cb) >= floor(2m/3)", dp(c_, b_), fl(2 * m, 3));
            const bool d1_is_ad = dp(a_, d_) <= dp(c_, d_);
            const long long d1 = std::min(dp(a_, d_), dp(c_, d_));
            const long long d2 = std::max(dp(a_, d_), dp(c_, d_));
            trace.relabelings.push_back(std::string("host smaller right side is ") + (d1_is_ad ? "ad" : "cd"));
            gate_ge("right floor: d'_1 >= floor(m/3)-1", d1, fl(m, 3) - 1);
            gate_ge("right: d'_2 >= floor(m/3)", d2, fl(m, 3));
            gate_ge("center load: mu(xy) >= floor(m/3)", xy(), fl(m, 3));
            const long long side = xu() + xv() + yu() + yv();
            gate("side loads: 3(mu(xu)+mu(xv)+mu(yu)+mu(yv)) < 2m", 3 * side < 2 * m,
                 std::to_string(3 * side) + " < " + std::to_string(2 * m));

            if (dp(a_, b_) >= fl(2 * m, 3)) {
                trace.case_name = "center-heavy/wide-base";
                if (xu() + yu() < xv() + yv())
                    swap_uv("mu(xu)+mu(yu) >= mu(xv)+mu(yv)");
                if (xv() < yv())
                    swap_xy("mu(xv) >= mu(yv)");
                gate_le("right loads: mu(xv)+mu(yv) <= floor(m/3)", xv() + yv(), fl(m, 3));
                gate("thin corner: 6 mu(yv) < m", 6 * yv() < m, std::to_string(6 * yv()) + " < " + std::to_string(m));
                phi_[u_] = b_;
                phi_[v_] = d_;
                if (d1_is_ad) {
                    phi_[y_] = a_;
                    phi_[x_] = c_;
                } else {
                    phi_[y_] = c_;
                    phi_[x_] = a_;
                }
                set_order({{&y_, &v_}, {&x_, &v_}, {&y_, &u_}, {&x_, &u_}, {&x_, &y_}});
                return;
            }
            phi_[x_] = a_;
            phi_[y_] = c_;
            phi_[u_] = b_;
            phi_[v_] = d_;
            if (d1 >= fl(m, 3)) {
                trace.case_name = "center-heavy/balanced-right";
                gate_ge("right: d'_2 >= floor(m/2)", d2, fl(m, 2));
                if (!d1_is_ad) {
                    if (xu() + yv() > yu() + xv())
                        swap_xy("mu(xu)+mu(yv) <= mu(yu)+mu(xv)");
                    if (yu() < xv())
                        swap_both("mu(yu) >= mu(xv)");
                    refresh_phi();
                    gate_le("mu(xu)+mu(yv) <= floor(m/3)", xu() + yv(), fl(m, 3));
                    gate_le("mu(xu)+mu(yv)+mu(xv) <= floor(m/2)", xu() + yv() + xv(), fl(m, 2));
                    set_order({{&y_, &v_}, {&x_, &u_}, {&x_, &v_}, {&y_, &u_}, {&x_, &y_}});
                } else {
                    if (xu() + xv() > yu() + yv())
                        swap_xy("mu(xu)+mu(xv) <= mu(yu)+mu(yv)");
                    if (yu() < yv())
                        swap_uv("mu(yu) >= mu(yv)");
                    refresh_phi();
                    gate_le("mu(xu)+mu(xv) <= floor(m/3)", xu() + xv(), fl(m, 3));
                    gate_le("mu(xu)+mu(xv)+mu(yv) <= floor(m/2)", xu() + xv() + yv(), fl(m, 2));
                    set_order({{&x_, &v_}, {&x_, &u_}, {&y_, &v_}, {&y_, &u_}, {&x_, &y_}});
                }
                return;
            }
            trace.case_name = "center-heavy/thin-right";
            gate_ge("right: d'_2 >= floor(2m/3)", d2, fl(2 * m, 3));
            if (!d1_is_ad) {
                if (xu() + yv() > yu() + xv())
                    swap_xy("mu(xu)+mu(yv) <= mu(yu)+mu(xv)");
                if (xu() < yv())
                    swap_both("mu(xu) >= mu(yv)");
                refresh_phi();
                gate_le("mu(xu)+mu(yv) <= floor(m/3)", xu() + yv(), fl(m, 3));
                gate_le("mu(yv) <= floor(m/6)", yv(), fl(m, 6));
                set_order({{&y_, &v_}, {&x_, &u_}, {&x_, &v_}, {&y_, &u_}, {&x_, &y_}});
            } else {
                if (xu() + xv() > yu() + yv())
                    swap_xy("mu(xu)+mu(xv) <= mu(yu)+mu(yv)");
                if (xu() < xv())
                    swap_uv("mu(xu) >= mu(xv)");
                refresh_phi();
                gate_le("mu(xu)+mu(xv) <= floor(m/3)", xu() + xv(), fl(m, 3));
                gate_le("mu(xv) <= floor(m/6)", xv(), fl(m, 6));
                set_order({{&x_, &v_}, {&x_, &u_}, {&y_, &v_}, {&y_, &u_}, {&x_, &y_}});
            }
        }

        // ---- light center pair -----------------------------------------------------

        void light_center(int m) {
            trace.route = "center-light";
            auto found = find_min_codegree_pair(host_, q(m, 3));
            trace.discharge = std::move(found.trace);
            set_pair(found.pair);

            const Rational w0 = q(3, m);
            const Rational we = w_edge(a_, b_, c_);
            const Rational wf = w_edge(a_, d_, c_);
            const long long dac = deg(a_, c_);
            gate_le("center load: mu(xy) <= floor(m/3)-1", xy(), fl(m, 3) - 1);
            gate_lt("light e: w(e) < 3/m", we, w0);
            gate("shared pair is the minimum: d(ac) = d_min(e)", dac <= deg(a_, b_) && dac <= deg(b_, c_),
                 "d(ac)=" + std::to_string(dac) + " d(ab)=" + std::to_string(deg(a_, b_)) +
                     " d(bc)=" + std::to_string(deg(b_, c_)));
            if (dac >= 2)
                gate_lt("f bounded: w(f) < 3/m + 3/(d(ac)-1) (3/m - w(e))", wf, w0 + q(3, dac - 1) * (w0 - we));
            if (2 * dac > m)
                gate_lt("f bound, wide center: w(f) < 3/m + (3/m - w(e))/3", wf, w0 + (w0 - we) / 3);
            else
                gate_lt("f bound, narrow center: w(f) < 3/m + (3/m - w(e))/2", wf, w0 + (w0 - we) / 2);
            gate_lt("w(f) < 4/m", wf, q(4, m));
            const long long lmax = std::max(deg(a_, b_), deg(b_, c_));
            const long long lmin = std::min(deg(a_, b_), deg(b_, c_));
            gate_gt("L_max > m", lmax, m);

            if (lmin > m) {
                if (deg(a_, d_) < deg(c_, d_))
                    swap_ac("d(ad) >= d(cd)");
                trace.pair = make_special_pair(host_, index_, a_, b_, c_, d_, PairKind::MinCodegreePair);
                if (xu() + yu() < xv() + yv())
                    swap_uv("mu(xu)+mu(yu) >= mu(xv)+mu(yv)");
                if (xv() < yv())
                    swap_xy("mu(xv) >= mu(yv)");
                trace.case_name = 3 * dac > 2 * m ? "center-light/wide-left/high-center" : "center-light/wide-left/low-center";
                gate_le("mu(yv) <= floor(m/4)", yv(), fl(m, 4));
                gate_le("mu(xv)+mu(yv) <= floor((m-1)/2)", xv() + yv(), fl(m - 1, 2));
                gate_le("mu(yv)+mu(xy) <= floor(m/2)-1", yv() + xy(), fl(m, 2) - 1);
                gate_le("mu(xv)+mu(yv)+mu(xy) <= floor(2m/3)-1", xv() + yv() + xy(), fl(2 * m, 3) - 1);
                const long long rmax = deg(a_, d_), rmin = deg(c_, d_);
                if (3 * dac > 2 * m) {
                    gate_gt("2 R_max > m", 2 * rmax, m);
                    gate_gt("3 R_min > m", 3 * rmin, m);
                    gate_ge("d'(ab) >= m-1", dp(a_, b_), m - 1);
                    gate_ge("d'(bc) >= m-1", dp(b_, c_), m - 1);
                    gate_ge("d'(ac) >= floor(2m/3)-1", dp(a_, c_), fl(2 * m, 3) - 1);
                    gate_ge("d'(ad) >= floor(m/2)-1", dp(a_, d_), fl(m, 2) - 1);
                    gate_ge("d'(cd) >= floor(m/3)-1", dp(c_, d_), fl(m, 3) - 1);
                    map_straight();
                    set_order({{&y_, &v_}, {&x_, &v_}, {&x_, &y_}, {&y_, &u_}, {&x_, &u_}});
                } else {
                    gate("w(e) >= 3/(2m)", we >= q(3, 2 * m), to_string(we) + " >= " + to_string(q(3, 2 * m)));
                    gate_lt("w(f) < 7/(2m)", wf, q(7, 2 * m));
                    gate_lt("1/R_max + 1/R_min < 2/m", q(1, rmax) + q(1, rmin), q(2, m));
                    gate_gt("R_max > m", rmax, m);
                    gate_gt("2 R_min > m", 2 * rmin, m);
                    gate_ge("d'(ab) >= m-1", dp(a_, b_), m - 1);
                    gate_ge("d'(bc) >= m-1", dp(b_, c_), m - 1);
                    gate_ge("d'(ad) >= m-1", dp(a_, d_), m - 1);
                    gate_ge("d'(ac) >= floor(m/3)-1", dp(a_, c_), fl(m, 3) - 1);
                    gate_ge("d'(cd) >= floor(m/2)-1", dp(c_, d_), fl(m, 2) - 1);
                    map_straight();
                    set_order({{&x_, &y_}, {&y_, &v_}, {&x_, &v_}, {&y_, &u_}, {&x_, &u_}});
                }
                return;
            }

            if (deg(a_, b_) < deg(b_, c_))
                swap_ac("d(ab) >= d(bc)");
            trace.pair = make_special_pair(host_, index_, a_, b_, c_, d_, PairKind::MinCodegreePair);
            const long long rmax = std::max(deg(a_, d_), deg(c_, d_));
            const long long rmin = std::min(deg(a_, d_), deg(c_, d_));
            const bool a_side = deg(a_, d_) >= deg(c_, d_);
            trace.case_name = std::string("center-light/narrow-left/") + (rmax > m ? "wide-right/" : "narrow-right/") +
                              (a_side ? "a-side" : "c-side");
            gate_gt("3 L_min > 2m", 3 * lmin, 2 * m);
            gate_gt("2 d(ac) > m", 2 * dac, m);
            gate_le("d(ac) <= m", dac, m);
            gate("w(e) > 2/m", we > q(2, m), to_string(we) + " > " + to_string(q(2, m)));
            gate_ge("d'(ab) >= m-1", dp(a_, b_), m - 1);
            gate_ge("d'(bc) >= floor(2m/3)-1", dp(b_, c_), fl(2 * m, 3) - 1);
            gate_ge("d'(ac) >= floor(m/2)-1", dp(a_, c_), fl(m, 2) - 1);
            gate_lt("w(f) < 10/(3m)", wf, q(10, 3 * m));
            gate_lt("1/R_max + 1/R_min < 7/(3m)", q(1, rmax) + q(1, rmin), q(7, 3 * m));
            map_straight();

            if (rmax > m) {
                gate_gt("7 R_min > 3m", 7 * rmin, 3 * m);
                if (a_side) {
                    gate_ge("d'(ad) >= m-1", dp(a_, d_), m - 1);
                    gate_ge("d'(cd) >= floor(3m/7)-1", dp(c_, d_), fl(3 * m, 7) - 1);
                    if (xu() + xv() < yu() + yv())
                        swap_xy("mu(xu)+mu(xv) >= mu(yu)+mu(yv)");
                    if (yu() < yv())
                        swap_uv("mu(yu) >= mu(yv)");
                    refresh_phi();
                    gate_le("mu(yv) <= floor((m-1)/4)", yv(), fl(m - 1, 4));
                    gate_le("mu(yv)+mu(xy) <= floor(m/2)-1", yv() + xy(), fl(m, 2) - 1);
                    gate_le("mu(yv)+mu(xy)+mu(yu) <= floor(2m/3)-1", yv() + xy() + yu(), fl(2 * m, 3) - 1);
                    set_order({{&y_, &v_}, {&x_, &y_}, {&y_, &u_}, {&x_, &v_}, {&x_, &u_}});
                } else {
                    gate_ge("d'(ad) >= floor(3m/7)-1", dp(a_, d_), fl(3 * m, 7) - 1);
                    gate_ge("d'(cd) >= m-1", dp(c_, d_), m - 1);
                    if (xu() + yv() < xv() + yu())
                        swap_xy("mu(xu)+mu(yv) >= mu(xv)+mu(yu)");
                    if (yu() < xv())
                        swap_both("mu(yu) >= mu(xv)");
                    refresh_phi();
                    gate_le("mu(xv) <= floor((m-1)/4)", xv(), fl(m - 1, 4));
                    gate_le("mu(xv)+mu(xy) <= floor(m/2)-1", xv() + xy(), fl(m, 2) - 1);
                    gate_le("mu(xv)+mu(xy)+mu(yu) <= floor(2m/3)-1", xv() + xy() + yu(), fl(2 * m, 3) - 1);
                    set_order({{&x_, &v_}, {&x_, &y_}, {&y_, &u_}, {&y_, &v_}, {&x_, &u_}});
                }
                return;
            }
            gate_gt("7 R_max > 6m", 7 * rmax, 6 * m);
            gate_gt("4 R_min > 3m", 4 * rmin, 3 * m);
            gate_lt("w(ac) < 4/(3m)", q(1, dac), q(4, 3 * m));
            gate_ge("d'(ac) >= floor(3m/4)-1", dp(a_, c_), fl(3 * m, 4) - 1);
            if (a_side) {
                gate_ge("d'(ad) >= floor(6m/7)-1", dp(a_, d_), fl(6 * m, 7) - 1);
                gate_ge("d'(cd) >= floor(3m/4)-1", dp(c_, d_), fl(3 * m, 4) - 1);
                if (xu() + xv() < yu() + yv())
                    swap_xy("mu(xu)+mu(xv) >= mu(yu)+mu(yv)");
                if (xu() < xv())
                    swap_uv("mu(xu) >= mu(xv)");
                refresh_phi();
                gate("6 mu(xu) >= m", 6 * xu() >= m, std::to_string(6 * xu()) + " >= " + std::to_string(m));
                set_order({{&y_, &v_}, {&x_, &y_}, {&y_, &u_}, {&x_, &v_}, {&x_, &u_}});
            } else {
                gate_ge("d'(ad) >= floor(3m/4)-1", dp(a_, d_), fl(3 * m, 4) - 1);
                gate_ge("d'(cd) >= floor(6m/7)-1", dp(c_, d_), fl(6 * m, 7) - 1);
                if (xu() + yv() < xv() + yu())
                    swap_xy("mu(xu)+mu(yv) >= mu(xv)+mu(yu)");
                if (xu() < yv())
                    swap_both("mu(xu) >= mu(yv)");
                refresh_phi();
                gate("6 mu(xu) >= m", 6 * xu() >= m, std::to_string(6 * xu()) + " >= " + std::to_string(m));
                set_order({{&y_, &u_}, {&x_, &y_}, {&x_, &v_}, {&y_, &v_}, {&x_, &u_}});
            }
        }

        /// x, y, u, v onto a, c, b, d.
        void map_straight() { refresh_phi(); }
        void refresh_phi() {
            phi_.clear();
            phi_[x_] = a_;
            phi_[y_] = c_;
            phi_[u_] = b_;
            phi_[v_] = d_;
        }

        // ---- placement -------------------------------------------------------------

        Embedding place() {
            trace.mu = MuProfile{x_, y_, u_, v_, static_cast<int>(xy()), static_cast<int>(xu()),
                                 static_cast<int>(xv()), static_cast<int>(yu()), static_cast<int>(yv()), tree_.size()};
            std::set<Vertex> used{a_, b_, c_, d_};
            long long prior = 0;
            for (auto [p, r] : order_) {
                VertexSet tree_pair{p, r};
                VertexSet host_pair{phi_.at(p), phi_.at(r)};
                const std::vector<Vertex> none;
                auto it = leaves_.find(tree_pair);
                const std::vector<Vertex>& ls = it == leaves_.end() ? none : it->second;
                const long long load = static_cast<long long>(ls.size());
                const long long capacity = dp(host_pair[0], host_pair[1]);
                gate("capacity " + tree_pair.to_string() + "->" + host_pair.to_string() +
                         ": d'(host pair) - earlier leaves >= leaves here",
                     capacity - prior >= load,
                     std::to_string(capacity) + " - " + std::to_string(prior) + " >= " + std::to_string(load));
                PlacementStep step;
                step.tree_pair = tree_pair;
                step.host_pair = host_pair;
                std::vector<Vertex> free;
                for (Vertex z : index_.neighbours(host_pair))
                    if (!used.contains(z))
                        free.push_back(z);
                step.available = free.size();
                if (free.size() < ls.size()) {
                    trace.steps.push_back(step);
                    throw GreedyExhausted("greedy placement starved at " + tree_pair.to_string() + " -> " +
                                              host_pair.to_string() + ": " + std::to_string(free.size()) +
                                              " free vertices for " + std::to_string(ls.size()) + " leaves",
                                          trace, tree_pair, host_pair);
                }
                for (std::size_t i = 0; i < ls.size(); ++i) {
                    step.leaves.push_back(ls[i]);
                    step.images.push_back(free[i]);
                    phi_[ls[i]] = free[i];
                    used.insert(free[i]);
                }
                prior += load;
                trace.steps.push_back(std::move(step));
            }
            Embedding emb;
            for (const auto& [from, to] : phi_)
                emb.map[from] = to;
            compute_edge_images(tree_, emb);
            return emb;
        }

        const Hypergraph& tree_;
        std::vector<std::size_t> trunk_;
        const Hypergraph& host_;
        LinkIndex index_;
        bool nominal_ = true;
        Vertex x_ = 0, y_ = 0, u_ = 0, v_ = 0;
        Vertex a_ = 0, b_ = 0, c_ = 0, d_ = 0;
        std::map<VertexSet, std::vector<Vertex>> leaves_;
        std::map<Vertex, Vertex> phi_;
        std::vector<std::pair<Vertex, Vertex>> order_;
    };

} // namespace

Trunk2Result embed_trunk2(const Hypergraph& tree, const TrunkCertificate& trunk, const Hypergraph& host,
                          const EmbedOptions& options) {
    if (tree.r() != 3 || host.r() != 3)
        throw PreconditionError("the trunk embedder handles 3-graphs only");
    if (tree.size() < 2)
        throw PreconditionError("the tree needs at least two edges");
    if (trunk.trunk_edges.empty() || trunk.trunk_edges.size() > 2)
        throw PreconditionError("the trunk must have one or two edges (got " + std::to_string(trunk.trunk_edges.size()) +
                                ")");
    if (!std::holds_alternative<TrunkCertificate>(is_trunk(tree, trunk.trunk_edges)))
        throw PreconditionError("the given edges are not a trunk of the tree");

    std::vector<std::size_t> trunk_edges = trunk.trunk_edges;
    std::string extended;
    if (trunk_edges.size() == 1) {
        for (std::size_t i = 0; i < tree.size(); ++i)
            if (i != trunk_edges[0]) {
                extended = "one-edge trunk extended by " + tree.edge(i).to_string();
                trunk_edges = {trunk_edges[0], i};
                break;
            }
    }

    const long long m = static_cast<long long>(tree.size()) - 1;
    LinkIndex host_index(host);
    const long long shadow_size = static_cast<long long>(host_index.shadow_size());
    if (3 * static_cast<long long>(host.size()) <= m * shadow_size)
        throw PreconditionError("host has " + std::to_string(host.size()) + " edges, not above ((t-1)/3)|shadow| = " +
                                to_string(Rational(BigInt(m * shadow_size), BigInt(3))));

    PeelResult peeled = peel_to_min_codegree(host, Rational(BigInt(m), BigInt(3)));
    Pipeline pipeline(tree, trunk_edges, peeled.graph);
    EmbedTrace& tr = pipeline.trace;
    if (!extended.empty())
        tr.notes.push_back(extended);
    tr.host_edges_before = host.size();
    tr.host_edges_after = peeled.graph.size();
    tr.peel_rounds = peeled.rounds;
    tr.m = static_cast<int>(m);
    tr.tree_edges = tree.size();

    auto hard_gate = [&](const std::string& name, bool ok, const std::string& detail) {
        tr.gates.push_back({name, detail, ok, true});
        if (!ok)
            throw GateFailure("gate '" + name + "' failed after peeling: " + detail, tr);
    };
    hard_gate("peeled host nonempty", !peeled.emptied, std::to_string(peeled.graph.size()) + " edges");
    const long long delta = static_cast<long long>(min_p_degree(peeled.graph, 2));
    hard_gate("peeled min pair degree > m/3", 3 * delta > m, "3*" + std::to_string(delta) + " > " + std::to_string(m));
    const long long peeled_shadow = static_cast<long long>(LinkIndex(peeled.graph).shadow_size());
    hard_gate("peeled host above threshold", 3 * static_cast<long long>(peeled.graph.size()) > m * peeled_shadow,
              "3*" + std::to_string(peeled.graph.size()) + " > " + std::to_string(m) + "*" +
                  std::to_string(peeled_shadow));

    Trunk2Result result;
    try {
        result.embedding = pipeline.run();
        result.trace = pipeline.trace;
    } catch (const GreedyExhausted& starved) {
        if (!options.fallback_to_backtracking)
            throw;
        auto fallback = embed_backtracking(tree, host, options.fallback_budget);
        if (fallback.status != SearchStatus::Found)
            throw;
        result.embedding = std::move(*fallback.embedding);
        result.trace = starved.trace();
        result.trace.used_fallback = true;
        result.trace.notes.push_back("greedy placement starved; backtracking embedder found a copy after " +
                                     std::to_string(fallback.nodes) + " nodes");
    }
    if (!validate_embedding(tree, host, result.embedding))
        throw InternalDiagnostic("trunk embedder produced an invalid embedding: " + result.embedding.to_string());
    return result;
}

} // namespace tightree
