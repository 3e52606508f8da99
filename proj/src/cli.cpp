#include "tightree/cli.hpp"

#include "tightree/embedding.hpp"
#include "tightree/errors.hpp"
#include "tightree/hg_format.hpp"
#include "tightree/tight_tree.hpp"
#include "tightree/tree_gen.hpp"
#include "tightree/trunk_embedder.hpp"
#include "tightree/turan.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <ostream>

namespace tightree {

namespace {

    using nlohmann::json;

    /// What a verb produced: text lines and the same fields as JSON.
    struct Report {
        int code = kExitOk;
        std::vector<std::string> lines;
        json data = json::object();

        void add(std::string line) { lines.push_back(std::move(line)); }
    };

    json edges_json(const Hypergraph& g) {
        json edges = json::array();
        for (const auto& e : g.edges())
            edges.push_back(e.vertices());
        return edges;
    }

    json gate_json(const GateCheck& g) {
        return {{"name", g.name}, {"detail", g.detail}, {"passed", g.passed}, {"hard", g.hard}};
    }

    json trace_json(const EmbedTrace& t) {
        json gates = json::array();
        for (const auto& g : t.gates)
            gates.push_back(gate_json(g));
        json steps = json::array();
        for (const auto& s : t.steps)
            steps.push_back({{"tree_pair", s.tree_pair.vertices()},
                             {"host_pair", s.host_pair.vertices()},
                             {"available", s.available},
                             {"leaves", s.leaves},
                             {"images", s.images}});
        json out = {{"m", t.m},
                    {"route", t.route},
                    {"case", t.case_name},
                    {"notes", t.notes},
                    {"relabelings", t.relabelings},
                    {"peel_rounds", t.peel_rounds},
                    {"host_edges_before", t.host_edges_before},
                    {"host_edges_after", t.host_edges_after},
                    {"gates", gates},
                    {"steps", steps},
                    {"used_fallback", t.used_fallback},
                    {"mu",
                     {{"x", t.mu.x},
                      {"y", t.mu.y},
                      {"u", t.mu.u},
                      {"v", t.mu.v},
                      {"xy", t.mu.xy},
                      {"xu", t.mu.xu},
                      {"xv", t.mu.xv},
                      {"yu", t.mu.yu},
                      {"yv", t.mu.yv}}}};
        if (t.pair)
            out["pair"] = {{"a", t.pair->a},           {"b", t.pair->b},
                           {"c", t.pair->c},           {"d", t.pair->d},
                           {"w_e", to_string(t.pair->w_e)}, {"w_f", to_string(t.pair->w_f)},
                           {"w_ac", to_string(t.pair->w_ac)}, {"kind", to_string(t.pair->kind)}};
        if (t.discharge)
            out["discharge"] = {{"route", t.discharge->route},
                                {"w0", to_string(t.discharge->w0)},
                                {"transfers", t.discharge->transfers.size()},
                                {"total_before", to_string(t.discharge->total_before())},
                                {"total_after", to_string(t.discharge->total_after())}};
        return out;
    }

    json embedding_json(const Embedding& e) {
        json map = json::array();
        for (const auto& [from, to] : e.map)
            map.push_back({from, to});
        return map;
    }

    // ---- verbs -----------------------------------------------------------------------

    Report analyze(const std::string& path, std::size_t cap) {
        Report rep;
        auto doc = load_hg(path);
        const Hypergraph& h = doc.graph;
        rep.data["edges"] = h.size();
        auto witness = find_proper_ordering(h);
        rep.data["tight"] = witness.has_value();
        if (!witness) {
            rep.add("tight tree: no");
            rep.code = kExitNegative;
            return rep;
        }
        rep.add("tight tree: yes (" + std::to_string(h.size()) + " edges)");
        std::string order = "ordering";
        json order_json = json::array();
        for (std::size_t i = 0; i < witness->ordering.size(); ++i) {
            order += " " + h.edge(witness->ordering[i]).to_string();
            json step = {{"edge", h.edge(witness->ordering[i]).vertices()}};
            if (witness->new_vertex[i]) {
                order += "+" + std::to_string(*witness->new_vertex[i]);
                step["new_vertex"] = *witness->new_vertex[i];
                step["anchor"] = *witness->anchor[i];
            }
            order_json.push_back(step);
        }
        rep.add(order);
        rep.data["ordering"] = order_json;
        VertexSet ls = leaves(h);
        rep.add("leaves " + ls.to_string());
        rep.data["leaves"] = ls.vertices();
        if (h.size() < 2) {
            rep.add("trunk size: n/a (single edge)");
            return rep;
        }
        auto trunk = min_trunk_size(h, cap);
        if (!trunk.size) {
            rep.add("trunk size: > " + std::to_string(cap));
            rep.data["trunk_size"] = nullptr;
            return rep;
        }
        std::string trunk_line = "trunk size " + std::to_string(*trunk.size) + ":";
        json trunk_edges = json::array();
        for (auto i : trunk.certificate->trunk_edges) {
            trunk_line += " " + h.edge(i).to_string();
            trunk_edges.push_back(h.edge(i).vertices());
        }
        rep.add(trunk_line);
        rep.data["trunk_size"] = *trunk.size;
        rep.data["trunk"] = trunk_edges;
        if (*trunk.size == 2 && h.r() == 3) {
            auto mu = mu_profile(h, trunk.certificate->trunk_edges[0], trunk.certificate->trunk_edges[1]);
            rep.add("mu x=" + std::to_string(mu.x) + " y=" + std::to_string(mu.y) + " u=" + std::to_string(mu.u) +
                    " v=" + std::to_string(mu.v) + " xy=" + std::to_string(mu.xy) + " xu=" + std::to_string(mu.xu) +
                    " xv=" + std::to_string(mu.xv) + " yu=" + std::to_string(mu.yu) + " yv=" + std::to_string(mu.yv) +
                    " sum=" + std::to_string(mu.sum()));
            rep.data["mu"] = {{"x", mu.x},   {"y", mu.y},   {"u", mu.u},   {"v", mu.v},   {"xy", mu.xy},
                              {"xu", mu.xu}, {"xv", mu.xv}, {"yu", mu.yu}, {"yv", mu.yv}, {"sum", mu.sum()}};
        }
        return rep;
    }

    void add_trace(Report& rep, const EmbedTrace& trace) {
        for (auto& l : trace.lines())
            rep.add(l);
    }

    Report embed(const std::string& tree_path, const std::string& host_path, bool trace, bool fallback,
                 bool backtrack, std::uint64_t budget) {
        Report rep;
        auto tree = load_hg(tree_path).graph;
        auto host = load_hg(host_path).graph;
        rep.data["method"] = backtrack ? "backtracking" : "trunk";
        if (backtrack) {
            auto res = embed_backtracking(tree, host, budget);
            rep.data["status"] = to_string(res.status);
            rep.data["nodes"] = res.nodes;
            rep.add("status " + to_string(res.status) + " after " + std::to_string(res.nodes) + " nodes");
            if (res.embedding) {
                rep.add("map " + res.embedding->to_string());
                rep.data["map"] = embedding_json(*res.embedding);
            }
            rep.code = res.status == SearchStatus::Found         ? kExitOk
                       : res.status == SearchStatus::NoEmbedding ? kExitNegative
                                                                 : kExitDiagnostic;
            return rep;
        }
        if (tree.r() != 3)
            throw PreconditionError("the trunk embedder handles 3-graphs; use --backtrack");
        if (!is_tight_tree(tree))
            throw PreconditionError("pattern is not a tight tree");
        auto trunk = min_trunk_size(tree, 2);
        if (!trunk.size)
            throw PreconditionError("pattern has no trunk with at most two edges; use --backtrack");
        EmbedOptions options;
        options.fallback_to_backtracking = fallback;
        options.fallback_budget = budget;
        auto res = embed_trunk2(tree, *trunk.certificate, host, options);
        rep.add("map " + res.embedding.to_string());
        rep.add("route " + res.trace.route + " case " + res.trace.case_name);
        rep.data["map"] = embedding_json(res.embedding);
        rep.data["route"] = res.trace.route;
        rep.data["case"] = res.trace.case_name;
        if (trace) {
            add_trace(rep, res.trace);
            rep.data["trace"] = trace_json(res.trace);
        }
        return rep;
    }

    Report turan(int n, const std::string& tree_path, std::uint64_t budget, int threads, const std::string& output) {
        Report rep;
        auto tree = load_hg(tree_path).graph;
        auto res = brute_force_turan(n, tree, budget, threads);
        for (auto& l : res.lines())
            rep.add(l);
        rep.data = {{"n", n},
                    {"value", res.value},
                    {"bound", to_string(res.bound)},
                    {"complete", res.complete},
                    {"exceeds_bound", res.exceeds_bound},
                    {"level_sizes", res.stats.level_sizes},
                    {"graphs_examined", res.stats.graphs_examined},
                    {"embed_nodes", res.stats.embed_nodes},
                    {"witness", edges_json(res.witness)}};
        if (!output.empty()) {
            save_hg(output, res.witness);
            rep.add("witness written to " + output);
        }
        rep.code = res.complete ? kExitOk : kExitNegative;
        return rep;
    }

    Report verify_weights(const std::string& path) {
        Report rep;
        auto g = load_hg(path).graph;
        auto check = weight_identity_check(g);
        rep.add(to_string(check.lhs) + " = " + std::to_string(check.rhs) + (check.equal ? " OK" : " MISMATCH"));
        rep.data = {{"lhs", to_string(check.lhs)}, {"rhs", check.rhs}, {"equal", check.equal}};
        rep.code = check.equal ? kExitOk : kExitDiagnostic;
        return rep;
    }

    Report peel(const std::string& path, const std::string& q_text, const std::string& output) {
        Report rep;
        auto g = load_hg(path).graph;
        Rational q = parse_rational(q_text);
        auto res = peel_to_min_codegree(g, q);
        rep.add("q " + to_string(q) + ", rounds " + std::to_string(res.rounds) + ", removed " +
                std::to_string(res.removed_edges) + ", kept " + std::to_string(res.graph.size()));
        rep.data = {{"q", to_string(q)},
                    {"rounds", res.rounds},
                    {"removed", res.removed_edges},
                    {"kept", res.graph.size()},
                    {"emptied", res.emptied}};
        if (res.emptied) {
            rep.add("result is empty");
        } else {
            auto delta = min_p_degree(res.graph, g.r() - 1);
            rep.add("min codegree " + std::to_string(delta));
            rep.data["min_codegree"] = delta;
        }
        if (!output.empty()) {
            save_hg(output, res.graph);
            rep.add("result written to " + output);
        }
        return rep;
    }

    Report enumerate(int r, int t, int threads) {
        Report rep;
        auto trees = enumerate_tight_trees(r, t, threads);
        rep.add(std::to_string(trees.size()) + " tight trees with r=" + std::to_string(r) + " t=" + std::to_string(t));
        json list = json::array();
        for (const auto& tr : trees) {
            rep.add(format_edges(tr.tree));
            list.push_back(edges_json(tr.tree));
        }
        rep.data = {{"r", r}, {"t", t}, {"count", trees.size()}, {"trees", list}};
        return rep;
    }

    Report steiner(int n, int t, const std::string& output) {
        Report rep;
        auto res = steiner_lower_bound(n, t);
        for (auto& l : res.lines())
            rep.add(l);
        json blocks = json::array();
        for (const auto& b : res.blocks)
            blocks.push_back(b.vertices());
        rep.data = {{"n", n},
                    {"t", t},
                    {"edges", res.graph.size()},
                    {"blocks", blocks},
                    {"shadow_bound", to_string(res.shadow)},
                    {"kalai_bound", to_string(res.kalai)},
                    {"ratio", to_string(res.ratio)},
                    {"blocks_linear", res.blocks_linear}};
        if (!output.empty()) {
            save_hg(output, res.graph);
            rep.add("graph written to " + output);
        }
        rep.code = res.blocks_linear ? kExitOk : kExitDiagnostic;
        return rep;
    }

    Report audit(const std::string& host_path, const std::string& tree_path, bool trace, bool fallback,
                 std::uint64_t budget) {
        Report rep;
        auto host = load_hg(host_path).graph;
        auto tree = load_hg(tree_path).graph;
        EmbedOptions options;
        options.fallback_to_backtracking = fallback;
        options.fallback_budget = budget;
        auto res = bound_audit(host, tree, options);
        for (auto& l : res.lines())
            rep.add(l);
        rep.data = {{"edges", res.edges}, {"shadow_bound", to_string(res.bound)}, {"exceeds", res.exceeds}};
        if (res.copy) {
            rep.data["map"] = embedding_json(res.copy->embedding);
            if (trace) {
                add_trace(rep, res.copy->trace);
                rep.data["trace"] = trace_json(res.copy->trace);
            }
        }
        return rep;
    }

    void emit(const Report& rep, bool as_json, const std::string& verb, std::ostream& out) {
        if (as_json) {
            json doc = rep.data;
            doc["verb"] = verb;
            doc["exit"] = rep.code;
            doc["lines"] = rep.lines;
            out << doc.dump(2) << "\n";
            return;
        }
        for (const auto& l : rep.lines)
            out << l << "\n";
    }

    void emit_trace_json(std::ostream& out, const std::string& verb, int code, const std::string& message,
                         const EmbedTrace& trace) {
        json doc = {{"verb", verb}, {"exit", code}, {"error", message}, {"trace", trace_json(trace)}};
        out << doc.dump(2) << "\n";
    }

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Tight hypergraph trees: recognition, embedding and Turan experiments", "tightree"};
    app.require_subcommand(1);
    bool as_json = false;
    int threads = 1;
    std::uint64_t seed = 1;
    app.add_flag("--json", as_json, "Print the report as JSON");
    app.add_option("--threads", threads, "Worker threads for parallel searches")->check(CLI::Range(1, 256));
    app.add_option("--seed", seed, "Seed for randomized steps (all current verbs are deterministic)");

    std::string file, tree_path, host_path, q_text, output;
    std::size_t cap = 3;
    int n = 0, r = 3, t = 0;
    bool trace = false, fallback = false, backtrack = false;
    std::uint64_t budget = 50'000'000;

    auto* a = app.add_subcommand("analyze", "Tightness witness, leaves, minimum trunk size and leaf profile");
    a->add_option("file", file, "Hypergraph (.hg)")->required();
    a->add_option("--cap", cap, "Largest trunk size to search");

    auto* e = app.add_subcommand("embed", "Embed a tight 3-tree with trunk <= 2 into a host");
    e->add_option("tree", tree_path, "Tree (.hg)")->required();
    e->add_option("host", host_path, "Host (.hg)")->required();
    e->add_flag("--trace", trace, "Print the full case trace");
    e->add_flag("--fallback", fallback, "Use the backtracking embedder if greedy placement starves");
    e->add_flag("--backtrack", backtrack, "Use only the complete backtracking embedder");
    e->add_option("--budget", budget, "Node budget for backtracking");

    auto* tu = app.add_subcommand("turan", "Exact Turan number by exhaustive search");
    tu->add_option("-n", n, "Vertex count")->required();
    tu->add_option("tree", tree_path, "Forbidden pattern (.hg)")->required();
    std::uint64_t turan_budget = 5'000'000;
    tu->add_option("--budget", turan_budget, "Cap on candidate graphs examined");
    tu->add_option("-o", output, "Write the witness here");

    auto* w = app.add_subcommand("verify-weights", "Check that edge weights sum to the shadow size");
    w->add_option("file", file, "Hypergraph (.hg)")->required();

    auto* p = app.add_subcommand("peel", "Delete edges through low-codegree sets until none is left");
    p->add_option("file", file, "Hypergraph (.hg)")->required();
    p->add_option("-q", q_text, "Threshold q (integer or a/b)")->required();
    p->add_option("-o", output, "Write the peeled graph here");

    auto* en = app.add_subcommand("enumerate", "All tight trees up to isomorphism");
    en->add_option("-r", r, "Uniformity")->required();
    en->add_option("-t", t, "Edge count")->required();

    auto* st = app.add_subcommand("steiner", "Block construction without tight trees of t edges");
    st->add_option("-n", n, "Vertex count")->required();
    st->add_option("-t", t, "Tree edge count")->required();
    st->add_option("-o", output, "Write the graph here");

    auto* au = app.add_subcommand("audit", "Compare a host with the shadow bound and look for a copy above it");
    au->add_option("host", host_path, "Host (.hg)")->required();
    au->add_option("tree", tree_path, "Tree (.hg)")->required();
    au->add_flag("--trace", trace, "Print the full case trace");
    au->add_flag("--fallback", fallback, "Use the backtracking embedder if greedy placement starves");
    au->add_option("--budget", budget, "Node budget for the fallback");

    std::vector<std::string> argv_store{"tightree"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_store)
        argv.push_back(s.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& ex) {
        err << "error: " << ex.what() << "\n";
        return kExitPrecondition;
    }

    const std::string verb = app.get_subcommands().front()->get_name();
    try {
        Report rep;
        if (verb == "analyze")
            rep = analyze(file, cap);
        else if (verb == "embed")
            rep = embed(tree_path, host_path, trace, fallback, backtrack, budget);
        else if (verb == "turan")
            rep = turan(n, tree_path, turan_budget, threads, output);
        else if (verb == "verify-weights")
            rep = verify_weights(file);
        else if (verb == "peel")
            rep = peel(file, q_text, output);
        else if (verb == "enumerate")
            rep = enumerate(r, t, threads);
        else if (verb == "steiner")
            rep = steiner(n, t, output);
        else
            rep = audit(host_path, tree_path, trace, fallback, budget);
        emit(rep, as_json, verb, out);
        return rep.code;
    } catch (const ParseError& ex) {
        err << "parse error: " << ex.what() << "\n";
        return kExitPrecondition;
    } catch (const PreconditionError& ex) {
        err << "precondition failed: " << ex.what() << "\n";
        return kExitPrecondition;
    } catch (const GateFailure& ex) {
        err << "gate failure: " << ex.what() << "\n";
        if (as_json)
            emit_trace_json(out, verb, kExitDiagnostic, ex.what(), ex.trace());
        else
            for (auto& l : ex.trace().lines())
                out << l << "\n";
        return kExitDiagnostic;
    } catch (const GreedyExhausted& ex) {
        err << "greedy placement starved: " << ex.what() << "\n";
        if (as_json)
            emit_trace_json(out, verb, kExitDiagnostic, ex.what(), ex.trace());
        else
            for (auto& l : ex.trace().lines())
                out << l << "\n";
        return kExitDiagnostic;
    } catch (const InternalDiagnostic& ex) {
        err << "internal diagnostic: " << ex.what() << "\n";
        return kExitDiagnostic;
    }
}

} // namespace tightree
