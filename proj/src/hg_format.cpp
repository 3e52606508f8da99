#include "tightree/hg_format.hpp"

#include "tightree/errors.hpp"
#include "tightree/tight_tree.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace tightree {

namespace {

    std::vector<long long> parse_ints(std::string_view text, int line) {
        std::vector<long long> out;
        std::size_t i = 0;
        while (i < text.size()) {
            while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\r'))
                ++i;
            if (i == text.size())
                break;
            std::size_t j = i;
            while (j < text.size() && text[j] != ' ' && text[j] != '\t' && text[j] != '\r')
                ++j;
            long long value = 0;
            auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + j, value);
            if (ec != std::errc() || ptr != text.data() + j)
                throw ParseError("expected an integer, got '" + std::string(text.substr(i, j - i)) + "'", line);
            out.push_back(value);
            i = j;
        }
        return out;
    }

    std::string_view trim(std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
            s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
            s.remove_suffix(1);
        return s;
    }

} // namespace

HgDocument parse_hg(std::string_view text) {
    std::optional<int> r, n;
    std::vector<VertexSet> edges;
    std::set<VertexSet> seen;
    std::optional<std::vector<std::size_t>> order;
    int order_line = 0;

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;

        std::string_view body = line;
        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            std::string_view comment = trim(line.substr(hash + 1));
            if (comment.starts_with("order:")) {
                if (order)
                    throw ParseError("second order comment", line_no);
                std::vector<std::size_t> idx;
                for (long long v : parse_ints(comment.substr(6), line_no)) {
                    if (v < 0)
                        throw ParseError("negative edge index in order", line_no);
                    idx.push_back(static_cast<std::size_t>(v));
                }
                order = std::move(idx);
                order_line = line_no;
            }
            body = line.substr(0, hash);
        }
        body = trim(body);
        if (body.empty())
            continue;

        auto values = parse_ints(body, line_no);
        if (!r) {
            if (values.size() != 2)
                throw ParseError("header must be 'r n'", line_no);
            if (values[0] < 1 || values[1] < 0)
                throw ParseError("header values out of range", line_no);
            r = static_cast<int>(values[0]);
            n = static_cast<int>(values[1]);
            continue;
        }
        if (static_cast<int>(values.size()) != *r)
            throw ParseError("edge must list exactly " + std::to_string(*r) + " vertices", line_no);
        std::vector<Vertex> vs;
        for (long long v : values) {
            if (v < 0 || v >= *n)
                throw ParseError("vertex " + std::to_string(v) + " outside 0.." + std::to_string(*n - 1), line_no);
            vs.push_back(static_cast<Vertex>(v));
        }
        VertexSet e;
        try {
            e = VertexSet(std::move(vs));
        } catch (const PreconditionError&) {
            throw ParseError("edge repeats a vertex", line_no);
        }
        if (!seen.insert(e).second)
            throw ParseError("duplicate edge " + e.to_string(), line_no);
        edges.push_back(std::move(e));
    }
    if (!r)
        throw ParseError("missing 'r n' header", 0);

    HgDocument doc{Hypergraph(*r, *n, std::move(edges)), order};
    if (order) {
        try {
            auto verdict = is_proper_ordering(doc.graph, *order);
            if (auto* bad = std::get_if<OrderingRefutation>(&verdict))
                throw ParseError("stored order is not proper at position " + std::to_string(bad->failing_index) + ": " +
                                     bad->reason,
                                 order_line);
        } catch (const PreconditionError& e) {
            throw ParseError(std::string("stored order: ") + e.what(), order_line);
        }
    }
    return doc;
}

HgDocument load_hg(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open " + path.string(), 0);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_hg(buf.str());
}

std::string format_hg(const Hypergraph& g, const std::optional<std::vector<std::size_t>>& order) {
    std::string out = std::to_string(g.r()) + " " + std::to_string(g.n()) + "\n";
    for (const auto& e : g.edges()) {
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (i)
                out += ' ';
            out += std::to_string(e[i]);
        }
        out += '\n';
    }
    if (order) {
        out += "# order:";
        for (auto i : *order)
            out += " " + std::to_string(i);
        out += '\n';
    }
    return out;
}

void save_hg(const std::filesystem::path& path, const Hypergraph& g, const std::optional<std::vector<std::size_t>>& order) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw PreconditionError("cannot write " + path.string());
    out << format_hg(g, order);
}

} // namespace tightree
