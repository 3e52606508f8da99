#pragma once

#include "tightree/hypergraph.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tightree {

/// Contents of a `.hg` file.
///
///     # comment
///     r n
///     a b c        one edge per line, any vertex order
///     # order: 2 0 1
///
/// The optional `# order:` comment lists edge indices (into the sorted edge
/// list) forming a proper ordering; it is validated when present.
struct HgDocument {
    Hypergraph graph;
    std::optional<std::vector<std::size_t>> order;
};

/// Throws ParseError carrying the offending line number.
HgDocument parse_hg(std::string_view text);
HgDocument load_hg(const std::filesystem::path& path);

/// Canonical text: header, then edges in sorted order, then the order comment if any.
std::string format_hg(const Hypergraph& g, const std::optional<std::vector<std::size_t>>& order = std::nullopt);
void save_hg(const std::filesystem::path& path, const Hypergraph& g,
             const std::optional<std::vector<std::size_t>>& order = std::nullopt);

} // namespace tightree
