#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "netpolicy/graph.hpp"

namespace netpolicy {

// Edge-list text format: a header line "n=<count>" followed by one "u v" pair
// per line with 0-based actor ids.
void write_edge_list(std::ostream& out, const Graph& g);
void write_edge_list(const std::filesystem::path& path, const Graph& g);
Graph read_edge_list(std::istream& in);
Graph read_edge_list(const std::filesystem::path& path);

/// Flat JSON object with the scalar entries of GraphMetrics.
std::string metrics_json(const GraphMetrics& m);

}  // namespace netpolicy
