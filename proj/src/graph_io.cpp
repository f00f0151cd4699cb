#include "netpolicy/graph_io.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "netpolicy/errors.hpp"

namespace netpolicy {

void write_edge_list(std::ostream& out, const Graph& g) {
  out << "n=" << g.num_nodes() << '\n';
  for (auto [u, v] : g.edge_list()) out << u << ' ' << v << '\n';
}

void write_edge_list(const std::filesystem::path& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_edge_list(out, g);
}

Graph read_edge_list(std::istream& in) {
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) break;
  }
  if (line.rfind("n=", 0) != 0)
    throw ParseError("edge list: line " + std::to_string(line_no) +
                     ": expected header \"n=<count>\"");
  int n = 0;
  try {
    std::size_t used = 0;
    n = std::stoi(line.substr(2), &used);
    if (used != line.size() - 2 || n < 0) throw std::invalid_argument("n");
  } catch (const std::exception&) {
    throw ParseError("edge list: line " + std::to_string(line_no) + ": bad actor count");
  }
  Graph g(n);
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::istringstream row(line);
    long long u = -1;
    long long v = -1;
    std::string extra;
    if (!(row >> u >> v) || (row >> extra))
      throw ParseError("edge list: line " + std::to_string(line_no) + ": expected \"u v\"");
    if (u < 0 || v < 0 || u >= n || v >= n || u == v)
      throw ParseError("edge list: line " + std::to_string(line_no) + ": invalid pair");
    g.add_edge(static_cast<NodeId>(u), static_cast<NodeId>(v));
  }
  return g;
}

Graph read_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  return read_edge_list(in);
}

std::string metrics_json(const GraphMetrics& m) {
  nlohmann::ordered_json j;
  j["n"] = m.n;
  j["edges"] = m.edges;
  j["density"] = m.density;
  j["mean_degree"] = m.mean_degree;
  j["transitivity"] = m.transitivity;
  j["max_degree"] = m.max_degree;
  j["components"] = m.components;
  j["connected"] = m.components <= 1;
  return j.dump();
}

}  // namespace netpolicy
