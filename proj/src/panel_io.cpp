#include <fstream>
#include <iomanip>
#include <nlohmann/json.hpp>
#include <sstream>

#include "netpolicy/dgp.hpp"
#include "netpolicy/errors.hpp"
#include "netpolicy/graph_io.hpp"

namespace netpolicy {
namespace {

namespace fs = std::filesystem;

void write_wave_table(const fs::path& path, const NetworkState& s) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "actor,behavior,price\n" << std::setprecision(17);
  for (int i = 0; i < s.num_actors(); ++i)
    out << i << ',' << s.behavior[i] << ',' << s.price[i] << '\n';
}

void read_wave_table(const fs::path& path, NetworkState& s) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::string line;
  std::getline(in, line);
  if (line.rfind("actor,behavior,price", 0) != 0)
    throw ParseError(path.string() + ": row 0: expected header actor,behavior,price");
  const auto n = static_cast<std::size_t>(s.num_actors());
  s.behavior.assign(n, 0);
  s.price.assign(n, 0.0);
  std::vector<char> seen(n, 0);
  int row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream cells(line);
    long long actor = -1;
    int behavior = -1;
    double price = 0.0;
    char c1 = 0;
    char c2 = 0;
    if (!(cells >> actor >> c1 >> behavior >> c2 >> price) || c1 != ',' || c2 != ',')
      throw ParseError(path.string() + ": row " + std::to_string(row) + ": malformed");
    if (actor < 0 || static_cast<std::size_t>(actor) >= n || seen[actor])
      throw ParseError(path.string() + ": row " + std::to_string(row) + ", column actor: invalid id");
    if (behavior != 0 && behavior != 1)
      throw ParseError(path.string() + ": row " + std::to_string(row) + ", column behavior: must be 0 or 1");
    seen[actor] = 1;
    s.behavior[actor] = behavior;
    s.price[actor] = price;
  }
  for (std::size_t i = 0; i < n; ++i)
    if (!seen[i]) throw ParseError(path.string() + ": actor " + std::to_string(i) + " missing");
}

}  // namespace

void write_panel(const fs::path& dir, const Panel& panel, const nlohmann::json& manifest) {
  panel.validate();
  fs::create_directories(dir);
  nlohmann::ordered_json m;
  m["actors"] = panel.num_actors();
  m["labels"] = panel.labels;
  nlohmann::ordered_json files = nlohmann::ordered_json::array();
  for (std::size_t w = 0; w < panel.num_waves(); ++w) {
    const std::string stem = "wave_" + panel.labels[w];
    write_edge_list(dir / (stem + ".edges"), panel.waves[w].graph);
    write_wave_table(dir / (stem + ".csv"), panel.waves[w]);
    files.push_back({{"label", panel.labels[w]}, {"edges", stem + ".edges"}, {"table", stem + ".csv"}});
  }
  m["waves"] = files;
  if (manifest.is_object())
    for (const auto& [k, v] : manifest.items()) m[k] = v;
  std::ofstream out(dir / "manifest.json");
  if (!out) throw std::runtime_error("cannot write " + (dir / "manifest.json").string());
  out << m.dump(2) << '\n';
}

Panel read_panel(const fs::path& dir) {
  std::ifstream in(dir / "manifest.json");
  if (!in) throw ParseError("cannot open " + (dir / "manifest.json").string());
  nlohmann::json m;
  try {
    m = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("panel manifest: " + std::string(e.what()));
  }
  Panel panel;
  try {
    for (const auto& w : m.at("waves")) {
      NetworkState s;
      s.graph = read_edge_list(dir / w.at("edges").get<std::string>());
      read_wave_table(dir / w.at("table").get<std::string>(), s);
      panel.labels.push_back(w.at("label").get<std::string>());
      panel.waves.push_back(std::move(s));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("panel manifest: " + std::string(e.what()));
  }
  panel.validate();
  return panel;
}

}  // namespace netpolicy
