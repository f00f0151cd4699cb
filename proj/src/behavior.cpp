#include "netpolicy/behavior.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <charconv>
#include <nlohmann/json.hpp>

#include "netpolicy/errors.hpp"
#include "netpolicy/stats.hpp"

namespace netpolicy {

int ActorTable::adopters() const {
  int k = 0;
  for (const Actor& a : rows) k += a.behavior;
  return k;
}

int ActorTable::males() const {
  int k = 0;
  for (const Actor& a : rows) k += a.gender;
  return k;
}

std::vector<int> ActorTable::behaviors() const {
  std::vector<int> out;
  out.reserve(rows.size());
  for (const Actor& a : rows) out.push_back(a.behavior);
  return out;
}

std::vector<double> ActorTable::prices() const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const Actor& a : rows) out.push_back(a.pric);
  return out;
}

ActorTable ActorTable::head(std::size_t n) const {
  if (n > rows.size())
    throw InvalidInput("actor table has " + std::to_string(rows.size()) + " rows, " +
                       std::to_string(n) + " requested");
  return {std::vector<Actor>(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(n))};
}

double linear_predictor(const LogisticCoefficients& c, const Actor& a) {
  return c.theta0 + c.educ * a.educ + c.age * a.age + c.income * a.income +
         c.gender * a.gender + c.pric * a.pric;
}

double adopt_probability(const LogisticCoefficients& c, const Actor& a) {
  const double z = linear_predictor(c, a);
  // Split by sign so neither branch overflows.
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

int draw_behavior(double p, Rng& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("probability outside [0, 1]");
  return bernoulli(rng, p) ? 1 : 0;
}

int draw_behavior(double p, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  return draw_behavior(p, rng);
}

LogisticCoefficients coefficients_from_json(const nlohmann::json& j) {
  static const char* keys[] = {"theta0", "educ", "age", "income", "gender", "pric"};
  if (!j.is_object()) throw InvalidInput("coefficients must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* k : keys) known = known || key == k;
    if (!known) throw InvalidInput("unknown coefficient \"" + key + "\"");
    if (!value.is_number() || !std::isfinite(value.get<double>()))
      throw InvalidInput("coefficient \"" + key + "\" must be a finite number");
  }
  LogisticCoefficients c;
  c.theta0 = j.value("theta0", c.theta0);
  c.educ = j.value("educ", c.educ);
  c.age = j.value("age", c.age);
  c.income = j.value("income", c.income);
  c.gender = j.value("gender", c.gender);
  c.pric = j.value("pric", c.pric);
  return c;
}

nlohmann::json to_json(const LogisticCoefficients& c) {
  return nlohmann::ordered_json{{"theta0", c.theta0}, {"educ", c.educ}, {"age", c.age},
                                {"income", c.income}, {"gender", c.gender}, {"pric", c.pric}};
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t");
    const auto e = cell.find_last_not_of(" \t");
    cells.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_cell(const std::string& cell, int row, const std::string& column) {
  double v = 0.0;
  const char* end = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(cell.data(), end, v);
  if (cell.empty() || ec != std::errc() || ptr != end || !std::isfinite(v))
    throw ParseError("actor table: row " + std::to_string(row) + ", column " + column +
                     ": \"" + cell + "\" is not a finite number");
  return v;
}

}  // namespace

ActorTable read_actor_table(std::istream& in) {
  static const std::string names[] = {"educ", "age", "income", "gender", "pric", "behavior"};
  std::string line;
  if (!std::getline(in, line)) throw ParseError("actor table: empty input, header expected");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const std::vector<std::string> header = split_csv(line);
  int index[6];
  for (int k = 0; k < 6; ++k) {
    index[k] = -1;
    for (std::size_t c = 0; c < header.size(); ++c)
      if (header[c] == names[k]) index[k] = static_cast<int>(c);
    if (index[k] < 0) throw ParseError("actor table: header lacks column " + names[k]);
  }

  ActorTable t;
  int row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const std::vector<std::string> cells = split_csv(line);
    double v[6];
    for (int k = 0; k < 6; ++k) {
      if (index[k] >= static_cast<int>(cells.size()))
        throw ParseError("actor table: row " + std::to_string(row) + ", column " + names[k] +
                         ": missing cell");
      v[k] = parse_cell(cells[index[k]], row, names[k]);
    }
    if (v[3] != 0.0 && v[3] != 1.0)
      throw ParseError("actor table: row " + std::to_string(row) + ", column gender: must be 0 or 1");
    if (v[5] != 0.0 && v[5] != 1.0)
      throw ParseError("actor table: row " + std::to_string(row) +
                       ", column behavior: must be 0 or 1");
    if (v[4] <= 0.0)
      throw ParseError("actor table: row " + std::to_string(row) + ", column pric: must be positive");
    t.rows.push_back({v[0], v[1], v[2], static_cast<int>(v[3]), v[4], static_cast<int>(v[5])});
  }
  if (t.rows.empty()) throw ParseError("actor table: no data rows");
  return t;
}

ActorTable load_actor_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  return read_actor_table(in);
}

void write_actor_table(std::ostream& out, const ActorTable& t) {
  out << "educ,age,income,gender,pric,behavior\n";
  for (const Actor& a : t.rows)
    out << a.educ << ',' << a.age << ',' << a.income << ',' << a.gender << ',' << a.pric << ','
        << a.behavior << '\n';
}

std::filesystem::path bundled_actor_table() {
  return std::filesystem::path(NETPOLICY_DATA_DIR) / "actors.csv";
}

bool SummaryCheck::pass() const { return std::abs(observed - expected) <= tolerance; }

bool ValidationReport::ok() const {
  for (const auto& c : checks)
    if (!c.pass()) return false;
  return true;
}

std::vector<std::string> ValidationReport::failures() const {
  std::vector<std::string> out;
  for (const auto& c : checks)
    if (!c.pass()) {
      std::ostringstream s;
      s << c.name << ": expected " << c.expected << ", observed " << c.observed;
      out.push_back(s.str());
    }
  return out;
}

ValidationReport validate_actor_table(const ActorTable& t) {
  struct Reference {
    const char* name;
    double Actor::*field;
    double min, q1, median, mean, q3, max;
    double tol;  // half a unit of the last printed digit
  };
  static const Reference refs[] = {
      {"educ", &Actor::educ, 6, 10, 12, 12.59, 15, 18, 0.005},
      {"age", &Actor::age, 17, 28, 39, 42.18, 53, 88, 0.005},
      {"income", &Actor::income, 500, 12500, 20000, 19400, 30000, 30000, 0.5},
      {"pric", &Actor::pric, 52.8, 58.79, 61.05, 61.10, 62.16, 70.13, 0.005},
  };
  ValidationReport r;
  if (t.rows.empty()) return r;
  for (const auto& ref : refs) {
    std::vector<double> v;
    v.reserve(t.rows.size());
    for (const Actor& a : t.rows) v.push_back(a.*(ref.field));
    const MeanSd ms = mean_sd(v);
    const std::string n = ref.name;
    r.checks.push_back({n + ".min", ref.min, quantile(v, 0.0), ref.tol});
    r.checks.push_back({n + ".q1", ref.q1, quantile(v, 0.25), ref.tol});
    r.checks.push_back({n + ".median", ref.median, quantile(v, 0.5), ref.tol});
    r.checks.push_back({n + ".mean", ref.mean, ms.mean, ref.tol});
    r.checks.push_back({n + ".q3", ref.q3, quantile(v, 0.75), ref.tol});
    r.checks.push_back({n + ".max", ref.max, quantile(v, 1.0), ref.tol});
  }
  r.checks.push_back({"adopters", 108, static_cast<double>(t.adopters()), 0.0});
  r.checks.push_back({"males", 174, static_cast<double>(t.males()), 0.0});
  r.checks.push_back({"females", 126, static_cast<double>(t.size() - t.males()), 0.0});
  return r;
}

}  // namespace netpolicy
