#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "netpolicy/rng.hpp"

namespace netpolicy {

/// One respondent. Price (cents) and behavior vary over time; the rest is fixed.
struct Actor {
  double educ = 0.0;    // years of schooling
  double age = 0.0;     // years
  double income = 0.0;  // USD per year
  int gender = 0;       // 0 female, 1 male
  double pric = 0.0;    // cents
  int behavior = 0;     // focal behavior, 0 or 1
};

struct ActorTable {
  std::vector<Actor> rows;

  std::size_t size() const { return rows.size(); }
  int adopters() const;
  int males() const;
  std::vector<int> behaviors() const;
  std::vector<double> prices() const;
  /// The first n rows.
  ActorTable head(std::size_t n) const;
};

/// Weights of the adoption model, raw covariate units. Defaults are the
/// published estimates.
struct LogisticCoefficients {
  double theta0 = 0.8318;      // intercept
  double educ = -0.02486;
  double age = -0.004698;
  double income = 3.954e-6;
  double gender = 0.02942;
  double pric = -9.274e-4;
};

double linear_predictor(const LogisticCoefficients& c, const Actor& a);
/// Logistic adoption probability, strictly inside (0, 1) for finite inputs.
double adopt_probability(const LogisticCoefficients& c, const Actor& a);

/// Bernoulli(p) realisation; p must lie in [0, 1].
int draw_behavior(double p, std::uint64_t seed);
int draw_behavior(double p, Rng& rng);

LogisticCoefficients coefficients_from_json(const nlohmann::json& j);
nlohmann::json to_json(const LogisticCoefficients& c);

/// CSV with header educ,age,income,gender,pric,behavior (any column order,
/// extra columns ignored). Errors name the offending row and column.
ActorTable read_actor_table(std::istream& in);
ActorTable load_actor_table(const std::filesystem::path& path);
void write_actor_table(std::ostream& out, const ActorTable& t);

/// The table shipped in data/actors.csv.
std::filesystem::path bundled_actor_table();

struct SummaryCheck {
  std::string name;
  double expected = 0.0;
  double observed = 0.0;
  double tolerance = 0.0;
  bool pass() const;
};

/// Min, quartiles, median, mean and max of each covariate plus adopter and
/// gender counts, compared against the reference survey summary.
struct ValidationReport {
  std::vector<SummaryCheck> checks;
  bool ok() const;
  std::vector<std::string> failures() const;
};

ValidationReport validate_actor_table(const ActorTable& t);

}  // namespace netpolicy
