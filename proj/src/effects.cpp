#include "netpolicy/effects.hpp"

#include "netpolicy/errors.hpp"
#include "netpolicy/stats.hpp"

namespace netpolicy {

std::optional<std::size_t> PeriodProportions::find(const std::string& label) const {
  for (std::size_t k = 0; k < labels.size(); ++k)
    if (labels[k] == label) return k;
  return std::nullopt;
}

double PeriodProportions::gap(const std::string& label) const {
  const auto k = find(label);
  if (!k) throw InvalidInput("no period labelled " + label);
  return control[*k] - treat[*k];
}

PeriodProportions period_proportions(const std::vector<NetworkState>& states,
                                     const std::vector<std::string>& labels,
                                     const NodeSet& treated) {
  if (states.size() != labels.size()) throw InvalidInput("one label per period is required");
  if (states.empty()) throw InvalidInput("no periods");
  const int n = states.front().num_actors();
  const std::vector<char> in = treated.indicator(n);
  PeriodProportions p;
  p.labels = labels;
  for (char c : in) (c ? p.treated_size : p.control_size) += 1;
  if (p.treated_size == 0 || p.control_size == 0)
    throw InvalidInput("treated set must be a non-empty proper subset of the actors");
  for (const NetworkState& s : states) {
    if (s.num_actors() != n) throw InvalidInput("periods differ in actor count");
    double t = 0.0;
    double c = 0.0;
    for (int i = 0; i < n; ++i) (in[i] ? t : c) += s.behavior[i];
    p.treat.push_back(t / static_cast<double>(p.treated_size));
    p.control.push_back(c / static_cast<double>(p.control_size));
  }
  return p;
}

EffectEstimates second_order_difference(const PeriodProportions& p) {
  for (const char* l : {"A", "B", "C"})
    if (!p.find(l)) throw InvalidInput(std::string("period ") + l + " is missing");
  EffectEstimates e;
  const double base = p.gap("A");
  e.direct = p.gap("B") - base;
  e.short_term = p.gap("C") - base;
  if (p.find("D")) e.long_term = p.gap("D") - base;
  return e;
}

std::string to_string(EffectKind k) {
  switch (k) {
    case EffectKind::Direct: return "direct";
    case EffectKind::ShortTerm: return "short_term";
    case EffectKind::LongTerm: return "long_term";
  }
  return "unknown";
}

RunSummary summarize_runs(
    const std::vector<std::pair<std::string, std::vector<EffectEstimates>>>& runs) {
  RunSummary out;
  for (const auto& [name, list] : runs)
    if (list.size() < 2) throw InvalidInput("strategy " + name + " has fewer than two runs");

  auto values = [](const std::vector<EffectEstimates>& list, EffectKind k) {
    std::vector<double> v;
    for (const EffectEstimates& e : list) {
      if (k == EffectKind::Direct) v.push_back(e.direct);
      if (k == EffectKind::ShortTerm) v.push_back(e.short_term);
      if (k == EffectKind::LongTerm && e.long_term) v.push_back(*e.long_term);
    }
    return v;
  };
  bool all_long = !runs.empty();
  for (const auto& r : runs)
    for (const EffectEstimates& e : r.second) all_long = all_long && e.long_term.has_value();

  std::vector<EffectKind> kinds{EffectKind::Direct, EffectKind::ShortTerm};
  if (all_long) kinds.push_back(EffectKind::LongTerm);
  for (EffectKind k : kinds) {
    for (const auto& [name, list] : runs) {
      const std::vector<double> v = values(list, k);
      out.rows.push_back({name, k, mean_sd(v).mean, quantile(v, 0.75) - quantile(v, 0.25), v.size()});
    }
    for (std::size_t a = 0; a < runs.size(); ++a)
      for (std::size_t b = a + 1; b < runs.size(); ++b)
        out.tests.push_back({k, runs[a].first, runs[b].first,
                             mann_whitney_u(values(runs[a].second, k), values(runs[b].second, k))});
  }
  return out;
}

}  // namespace netpolicy
