#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "netpolicy/errors.hpp"
#include "netpolicy/rng.hpp"
#include "netpolicy/saom.hpp"
#include "parallel.hpp"
#include "saom_detail.hpp"

namespace netpolicy {

std::vector<std::string> parameter_names(const EffectSpec& spec, int periods) {
  std::vector<std::string> names;
  for (int m = 0; m < periods; ++m) names.push_back("rate_network_period" + std::to_string(m + 1));
  for (NetRateEffect e : spec.network_rate) names.push_back(to_string(e));
  for (NetEffect e : spec.network_eval) names.push_back(to_string(e));
  for (int m = 0; m < periods; ++m) names.push_back("rate_behavior_period" + std::to_string(m + 1));
  for (BehRateEffect e : spec.behavior_rate) names.push_back(to_string(e));
  for (BehEffect e : spec.behavior_eval) names.push_back(to_string(e));
  return names;
}

std::vector<double> moment_statistics(const SaomModel& m, const std::vector<NetworkState>& starts,
                                      const std::vector<NetworkState>& ends) {
  if (starts.size() != ends.size()) throw InvalidInput("start and end states differ in count");
  const auto periods = static_cast<int>(starts.size());
  const EffectSpec& spec = m.spec;
  std::vector<double> net_rate(periods, 0.0);
  std::vector<double> beh_rate(periods, 0.0);
  std::vector<double> alpha_net(spec.network_rate.size(), 0.0);
  std::vector<double> alpha_beh(spec.behavior_rate.size(), 0.0);
  std::vector<double> beta_net(spec.network_eval.size(), 0.0);
  std::vector<double> beta_beh(spec.behavior_eval.size(), 0.0);

  for (int p = 0; p < periods; ++p) {
    const NetworkState& a = starts[p];
    const NetworkState& b = ends[p];
    const int n = a.num_actors();
    if (b.num_actors() != n) throw InvalidInput("period end differs in actor count");
    std::vector<int> tie_changes(n, 0);
    for (NodeId i = 0; i < n; ++i) {
      // Symmetric difference of the sorted neighbor lists.
      auto x = a.graph.neighbors(i);
      auto y = b.graph.neighbors(i);
      std::size_t u = 0;
      std::size_t v = 0;
      while (u < x.size() || v < y.size()) {
        if (v == y.size() || (u < x.size() && x[u] < y[v])) {
          ++tie_changes[i];
          ++u;
        } else if (u == x.size() || y[v] < x[u]) {
          ++tie_changes[i];
          ++v;
        } else {
          ++u;
          ++v;
        }
      }
    }
    for (NodeId i = 0; i < n; ++i) {
      net_rate[p] += tie_changes[i];
      const int beh_change = a.behavior[i] != b.behavior[i];
      beh_rate[p] += beh_change;
      if (!spec.network_rate.empty() && tie_changes[i] > 0) {
        const std::vector<double> st = network_rate_statistics(m, a, i);
        for (std::size_t q = 0; q < st.size(); ++q) alpha_net[q] += st[q] * tie_changes[i];
      }
      if (!spec.behavior_rate.empty() && beh_change) {
        const std::vector<double> st = behavior_rate_statistics(m, a, i);
        for (std::size_t q = 0; q < st.size(); ++q) alpha_beh[q] += st[q];
      }
    }
    net_rate[p] /= 2.0;  // each changed dyad was counted at both ends
    // Each variable's statistics see the other variable as it was at the
    // start of the period.
    const std::vector<double> tn = detail::total_network_statistics(m, b.graph, a.behavior, a.price);
    const std::vector<double> tb = detail::total_behavior_statistics(m, a.graph, b.behavior);
    for (std::size_t k = 0; k < tn.size(); ++k) beta_net[k] += tn[k];
    for (std::size_t k = 0; k < tb.size(); ++k) beta_beh[k] += tb[k];
  }

  std::vector<double> out;
  out.insert(out.end(), net_rate.begin(), net_rate.end());
  out.insert(out.end(), alpha_net.begin(), alpha_net.end());
  out.insert(out.end(), beta_net.begin(), beta_net.end());
  out.insert(out.end(), beh_rate.begin(), beh_rate.end());
  out.insert(out.end(), alpha_beh.begin(), alpha_beh.end());
  out.insert(out.end(), beta_beh.begin(), beta_beh.end());
  return out;
}

namespace {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

enum class Kind { RateNet, RateBeh, AlphaNet, AlphaBeh, BetaNet, BetaBeh };

struct Slot {
  Kind kind;
  int index;
  bool is_rate() const { return kind == Kind::RateNet || kind == Kind::RateBeh; }
};

// Parameter slots in table order, matching parameter_names.
std::vector<Slot> all_slots(const EffectSpec& spec, int periods) {
  std::vector<Slot> s;
  for (int m = 0; m < periods; ++m) s.push_back({Kind::RateNet, m});
  for (std::size_t q = 0; q < spec.network_rate.size(); ++q) s.push_back({Kind::AlphaNet, static_cast<int>(q)});
  for (std::size_t c = 0; c < spec.network_eval.size(); ++c) s.push_back({Kind::BetaNet, static_cast<int>(c)});
  for (int m = 0; m < periods; ++m) s.push_back({Kind::RateBeh, m});
  for (std::size_t q = 0; q < spec.behavior_rate.size(); ++q) s.push_back({Kind::AlphaBeh, static_cast<int>(q)});
  for (std::size_t d = 0; d < spec.behavior_eval.size(); ++d) s.push_back({Kind::BetaBeh, static_cast<int>(d)});
  return s;
}

double& slot_ref(ParameterVector& p, const Slot& s) {
  switch (s.kind) {
    case Kind::RateNet: return p.rho_net[s.index];
    case Kind::RateBeh: return p.rho_beh[s.index];
    case Kind::AlphaNet: return p.alpha_net[s.index];
    case Kind::AlphaBeh: return p.alpha_beh[s.index];
    case Kind::BetaNet: return p.beta_net[s.index];
    case Kind::BetaBeh: return p.beta_beh[s.index];
  }
  throw std::logic_error("bad slot");
}

double slot_value(const ParameterVector& p, const Slot& s) {
  return slot_ref(const_cast<ParameterVector&>(p), s);
}

bool slot_fixed(const ParameterVector& p, const Slot& s) {
  if (s.kind == Kind::RateNet) return p.rho_net_fixed[s.index];
  if (s.kind == Kind::RateBeh) return p.rho_beh_fixed[s.index];
  return false;
}

class Problem {
 public:
  Problem(const Panel& panel, const EffectSpec& spec, const EstimationSettings& settings)
      : settings_(settings) {
    model_.spec = spec;
    model_.scales = scales_from_panel(panel);
    periods_ = static_cast<int>(panel.num_waves()) - 1;
    for (int p = 0; p < periods_; ++p) {
      starts_.push_back(panel.waves[p]);
      NetworkState end = panel.waves[p + 1];
      end.price = panel.waves[p].price;  // price is held at its start value
      observed_ends_.push_back(std::move(end));
    }
    slots_ = all_slots(spec, periods_);
    names_ = parameter_names(spec, periods_);
    observed_ = moment_statistics(model_, starts_, observed_ends_);
    init_parameters();
  }

  const SaomModel& model() const { return model_; }
  const ParameterVector& base() const { return base_; }
  const std::vector<std::size_t>& free() const { return free_; }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<Slot>& slots() const { return slots_; }

  Vec theta_of(const ParameterVector& p) const {
    Vec t(free_.size());
    for (std::size_t k = 0; k < free_.size(); ++k) t[k] = slot_value(p, slots_[free_[k]]);
    return t;
  }

  ParameterVector params_of(const Vec& theta) const {
    ParameterVector p = base_;
    for (std::size_t k = 0; k < free_.size(); ++k) slot_ref(p, slots_[free_[k]]) = theta[k];
    return p;
  }

  bool is_rate(std::size_t k) const { return slots_[free_[k]].is_rate(); }

  /// Simulated minus observed statistics for the free parameters.
  Vec deviation(const Vec& theta, std::uint64_t seed, std::uint64_t* clamps = nullptr) const {
    const ParameterVector p = params_of(theta);
    std::vector<NetworkState> ends;
    ends.reserve(periods_);
    for (int m = 0; m < periods_; ++m) {
      PeriodOutcome o = simulate_period(model_, p, starts_[m], m,
                                        derive_seed(seed, {static_cast<std::uint64_t>(m)}));
      if (clamps) *clamps += o.diagnostics.clamped;
      ends.push_back(std::move(o.state));
    }
    const std::vector<double> all = moment_statistics(model_, starts_, ends);
    Vec d(free_.size());
    for (std::size_t k = 0; k < free_.size(); ++k) d[k] = all[free_[k]] - observed_[free_[k]];
    return d;
  }

  double step_size(const Vec& theta, std::size_t k) const {
    return is_rate(k) ? settings_.derivative_step * theta[k] : settings_.derivative_step;
  }

 private:
  void init_parameters() {
    const double n = starts_.front().num_actors();
    base_ = ParameterVector::zeros(model_.spec, periods_);
    for (int m = 0; m < periods_; ++m) {
      const double net_changes = observed_[m];
      const double beh_changes =
          observed_[periods_ + model_.spec.network_rate.size() + model_.spec.network_eval.size() + m];
      if (net_changes == 0.0) {
        base_.rho_net[m] = settings_.fixed_rate;
        base_.rho_net_fixed[m] = 1;
      } else {
        base_.rho_net[m] = std::max(2.0 * net_changes / n, 0.01);
      }
      if (beh_changes == 0.0) {
        base_.rho_beh[m] = settings_.fixed_rate;
        base_.rho_beh_fixed[m] = 1;
      } else {
        base_.rho_beh[m] = std::max(2.0 * beh_changes / n, 0.01);
      }
    }
    double density = 0.0;
    for (const NetworkState& s : starts_) {
      const double pairs = n * (n - 1.0) / 2.0;
      density += pairs > 0 ? static_cast<double>(s.graph.num_edges()) / pairs : 0.0;
    }
    density = std::clamp(density / periods_, 1e-4, 1.0 - 1e-4);
    for (std::size_t c = 0; c < model_.spec.network_eval.size(); ++c)
      if (model_.spec.network_eval[c] == NetEffect::Outdegree)
        base_.beta_net[c] = 0.5 * std::log(density / (1.0 - density));
    for (std::size_t k = 0; k < slots_.size(); ++k)
      if (!slot_fixed(base_, slots_[k])) free_.push_back(k);
  }

  const EstimationSettings& settings_;
  SaomModel model_;
  int periods_ = 0;
  std::vector<NetworkState> starts_;
  std::vector<NetworkState> observed_ends_;
  std::vector<Slot> slots_;
  std::vector<std::string> names_;
  std::vector<double> observed_;
  ParameterVector base_;
  std::vector<std::size_t> free_;
};

struct SimBatch {
  Mat deviations;  // sims x free
  Mat derivative;  // free x free, d E[S] / d theta
  std::uint64_t clamps = 0;
};

// Deviations at theta for `sims` seeds, plus common-random-number finite
// differences on the first `derivative_sims` of them.
SimBatch simulate_batch(const Problem& prob, const Vec& theta, int sims, int derivative_sims,
                        std::uint64_t seed, int threads) {
  const auto k = static_cast<Eigen::Index>(theta.size());
  SimBatch out;
  out.deviations.resize(sims, k);
  const int dsims = std::min(sims, derivative_sims);
  std::vector<Mat> fd(static_cast<std::size_t>(dsims));
  std::vector<std::uint64_t> clamps(static_cast<std::size_t>(sims), 0);
  detail::parallel_for(static_cast<std::size_t>(sims), threads, [&](std::size_t r) {
    const std::uint64_t s = derive_seed(seed, {r});
    const Vec base = prob.deviation(theta, s, &clamps[r]);
    out.deviations.row(static_cast<Eigen::Index>(r)) = base.transpose();
    if (static_cast<int>(r) < dsims) {
      Mat d(k, k);
      for (Eigen::Index j = 0; j < k; ++j) {
        Vec shifted = theta;
        const double h = prob.step_size(theta, static_cast<std::size_t>(j));
        shifted[j] += h;
        d.col(j) = (prob.deviation(shifted, s) - base) / h;
      }
      fd[r] = std::move(d);
    }
  });
  out.derivative = Mat::Zero(k, k);
  for (const Mat& d : fd) out.derivative += d;
  if (dsims > 0) out.derivative /= dsims;
  for (std::uint64_t c : clamps) out.clamps += c;
  return out;
}

Vec diagonal_gain(const Mat& derivative) {
  Vec d(derivative.rows());
  for (Eigen::Index k = 0; k < d.size(); ++k) {
    const double v = derivative(k, k);
    // A non-positive diagonal means the finite difference was swamped by
    // noise; fall back to a small positive sensitivity.
    d[k] = v > 1e-6 ? v : std::max(std::abs(v), 1e-3);
  }
  return d;
}

void bounded_update(const Problem& prob, Vec& theta, const Vec& step, double max_step) {
  for (Eigen::Index k = 0; k < theta.size(); ++k) {
    if (prob.is_rate(static_cast<std::size_t>(k))) {
      const double r = theta[k];
      theta[k] = std::clamp(r - step[k], r / 2.0, 2.0 * r);
    } else {
      theta[k] -= std::clamp(step[k], -max_step, max_step);
    }
  }
}

std::vector<double> to_std(const Vec& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

EstimationResult estimate_mom(const Panel& panel, const EffectSpec& spec,
                              const EstimationSettings& settings) {
  panel.validate();
  spec.validate();
  if (settings.phase1_sims < 1 || settings.phase3_sims < 2)
    throw InvalidInput("estimation needs at least one Phase 1 and two Phase 3 simulations");
  if (settings.max_retries < 0) throw InvalidInput("max_retries must be non-negative");
  const Problem prob(panel, spec, settings);
  const std::size_t k = prob.free().size();

  EstimationResult result;
  result.model = prob.model();
  for (std::size_t f : prob.free()) result.free_names.push_back(prob.names()[f]);

  Vec theta = prob.theta_of(prob.base());
  const std::uint64_t root = settings.seed;

  // Phase 1: sensitivity of the statistics at the starting values.
  SimBatch p1 = simulate_batch(prob, theta, settings.phase1_sims, settings.phase1_sims,
                               derive_seed(root, {1}), settings.threads);
  result.rate_clamps += p1.clamps;
  Vec gain_scale = diagonal_gain(p1.derivative);
  {
    const Vec mean = p1.deviations.colwise().mean().transpose();
    bounded_update(prob, theta, settings.initial_gain * mean.cwiseQuotient(gain_scale),
                   settings.max_step);
  }
  result.phase_log.push_back({0, "phase1", settings.phase1_sims, to_std(theta)});

  double gain = settings.initial_gain;
  Mat covariance;
  Mat derivative;
  Vec mean;
  for (int attempt = 0; attempt <= settings.max_retries; ++attempt) {
    result.attempts = attempt + 1;
    // Phase 2: Robbins-Monro sub-phases with iterate averaging.
    for (std::size_t sp = 0; sp < settings.subphase_iterations.size(); ++sp) {
      const double a = gain / std::pow(2.0, static_cast<double>(sp));
      const int iters = settings.subphase_iterations[sp];
      Vec sum = Vec::Zero(static_cast<Eigen::Index>(k));
      for (int it = 0; it < iters; ++it) {
        const std::uint64_t s = derive_seed(
            root, {2, static_cast<std::uint64_t>(attempt), sp, static_cast<std::uint64_t>(it)});
        std::uint64_t clamps = 0;
        const Vec d = prob.deviation(theta, s, &clamps);
        result.rate_clamps += clamps;
        bounded_update(prob, theta, a * d.cwiseQuotient(gain_scale), settings.max_step);
        sum += theta;
      }
      if (iters > 0) theta = sum / iters;
      result.phase_log.push_back({attempt, "phase2." + std::to_string(sp + 1), iters, to_std(theta)});
    }

    // Phase 3: moment check and standard errors at fixed parameters.
    SimBatch p3 = simulate_batch(prob, theta, settings.phase3_sims, settings.phase3_derivative_sims,
                                 derive_seed(root, {3, static_cast<std::uint64_t>(attempt)}),
                                 settings.threads);
    result.rate_clamps += p3.clamps;
    result.phase_log.push_back({attempt, "phase3", settings.phase3_sims, to_std(theta)});
    mean = p3.deviations.colwise().mean().transpose();
    const Mat centred = p3.deviations.rowwise() - mean.transpose();
    covariance = centred.transpose() * centred / static_cast<double>(settings.phase3_sims - 1);
    derivative = p3.derivative;

    result.t_ratios.assign(k, 0.0);
    for (std::size_t j = 0; j < k; ++j) {
      const double sd = std::sqrt(covariance(j, j));
      if (sd > 0.0) {
        result.t_ratios[j] = mean[j] / sd;
      } else {
        result.t_ratios[j] = mean[j] == 0.0 ? 0.0 : std::copysign(HUGE_VAL, mean[j]);
      }
    }
    const Mat cov_pinv = covariance.completeOrthogonalDecomposition().pseudoInverse();
    result.max_convergence_ratio = std::sqrt(std::max(0.0, mean.dot(cov_pinv * mean)));
    for (std::size_t j = 0; j < k; ++j)
      if (covariance(j, j) == 0.0 && mean[j] != 0.0) result.max_convergence_ratio = HUGE_VAL;

    bool ok = result.max_convergence_ratio < settings.max_convergence_ratio;
    for (double t : result.t_ratios) ok = ok && std::abs(t) < settings.max_abs_t_ratio;
    result.converged = ok;
    if (ok) break;
    // Never let a retry take larger steps than the previous attempt did.
    gain_scale = gain_scale.cwiseMax(diagonal_gain(derivative));
    gain /= 2.0;
  }

  // Delta-method covariance of the estimates: D^-1 Sigma D^-T.
  result.standard_errors.assign(k, std::numeric_limits<double>::quiet_NaN());
  if (k > 0) {
    Eigen::FullPivLU<Mat> lu(derivative);
    if (lu.isInvertible()) {
      const Mat dinv = lu.inverse();
      const Mat v = dinv * covariance * dinv.transpose();
      for (std::size_t j = 0; j < k; ++j) result.standard_errors[j] = std::sqrt(std::max(0.0, v(j, j)));
    }
  }

  result.estimates = prob.params_of(theta);
  std::size_t next_free = 0;
  for (std::size_t s = 0; s < prob.slots().size(); ++s) {
    ParameterRow row;
    row.name = prob.names()[s];
    row.estimate = slot_ref(result.estimates, prob.slots()[s]);
    row.fixed = slot_fixed(result.estimates, prob.slots()[s]);
    if (!row.fixed) {
      row.standard_error = result.standard_errors[next_free];
      row.t_ratio = result.t_ratios[next_free];
      ++next_free;
    }
    result.table.push_back(std::move(row));
  }
  return result;
}

}  // namespace netpolicy
