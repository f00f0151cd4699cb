#include <algorithm>
#include <cmath>
#include <numeric>

#include "netpolicy/effects.hpp"
#include "netpolicy/errors.hpp"

namespace netpolicy {
namespace {

struct Ranked {
  std::vector<double> ranks;  // pooled midranks, x first then y
  double tie_term = 0.0;      // sum of t^3 - t over tie groups
};

Ranked midranks(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.empty() || y.empty()) throw InvalidInput("Mann-Whitney needs two non-empty samples");
  std::vector<double> pooled(x);
  pooled.insert(pooled.end(), y.begin(), y.end());
  for (double v : pooled)
    if (!std::isfinite(v)) throw InvalidInput("Mann-Whitney samples must be finite");
  std::vector<std::size_t> order(pooled.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return pooled[a] < pooled[b]; });
  Ranked r;
  r.ranks.assign(pooled.size(), 0.0);
  for (std::size_t s = 0; s < order.size();) {
    std::size_t e = s;
    while (e + 1 < order.size() && pooled[order[e + 1]] == pooled[order[s]]) ++e;
    const double mid = (static_cast<double>(s) + static_cast<double>(e)) / 2.0 + 1.0;
    for (std::size_t k = s; k <= e; ++k) r.ranks[order[k]] = mid;
    const double t = static_cast<double>(e - s + 1);
    r.tie_term += t * t * t - t;
    s = e + 1;
  }
  return r;
}

double u_statistic(const Ranked& r, std::size_t nx) {
  double sum = 0.0;
  for (std::size_t k = 0; k < nx; ++k) sum += r.ranks[k];
  const double n1 = static_cast<double>(nx);
  return sum - n1 * (n1 + 1.0) / 2.0;
}

}  // namespace

double mann_whitney_exact_p(const std::vector<double>& x, const std::vector<double>& y) {
  const Ranked r = midranks(x, y);
  const std::size_t n = r.ranks.size();
  const std::size_t nx = x.size();
  if (n > 24) throw InvalidInput("exact Mann-Whitney enumeration is limited to 24 values");
  const double n1 = static_cast<double>(nx);
  const double center = n1 * static_cast<double>(y.size()) / 2.0;
  const double observed = std::abs(u_statistic(r, nx) - center);
  // Walk every subset of size nx via its bitmask.
  std::uint64_t extreme = 0;
  std::uint64_t total = 0;
  std::vector<char> pick(n, 0);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(nx), 1);
  std::sort(pick.begin(), pick.end());
  do {
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k)
      if (pick[k]) sum += r.ranks[k];
    const double u = sum - n1 * (n1 + 1.0) / 2.0;
    if (std::abs(u - center) >= observed - 1e-9) ++extreme;
    ++total;
  } while (std::next_permutation(pick.begin(), pick.end()));
  return static_cast<double>(extreme) / static_cast<double>(total);
}

double mann_whitney_normal_p(const std::vector<double>& x, const std::vector<double>& y) {
  const Ranked r = midranks(x, y);
  const double n1 = static_cast<double>(x.size());
  const double n2 = static_cast<double>(y.size());
  const double n = n1 + n2;
  const double var = n1 * n2 / 12.0 * ((n + 1.0) - r.tie_term / (n * (n - 1.0)));
  if (!(var > 0.0)) return 1.0;
  const double dev = std::abs(u_statistic(r, x.size()) - n1 * n2 / 2.0);
  const double z = std::max(0.0, dev - 0.5) / std::sqrt(var);
  return std::min(1.0, std::erfc(z / std::sqrt(2.0)));
}

MannWhitneyResult mann_whitney_u(const std::vector<double>& x, const std::vector<double>& y) {
  MannWhitneyResult out;
  out.u = u_statistic(midranks(x, y), x.size());
  out.exact = x.size() <= kExactMannWhitneyLimit && y.size() <= kExactMannWhitneyLimit;
  out.p_two_sided = out.exact ? mann_whitney_exact_p(x, y) : mann_whitney_normal_p(x, y);
  return out;
}

}  // namespace netpolicy
