#pragma once

// Cdf, density and log-likelihood of eFGM copulas.
//
// Both the cdf and the density are sums over the 2^d Bernoulli outcomes of
// a pmf weight times a product of per-margin factors (one factor for
// i_m = 0, another for i_m = 1). Exchangeability makes the weight depend on
// the outcome only through its number of ones, so the sum collapses to
//   sum_k  p_k / C(d, k) * S_k,
// where S_k is the degree-k elementary symmetric combination of the factor
// pairs, computed by polynomial multiplication in O(d^2).

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "efgm/combinatorics.hpp"
#include "efgm/error.hpp"
#include "efgm/matrix.hpp"
#include "efgm/representations.hpp"

namespace efgm {

/// S_k = s[k] * 2^exponent.
struct SymmetricWeights {
  std::vector<double> s;
  int exponent = 0;

  double value(int k) const { return std::ldexp(s.at(static_cast<std::size_t>(k)), exponent); }
};

inline constexpr std::size_t kMaxDpLength = 10'000;

/// S_k = sum over |I| = k of prod_{m in I} b_m prod_{m not in I} a_m.
inline SymmetricWeights symmetric_weight_dp(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw invalid_input("factor sequences differ in length");
  if (a.size() > kMaxDpLength) throw capability_error("factor sequences longer than 10000");
  SymmetricWeights w;
  w.s.assign(a.size() + 1, 0.0);
  w.s[0] = 1.0;
  for (std::size_t m = 0; m < a.size(); ++m) {
    // Multiply the polynomial by (a_m + b_m x), highest degree first.
    double peak = 0.0;
    for (std::size_t k = m + 1; k > 0; --k) {
      w.s[k] = w.s[k] * a[m] + w.s[k - 1] * b[m];
      peak = std::max(peak, std::abs(w.s[k]));
    }
    w.s[0] *= a[m];
    peak = std::max(peak, std::abs(w.s[0]));
    if (peak > 1e300 || (peak > 0.0 && peak < 1e-300)) {
      int e = 0;
      std::frexp(peak, &e);
      for (std::size_t k = 0; k <= m + 1; ++k) w.s[k] = std::ldexp(w.s[k], -e);
      w.exponent += e;
    }
  }
  return w;
}

namespace detail {

// log of sum_k p_k / C(d, k) * S_k; -inf when the sum is zero.
inline double log_grouped_sum(const NdPmf& p, const SymmetricWeights& w) {
  const int d = p.d();
  std::vector<double> logs;
  logs.reserve(static_cast<std::size_t>(d) + 1);
  double peak = -INFINITY;
  for (int k = 0; k <= d; ++k) {
    const double sk = w.s[static_cast<std::size_t>(k)];
    if (p.at(k) <= 0.0 || sk <= 0.0) continue;
    const double l = std::log(p.at(k)) - log_binomial(d, k) + std::log(sk);
    logs.push_back(l);
    peak = std::max(peak, l);
  }
  if (logs.empty()) return -INFINITY;
  double acc = 0.0;
  for (double l : logs) acc += std::exp(l - peak);
  return peak + std::log(acc) + w.exponent * std::log(2.0);
}

inline double grouped_sum(const NdPmf& p, const SymmetricWeights& w) {
  const int d = p.d();
  if (w.exponent != 0 || d > 1000) return std::exp(log_grouped_sum(p, w));
  double acc = 0.0;
  for (int k = 0; k <= d; ++k) {
    if (p.at(k) != 0.0) acc += p.at(k) / binomial(d, k) * w.s[static_cast<std::size_t>(k)];
  }
  return acc;
}

inline void require_point(const NdPmf& p, std::span<const double> u, bool open) {
  if (u.size() != static_cast<std::size_t>(p.d())) {
    throw invalid_input("point has " + std::to_string(u.size()) + " coordinates, model has d=" +
                        std::to_string(p.d()));
  }
  for (std::size_t j = 0; j < u.size(); ++j) {
    const bool ok = open ? (u[j] > 0.0 && u[j] < 1.0) : (u[j] >= 0.0 && u[j] <= 1.0);
    if (!ok) {
      throw invalid_input("coordinate u_" + std::to_string(j + 1) + " = " + std::to_string(u[j]) +
                          (open ? " is not in the open interval (0, 1)" : " is not in [0, 1]"));
    }
  }
}

inline SymmetricWeights density_weights(std::span<const double> u) {
  std::vector<double> a(u.size());
  std::vector<double> b(u.size());
  for (std::size_t m = 0; m < u.size(); ++m) {
    a[m] = 2.0 * (1.0 - u[m]);
    b[m] = 2.0 * u[m];
  }
  return symmetric_weight_dp(a, b);
}

}  // namespace detail

inline double copula_cdf(const NdPmf& p, std::span<const double> u) {
  detail::require_point(p, u, false);
  std::vector<double> a(u.size());
  std::vector<double> b(u.size());
  for (std::size_t m = 0; m < u.size(); ++m) {
    a[m] = u[m] * (2.0 - u[m]);
    b[m] = u[m] * u[m];
  }
  return detail::grouped_sum(p, symmetric_weight_dp(a, b));
}

inline double copula_density(const NdPmf& p, std::span<const double> u) {
  detail::require_point(p, u, true);
  return detail::grouped_sum(p, detail::density_weights(u));
}

inline double log_copula_density(const NdPmf& p, std::span<const double> u) {
  detail::require_point(p, u, true);
  return detail::log_grouped_sum(p, detail::density_weights(u));
}

inline double copula_cdf(const CopulaModel& model, std::span<const double> u) {
  return copula_cdf(canonicalize(model), u);
}
inline double copula_density(const CopulaModel& model, std::span<const double> u) {
  return copula_density(canonicalize(model), u);
}

/// Sum of log densities over the rows of `data`, in row order.
inline double log_likelihood(const NdPmf& p, const Matrix& data) {
  if (data.cols() != static_cast<std::size_t>(p.d())) {
    throw invalid_input("data has " + std::to_string(data.cols()) + " columns, model has d=" +
                        std::to_string(p.d()));
  }
  double total = 0.0;
  for (std::size_t r = 0; r < data.rows(); ++r) {
    const double l = log_copula_density(p, data.row(r));
    if (!std::isfinite(l)) {
      throw numeric_error("density is not positive at row " + std::to_string(r + 1));
    }
    total += l;
  }
  return total;
}

inline double log_likelihood(const CopulaModel& model, const Matrix& data) {
  return log_likelihood(canonicalize(model), data);
}

}  // namespace efgm
