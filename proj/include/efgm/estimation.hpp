#pragma once

// Maximum-likelihood fitting of eFGM copulas as finite mixtures of the
// extreme-point copulas.
//
// Every admissible pmf of N_d is a convex combination of the n_d vertex
// pmfs, so the density is sum_j lambda_j xi_mj with xi_mj the density of
// vertex j at observation m. The xi_mj are computed once; the weights are
// then fitted by the mixture EM fixed point
//   lambda_t <- (1/m_obs) sum_m lambda_t xi_mt / sum_l lambda_l xi_ml,
// which keeps the weights on the simplex and never decreases the
// log-likelihood. Weights are not identifiable (distinct decompositions can
// give the same theta); the fitted theta is.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "efgm/combinatorics.hpp"
#include "efgm/error.hpp"
#include "efgm/evaluation.hpp"
#include "efgm/geometry.hpp"
#include "efgm/matrix.hpp"
#include "efgm/representations.hpp"
#include "efgm/sampling.hpp"

namespace efgm {

struct XiMatrix {
  /// m_obs x n_d; entry (m, j) is xi_mj * exp(-log_offset[m]).
  Matrix xi;
  /// Per-row log scale, zero unless the row needed rescaling.
  std::vector<double> log_offset;
};

inline XiMatrix compute_xi(const Matrix& data, int d, unsigned threads = 1) {
  detail::require_dimension(d);
  if (data.cols() != static_cast<std::size_t>(d)) {
    throw invalid_input("data has " + std::to_string(data.cols()) + " columns, expected d=" +
                        std::to_string(d));
  }
  const std::vector<ExtremePoint> points = enumerate_extreme_points(d);
  const std::size_t nd = points.size();
  // Vertex j: sum over its (at most two) support points k of p_k / C(d, k) * S_k.
  struct Term {
    std::size_t k;
    double coef;
  };
  std::vector<std::vector<Term>> terms(nd);
  for (std::size_t j = 0; j < nd; ++j) {
    for (int k = 0; k <= d; ++k) {
      const double pk = points[j].pmf.at(k);
      if (pk > 0.0) terms[j].push_back({static_cast<std::size_t>(k), pk / binomial(d, k)});
    }
  }
  XiMatrix out{Matrix(data.rows(), nd), std::vector<double>(data.rows(), 0.0)};
  const NdPmf probe = NdPmf::independence(d);
  const std::size_t shards = (data.rows() + kShardRows - 1) / kShardRows;
  detail::parallel_shards(shards, threads, [&](std::size_t shard) {
    const std::size_t begin = shard * kShardRows;
    const std::size_t end = std::min(data.rows(), begin + kShardRows);
    for (std::size_t m = begin; m < end; ++m) {
      detail::require_point(probe, data.row(m), true);
      const SymmetricWeights w = detail::density_weights(data.row(m));
      auto row = out.xi.row(m);
      double peak = 0.0;
      for (std::size_t j = 0; j < nd; ++j) {
        double v = 0.0;
        for (const Term& t : terms[j]) v += t.coef * w.s[t.k];
        row[j] = v;
        peak = std::max(peak, v);
      }
      double offset = w.exponent * std::log(2.0);
      if (peak > 1e250) {
        for (double& v : row) v /= peak;
        offset += std::log(peak);
      }
      out.log_offset[m] = offset;
    }
  });
  return out;
}

struct EmOptions {
  double tol = 1e-8;
  int max_iter = 10'000;
  unsigned threads = 1;
};

struct FitResult {
  /// One weight per vertex of enumerate_extreme_points(d).
  std::vector<double> weights;
  ThetaVector theta;
  /// Log-likelihood at the initial weights and after every update.
  std::vector<double> loglik_trace;
  int iterations = 0;
  bool converged = false;
  /// Indices of vertices with nonzero weight.
  std::vector<std::size_t> active;
  std::vector<std::string> warnings;

  double loglik() const { return loglik_trace.back(); }
};

inline constexpr double kFrozenWeight = 1e-15;

namespace detail {

// Mixture density sum_l lambda_l xi_ml for every row, plus the total
// log-likelihood, with fixed-order summation.
inline double mixture_densities(const XiMatrix& xi, const std::vector<double>& lambda,
                                std::vector<double>& dens) {
  const std::size_t nd = lambda.size();
  double ll = 0.0;
  for (std::size_t m = 0; m < xi.xi.rows(); ++m) {
    const auto row = xi.xi.row(m);
    double s = 0.0;
    for (std::size_t l = 0; l < nd; ++l) s += lambda[l] * row[l];
    dens[m] = s;
    ll += std::log(s) + xi.log_offset[m];
  }
  return ll;
}

}  // namespace detail

/// For each vertex t, (1/m_obs) sum_m xi_mt / sum_l lambda_l xi_ml. Equal to
/// 1 at a stationary point for every vertex with positive weight.
inline std::vector<double> em_stationarity(const XiMatrix& xi, const std::vector<double>& lambda) {
  std::vector<double> dens(xi.xi.rows());
  detail::mixture_densities(xi, lambda, dens);
  std::vector<double> ratio(lambda.size(), 0.0);
  for (std::size_t m = 0; m < xi.xi.rows(); ++m) {
    const auto row = xi.xi.row(m);
    for (std::size_t t = 0; t < lambda.size(); ++t) ratio[t] += row[t] / dens[m];
  }
  for (double& r : ratio) r /= static_cast<double>(xi.xi.rows());
  return ratio;
}

inline FitResult em_fit(const XiMatrix& xi, int d, const EmOptions& options = {}) {
  if (!(options.tol > 0.0)) throw invalid_input("tolerance must be positive");
  if (options.max_iter < 1) throw invalid_input("max_iter must be >= 1");
  const std::vector<ExtremePoint> points = enumerate_extreme_points(d);
  const std::size_t nd = points.size();
  const std::size_t m_obs = xi.xi.rows();
  if (m_obs == 0) throw invalid_input("no observations");
  if (xi.xi.cols() != nd) throw invalid_input("xi matrix does not match d");

  FitResult fit{std::vector<double>(nd, 1.0 / static_cast<double>(nd)), ThetaVector::independence(d),
                {}, 0, false, {}, {}};
  if (m_obs < nd) {
    fit.warnings.push_back("only " + std::to_string(m_obs) + " observations for " +
                           std::to_string(nd) + " mixture components");
  }
  std::vector<double>& lambda = fit.weights;
  std::vector<double> dens(m_obs);
  std::vector<double> next(nd);
  double ll = detail::mixture_densities(xi, lambda, dens);
  if (!std::isfinite(ll)) throw numeric_error("log-likelihood is not finite at the start");
  fit.loglik_trace.push_back(ll);

  for (int iter = 1; iter <= options.max_iter; ++iter) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t m = 0; m < m_obs; ++m) {
      const auto row = xi.xi.row(m);
      const double inv = 1.0 / dens[m];
      for (std::size_t t = 0; t < nd; ++t) next[t] += row[t] * inv;
    }
    double total = 0.0;
    for (std::size_t t = 0; t < nd; ++t) {
      double v = lambda[t] * next[t] / static_cast<double>(m_obs);
      if (v < kFrozenWeight) v = 0.0;
      next[t] = v;
      total += v;
    }
    for (std::size_t t = 0; t < nd; ++t) lambda[t] = next[t] / total;

    const double ll_new = detail::mixture_densities(xi, lambda, dens);
    if (!std::isfinite(ll_new)) {
      throw numeric_error("log-likelihood became non-finite at iteration " + std::to_string(iter));
    }
    fit.loglik_trace.push_back(ll_new);
    fit.iterations = iter;
    const double change = std::abs(ll_new - ll) / (1.0 + std::abs(ll_new));
    ll = ll_new;
    if (change < options.tol) {
      fit.converged = true;
      break;
    }
  }
  for (std::size_t t = 0; t < nd; ++t) {
    if (lambda[t] > 0.0) fit.active.push_back(t);
  }
  fit.theta = convex_combination_theta(lambda, points);
  return fit;
}

inline FitResult em_fit(const Matrix& data, int d, const EmOptions& options = {}) {
  return em_fit(compute_xi(data, d, options.threads), d, options);
}

/// Column-wise rank / (m_obs + 1), ties receiving their average rank.
inline Matrix pseudo_observations(const Matrix& raw) {
  const std::size_t n = raw.rows();
  if (n < 2) throw invalid_input("pseudo-observations need at least two rows");
  Matrix out(n, raw.cols());
  std::vector<std::size_t> order(n);
  for (std::size_t c = 0; c < raw.cols(); ++c) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return raw(a, c) < raw(b, c); });
    if (raw(order.front(), c) == raw(order.back(), c)) {
      throw invalid_input("column " + std::to_string(c + 1) + " is constant");
    }
    for (std::size_t i = 0; i < n;) {
      std::size_t j = i;
      while (j + 1 < n && raw(order[j + 1], c) == raw(order[i], c)) ++j;
      const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
      for (std::size_t t = i; t <= j; ++t) out(order[t], c) = rank / static_cast<double>(n + 1);
      i = j + 1;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Simulation study

/// Dimension-10 parameter used by the default simulation study: the equal
/// mixture of the vertices (0,6), (1,6) and (2,6).
inline ThetaVector study_theta() {
  return ThetaVector(10, {1.0 / 15, 19.0 / 135, 67.0 / 945, 8.0 / 945, 209.0 / 4725, 59.0 / 675,
                          -1.0 / 75, -8.0 / 75, 13.0 / 15});
}

struct StudyConfig {
  ThetaVector theta = study_theta();
  std::size_t n = 10'000;
  int reps = 100;
  std::uint64_t seed = 1;
  EmOptions em;
};

struct SummaryRow {
  std::string label;
  std::vector<double> values;  // theta_2..theta_d
};

struct StudyResult {
  ThetaVector truth;
  std::vector<ThetaVector> estimates;  // one per replication
  std::vector<bool> converged;
  std::vector<bool> monotone;
  std::vector<SummaryRow> summary;
};

/// Linear-interpolation quantile of sorted data (the usual "type 7").
inline double quantile_sorted(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) throw invalid_input("quantile of empty data");
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

inline bool loglik_monotone(const std::vector<double>& trace, double slack = 1e-10) {
  for (std::size_t i = 1; i < trace.size(); ++i) {
    if (trace[i] < trace[i - 1] - slack) return false;
  }
  return true;
}

/// Replication r samples n rows with seed substream_seed(seed, r) and fits them.
inline StudyResult simulation_study(const StudyConfig& config) {
  if (config.reps < 1) throw invalid_input("reps must be >= 1");
  const int d = config.theta.d();
  const NdPmf model = theta_to_nd_pmf(config.theta);
  StudyResult result{config.theta, {}, {}, {}, {}};
  for (int r = 0; r < config.reps; ++r) {
    const SampleBatch batch =
        sample(model, config.n, substream_seed(config.seed, static_cast<std::uint64_t>(r)),
               config.em.threads);
    const FitResult fit = em_fit(batch.rows, d, config.em);
    result.estimates.push_back(fit.theta);
    result.converged.push_back(fit.converged);
    result.monotone.push_back(loglik_monotone(fit.loglik_trace));
  }
  const std::size_t width = static_cast<std::size_t>(d - 1);
  std::vector<SummaryRow> rows{{"Real parameter", config.theta.values()},
                               {"1st quartile", {}},
                               {"Median", {}},
                               {"Mean", {}},
                               {"3rd quartile", {}},
                               {"Interquartile range", {}},
                               {"Standard deviation", {}}};
  for (std::size_t c = 0; c < width; ++c) {
    std::vector<double> col;
    for (const auto& est : result.estimates) col.push_back(est.values()[c]);
    std::sort(col.begin(), col.end());
    const double n = static_cast<double>(col.size());
    const double mean = std::accumulate(col.begin(), col.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : col) ss += (x - mean) * (x - mean);
    const double q1 = quantile_sorted(col, 0.25);
    const double q3 = quantile_sorted(col, 0.75);
    rows[1].values.push_back(q1);
    rows[2].values.push_back(quantile_sorted(col, 0.5));
    rows[3].values.push_back(mean);
    rows[4].values.push_back(q3);
    rows[5].values.push_back(q3 - q1);
    rows[6].values.push_back(col.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0);
  }
  result.summary = std::move(rows);
  return result;
}

}  // namespace efgm
