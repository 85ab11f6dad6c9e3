#pragma once

// Exact sampling of eFGM copulas through the Bernoulli representation.
//
// Per row: draw N from the pmf of N_d, put N ones on uniformly chosen
// coordinates, then for each coordinate j draw V0, V1 ~ U(0,1) and set
//   U_j = sqrt(V0) * V1^(1 - I_j).
// Given I_j = 1, U_j has cdf u^2; given I_j = 0, cdf 2u - u^2. These are the
// factors u(1 + (-1)^i (1 - u)) of the copula's Bernoulli mixture form.
//
// Stream order within a row (part of the reproducibility contract):
//   1. the N draw (one uniform for inverse cdf; one index plus one uniform
//      for the alias table),
//   2. N index draws of a partial Fisher-Yates shuffle of {0..d-1},
//   3. V0 then V1 for coordinates 1..d.
// Rows are generated in shards of kShardRows; shard s uses the substream
// substream_seed(seed, s), so output does not depend on the thread count.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include <boost/random/beta_distribution.hpp>

#include "efgm/combinatorics.hpp"
#include "efgm/error.hpp"
#include "efgm/matrix.hpp"
#include "efgm/random.hpp"
#include "efgm/representations.hpp"

namespace efgm {

inline constexpr std::size_t kShardRows = 4096;
inline constexpr std::size_t kAliasThreshold = 10'000;

struct SampleBatch {
  Matrix rows;
  std::uint64_t seed;
  NdPmf model;
  /// Number of ones in the Bernoulli vector behind each row.
  std::vector<int> counts;
};

namespace detail {

// Runs fn(shard) for shard in [0, count) on up to `threads` workers.
template <typename Fn>
void parallel_shards(std::size_t count, unsigned threads, Fn&& fn) {
  threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (threads == 1) {
    for (std::size_t s = 0; s < count; ++s) fn(s);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(threads);
  for (unsigned w = 0; w < threads; ++w) {
    workers.emplace_back([&, w] {
      for (std::size_t s = w; s < count; s += threads) fn(s);
    });
  }
  for (auto& t : workers) t.join();
}

/// Draws from a pmf on {0..d}: inverse cdf, or Vose's alias table.
class CountSampler {
 public:
  CountSampler(const std::vector<double>& p, bool use_alias) : alias_mode_(use_alias) {
    const std::size_t n = p.size();
    last_positive_ = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (p[k] > 0.0) last_positive_ = k;
    }
    if (!alias_mode_) {
      cumulative_.resize(n);
      std::partial_sum(p.begin(), p.end(), cumulative_.begin());
      return;
    }
    prob_.assign(n, 0.0);
    alias_.assign(n, 0);
    std::vector<double> scaled(n);
    std::vector<std::size_t> small;
    std::vector<std::size_t> large;
    for (std::size_t k = 0; k < n; ++k) {
      scaled[k] = p[k] * static_cast<double>(n);
      (scaled[k] < 1.0 ? small : large).push_back(k);
    }
    while (!small.empty() && !large.empty()) {
      const std::size_t s = small.back();
      small.pop_back();
      const std::size_t l = large.back();
      prob_[s] = scaled[s];
      alias_[s] = l;
      scaled[l] = (scaled[l] + scaled[s]) - 1.0;
      if (scaled[l] < 1.0) {
        large.pop_back();
        small.push_back(l);
      }
    }
    for (std::size_t l : large) prob_[l] = 1.0;
    // Leftovers from rounding: only categories with positive mass keep themselves.
    for (std::size_t s : small) {
      prob_[s] = p[s] > 0.0 ? 1.0 : 0.0;
      alias_[s] = last_positive_;
    }
  }

  std::size_t operator()(Rng& rng) const {
    if (alias_mode_) {
      const std::size_t i = rng.index(prob_.size());
      const double u = rng.uniform();
      return u < prob_[i] ? i : alias_[i];
    }
    const double u = rng.uniform();
    for (std::size_t k = 0; k < last_positive_; ++k) {
      if (u < cumulative_[k]) return k;
    }
    return last_positive_;
  }

 private:
  bool alias_mode_;
  std::size_t last_positive_ = 0;
  std::vector<double> cumulative_;
  std::vector<double> prob_;
  std::vector<std::size_t> alias_;
};

// Places `ones` ones uniformly at random, then draws the coordinates.
inline void fill_row(std::span<double> out, std::size_t ones, Rng& rng, std::vector<int>& slots,
                     std::vector<char>& bits) {
  const std::size_t d = out.size();
  std::iota(slots.begin(), slots.end(), 0);
  std::fill(bits.begin(), bits.end(), 0);
  for (std::size_t i = 0; i < ones; ++i) {
    const std::size_t j = i + rng.index(d - i);
    std::swap(slots[i], slots[j]);
    bits[static_cast<std::size_t>(slots[i])] = 1;
  }
  for (std::size_t j = 0; j < d; ++j) {
    const double v0 = rng.uniform();
    const double v1 = rng.uniform();
    out[j] = std::sqrt(v0) * (bits[j] ? 1.0 : v1);
  }
}

template <typename CountDraw>
Matrix generate_rows(std::size_t n, int d, std::uint64_t seed, unsigned threads, std::vector<int>& counts,
                     CountDraw&& draw_count) {
  Matrix rows(n, static_cast<std::size_t>(d));
  counts.assign(n, 0);
  const std::size_t shards = (n + kShardRows - 1) / kShardRows;
  parallel_shards(shards, threads, [&](std::size_t shard) {
    Rng rng(substream_seed(seed, shard));
    std::vector<int> slots(static_cast<std::size_t>(d));
    std::vector<char> bits(static_cast<std::size_t>(d));
    const std::size_t begin = shard * kShardRows;
    const std::size_t end = std::min(n, begin + kShardRows);
    for (std::size_t r = begin; r < end; ++r) {
      const std::size_t ones = draw_count(rng);
      counts[r] = static_cast<int>(ones);
      fill_row(rows.row(r), ones, rng, slots, bits);
    }
  });
  return rows;
}

}  // namespace detail

inline SampleBatch sample(const CopulaModel& model, std::size_t n, std::uint64_t seed,
                          unsigned threads = 1) {
  if (n < 1) throw invalid_input("sample size n must be >= 1");
  NdPmf p = canonicalize(model);
  const detail::CountSampler counts(p.values(), n > kAliasThreshold);
  std::vector<int> ones;
  Matrix rows = detail::generate_rows(n, p.d(), seed, threads, ones,
                                      [&counts](Rng& rng) { return counts(rng); });
  return {std::move(rows), seed, std::move(p), std::move(ones)};
}

/// Draws Lambda first, then N ~ Binomial(d, Lambda) as d Bernoulli trials
/// in coordinate order, then proceeds as `sample`.
inline SampleBatch sample_mixture(const MixingSpec& mixer, std::size_t n, int d, std::uint64_t seed,
                                  unsigned threads = 1) {
  if (n < 1) throw invalid_input("sample size n must be >= 1");
  NdPmf p = mixing_to_nd_pmf(mixer, d);
  std::function<double(Rng&)> draw_lambda;
  if (const auto* b = std::get_if<BetaMixer>(&mixer)) {
    const double a = b->alpha;
    draw_lambda = [a](Rng& rng) { return boost::random::beta_distribution<double>(a, a)(rng); };
  } else if (const auto* md = std::get_if<MadsenMixer>(&mixer)) {
    const double beta = md->beta;
    const double atom = md->atom();
    draw_lambda = [beta, atom](Rng& rng) { return rng.uniform() < beta ? 1.0 : atom; };
  } else if (const auto* l = std::get_if<LstMixer>(&mixer)) {
    if (!l->sample_y) throw invalid_input("LST mixer '" + l->name + "' has no sampler for Y");
    const double r = lst_half_root(l->psi);
    auto sample_y = l->sample_y;
    draw_lambda = [r, sample_y](Rng& rng) { return std::exp(-r * sample_y(rng)); };
  } else {
    throw invalid_input("moment-list mixer does not support random draws");
  }
  std::vector<int> counts;
  Matrix rows = detail::generate_rows(n, d, seed, threads, counts, [&draw_lambda, d](Rng& rng) {
    const double lambda = draw_lambda(rng);
    std::size_t ones = 0;
    for (int j = 0; j < d; ++j) ones += rng.uniform() < lambda ? 1 : 0;
    return ones;
  });
  return {std::move(rows), seed, std::move(p), std::move(counts)};
}

struct EmpiricalTheta {
  double value;
  double std_error;
};

/// Method-of-moments estimate of theta_k from E[prod_{j in S} (1 - 2 U_j)] = theta_k / 3^k,
/// averaged over all k-subsets S and rows; the standard error treats rows as i.i.d.
inline EmpiricalTheta empirical_theta_stats(const Matrix& rows, int k) {
  const int d = static_cast<int>(rows.cols());
  if (!(k >= 2 && k <= d)) throw invalid_input("empirical theta needs 2 <= k <= d");
  if (rows.rows() < 2) throw invalid_input("empirical theta needs at least two rows");
  const double scale = std::pow(3.0, k) / binomial(d, k);
  std::vector<double> e(static_cast<std::size_t>(k) + 1);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t r = 0; r < rows.rows(); ++r) {
    std::fill(e.begin(), e.end(), 0.0);
    e[0] = 1.0;
    const auto row = rows.row(r);
    for (int j = 0; j < d; ++j) {
      const double x = 1.0 - 2.0 * row[static_cast<std::size_t>(j)];
      for (int deg = std::min(j + 1, k); deg >= 1; --deg) {
        e[static_cast<std::size_t>(deg)] += x * e[static_cast<std::size_t>(deg - 1)];
      }
    }
    const double v = scale * e[static_cast<std::size_t>(k)];
    sum += v;
    sum_sq += v * v;
  }
  const double n = static_cast<double>(rows.rows());
  const double mean = sum / n;
  const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
  return {mean, std::sqrt(var / n)};
}

inline double empirical_theta(const SampleBatch& batch, int k) {
  return empirical_theta_stats(batch.rows, k).value;
}

}  // namespace efgm
