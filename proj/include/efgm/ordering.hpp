#pragma once

// Dependence bounds within the eFGM family and order-checking utilities.
//
// EPD (comonotone Bernoulli vector) and END (Bernoulli sum concentrated at
// the mean) are the supermodular upper and lower bounds. No procedure here
// decides the supermodular order in general: mixer comparisons give a
// sufficient condition, concordance comparisons give necessary ones, and
// the verdict vocabulary says which is which.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <boost/math/special_functions/beta.hpp>

#include "efgm/combinatorics.hpp"
#include "efgm/error.hpp"
#include "efgm/evaluation.hpp"
#include "efgm/geometry.hpp"
#include "efgm/representations.hpp"

namespace efgm {

inline ThetaVector epd_theta(int d) {
  detail::require_dimension(d);
  std::vector<double> theta(static_cast<std::size_t>(d - 1));
  for (int k = 2; k <= d; ++k) theta[static_cast<std::size_t>(k - 2)] = (k % 2 == 0) ? 1.0 : 0.0;
  return ThetaVector(d, std::move(theta));
}

inline NdPmf epd_nd_pmf(int d) {
  detail::require_dimension(d);
  std::vector<double> p(static_cast<std::size_t>(d + 1), 0.0);
  p.front() = 0.5;
  p.back() = 0.5;
  return NdPmf(d, std::move(p));
}

inline NdPmf end_nd_pmf(int d) {
  detail::require_dimension(d);
  std::vector<double> p(static_cast<std::size_t>(d + 1), 0.0);
  if (d % 2 == 0) {
    p[static_cast<std::size_t>(d / 2)] = 1.0;
  } else {
    p[static_cast<std::size_t>((d - 1) / 2)] = 0.5;
    p[static_cast<std::size_t>((d + 1) / 2)] = 0.5;
  }
  return NdPmf(d, std::move(p));
}

/// Zero at odd k; at even k
///   prod_{l=1}^{k/2} (1 - 2l) / (d - 2l + 2)   for d odd,
///   prod_{l=1}^{k/2} (1 - 2l) / (d - 2l + 1)   for d even.
inline ThetaVector end_theta(int d) {
  detail::require_dimension(d);
  const int shift = (d % 2 == 1) ? 2 : 1;
  std::vector<double> theta(static_cast<std::size_t>(d - 1), 0.0);
  double prod = 1.0;
  for (int k = 2; k <= d; k += 2) {
    const int l = k / 2;
    prod *= (1.0 - 2.0 * l) / (d - 2.0 * l + shift);
    theta[static_cast<std::size_t>(k - 2)] = prod;
  }
  return ThetaVector(d, std::move(theta));
}

/// E[(-1)^X] summed term by term, where X counts the ones among the first k
/// coordinates of the END Bernoulli vector: hypergeometric with d/2 ones for
/// even d, an equal mixture of the two neighbouring urns for odd d.
inline double end_theta_hypergeometric_oracle(int d, int k) {
  if (!(k >= 2 && k <= d && d <= 30)) throw invalid_input("oracle needs 2 <= k <= d <= 30");
  auto signed_hypergeometric = [k](int ones, int zeros) {
    double s = 0.0;
    for (int j = 0; j <= k; ++j) {
      const double w = binomial(ones, j) * binomial(zeros, k - j);
      s += (j % 2 == 0) ? w : -w;
    }
    return s / binomial(ones + zeros, k);
  };
  if (d % 2 == 0) return signed_hypergeometric(d / 2, d / 2);
  return 0.5 * signed_hypergeometric((d + 1) / 2, (d - 1) / 2) +
         0.5 * signed_hypergeometric((d - 1) / 2, (d + 1) / 2);
}

/// t -> E[(N - t)+] at t = 0..d.
struct StopLossCurve {
  std::vector<double> values;
};

inline StopLossCurve stop_loss_curve(const NdPmf& p) {
  const int d = p.d();
  StopLossCurve curve;
  curve.values.resize(static_cast<std::size_t>(d + 1));
  for (int t = 0; t <= d; ++t) {
    double s = 0.0;
    for (int n = t + 1; n <= d; ++n) s += (n - t) * p.at(n);
    curve.values[static_cast<std::size_t>(t)] = s;
  }
  return curve;
}

enum class Relation {
  equal,
  ordered_leq,
  ordered_geq,
  incomparable,
  inconclusive,
};

inline const char* to_string(Relation r) {
  switch (r) {
    case Relation::equal: return "equal";
    case Relation::ordered_leq: return "ordered-leq";
    case Relation::ordered_geq: return "ordered-geq";
    case Relation::incomparable: return "incomparable";
    case Relation::inconclusive: return "inconclusive";
  }
  return "unknown";
}

struct OrderVerdict {
  Relation relation;
  std::string evidence;
};

namespace detail {

// Compares two convex, piecewise-linear stop-loss transforms sampled at the
// same abscissae.
inline OrderVerdict compare_stop_loss(const std::vector<double>& lhs, const std::vector<double>& rhs,
                                      double tolerance, const std::string& what) {
  bool leq = true;
  bool geq = true;
  std::size_t first_leq_violation = 0;
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    if (lhs[i] > rhs[i] + tolerance && leq) {
      leq = false;
      first_leq_violation = i;
    }
    if (lhs[i] < rhs[i] - tolerance) geq = false;
  }
  if (leq && geq) return {Relation::equal, what + ": stop-loss transforms coincide"};
  if (leq) return {Relation::ordered_leq, what + ": stop-loss transform pointwise below"};
  if (geq) return {Relation::ordered_geq, what + ": stop-loss transform pointwise above"};
  return {Relation::incomparable, what + ": stop-loss transforms cross (first excess at index " +
                                      std::to_string(first_leq_violation) + ")"};
}

}  // namespace detail

/// p <=_cx p' iff the stop-loss transforms are pointwise ordered; exact for
/// pmfs on {0..d} with the common mean d/2.
inline OrderVerdict convex_order_check(const NdPmf& p, const NdPmf& q) {
  if (p.d() != q.d()) throw invalid_input("convex order needs pmfs of the same dimension");
  return detail::compare_stop_loss(stop_loss_curve(p).values, stop_loss_curve(q).values,
                                   tol::equality, "N_d convex order");
}

// ---------------------------------------------------------------------------
// Mixer comparison

inline constexpr int kMixerCells = 2048;

/// Atoms (location, mass) approximating Lambda; continuous mixers put each
/// of kMixerCells equal-width cells' probability at the cell midpoint.
/// Empty when the mixer exposes no distribution function.
inline std::optional<std::vector<std::pair<double, double>>> discretize_mixer(const MixingSpec& m) {
  detail::validate_mixer(m);
  std::vector<std::pair<double, double>> atoms;
  auto from_cdf = [&atoms](auto&& cdf) {
    double prev = cdf(0.0);
    for (int i = 0; i < kMixerCells; ++i) {
      const double hi = static_cast<double>(i + 1) / kMixerCells;
      const double cur = cdf(hi);
      atoms.emplace_back((i + 0.5) / kMixerCells, cur - prev);
      prev = cur;
    }
  };
  if (const auto* b = std::get_if<BetaMixer>(&m)) {
    const double a = b->alpha;
    from_cdf([a](double x) { return boost::math::ibeta(a, a, x); });
  } else if (const auto* md = std::get_if<MadsenMixer>(&m)) {
    if (md->beta < 1.0) atoms.emplace_back(md->atom(), 1.0 - md->beta);
    if (md->beta > 0.0) atoms.emplace_back(1.0, md->beta);
  } else if (const auto* l = std::get_if<LstMixer>(&m)) {
    if (!l->y_survival) return std::nullopt;
    const double r = lst_half_root(l->psi);
    auto survival = l->y_survival;
    // Pr(Lambda <= x) = Pr(Y >= -log(x) / r)
    from_cdf([r, survival](double x) { return x <= 0.0 ? 0.0 : survival(-std::log(x) / r); });
  } else {
    return std::nullopt;
  }
  double total = 0.0;
  for (const auto& atom : atoms) {
    if (!(atom.second >= -1e-15)) throw numeric_error("mixer discretization produced negative mass");
    total += atom.second;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw numeric_error("mixer discretization mass " + std::to_string(total) + " != 1");
  }
  return atoms;
}

/// Lambda <=_cx Lambda' implies that the induced Bernoulli vectors, hence
/// the eFGM copulas, are supermodular ordered. `d` only selects the
/// dimension the conclusion is stated for.
inline OrderVerdict mixing_order_check(const MixingSpec& lhs, const MixingSpec& rhs, int d) {
  detail::require_dimension(d);
  const auto a = discretize_mixer(lhs);
  const auto b = discretize_mixer(rhs);
  if (!a || !b) {
    return {Relation::inconclusive, "mixer without a distribution function; no comparison made"};
  }
  std::vector<double> knots{0.0, 1.0};
  for (const auto& x : *a) knots.push_back(x.first);
  for (const auto& x : *b) knots.push_back(x.first);
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
  auto stop_loss = [&knots](const std::vector<std::pair<double, double>>& atoms) {
    std::vector<double> v(knots.size(), 0.0);
    for (std::size_t i = 0; i < knots.size(); ++i) {
      double s = 0.0;
      for (const auto& [x, w] : atoms) {
        if (x > knots[i]) s += (x - knots[i]) * w;
      }
      v[i] = s;
    }
    return v;
  };
  OrderVerdict verdict =
      detail::compare_stop_loss(stop_loss(*a), stop_loss(*b), 1e-9, "mixer convex order");
  if (verdict.relation == Relation::ordered_leq || verdict.relation == Relation::ordered_geq) {
    verdict.evidence += "; the induced d=" + std::to_string(d) +
                        " eFGM copulas are supermodular ordered the same way";
  }
  return verdict;
}

// ---------------------------------------------------------------------------
// Necessary conditions for the supermodular order

/// Grid {0.1, ..., 0.9}^q with q = min(d, 5), coordinates beyond q set to 1.
/// eFGM copulas are symmetric in their arguments, so only nondecreasing
/// tuples are listed.
inline std::vector<std::vector<double>> concordance_grid(int d) {
  detail::require_dimension(d);
  const int q = std::min(d, 5);
  std::vector<std::vector<double>> grid;
  std::vector<int> idx(static_cast<std::size_t>(q), 1);
  while (true) {
    std::vector<double> u(static_cast<std::size_t>(d), 1.0);
    for (int j = 0; j < q; ++j) u[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j)] / 10.0;
    grid.push_back(std::move(u));
    int pos = q - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == 9) --pos;
    if (pos < 0) break;
    const int next = idx[static_cast<std::size_t>(pos)] + 1;
    for (int j = pos; j < q; ++j) idx[static_cast<std::size_t>(j)] = next;
  }
  return grid;
}

inline OrderVerdict supermodular_necessary_check(const ThetaVector& lhs, const ThetaVector& rhs) {
  if (lhs.d() != rhs.d()) throw invalid_input("supermodular check needs equal dimensions");
  const NdPmf p = theta_to_nd_pmf(lhs);
  const NdPmf q = theta_to_nd_pmf(rhs);
  double diff = 0.0;
  for (int k = 2; k <= lhs.d(); ++k) diff = std::max(diff, std::abs(lhs.at(k) - rhs.at(k)));
  if (diff <= tol::equality) return {Relation::equal, "identical parameters"};
  if (lhs.at(2) > rhs.at(2) + tol::equality) {
    return {Relation::incomparable,
            "not smaller in this direction: theta_2 " + std::to_string(lhs.at(2)) + " > " +
                std::to_string(rhs.at(2))};
  }
  for (const auto& u : concordance_grid(lhs.d())) {
    const double cl = copula_cdf(p, u);
    const double cr = copula_cdf(q, u);
    if (cl > cr + tol::equality) {
      std::string where;
      for (double x : u) where += (where.empty() ? "" : ",") + std::to_string(x);
      return {Relation::incomparable,
              "not smaller in this direction: lower-orthant cdf larger at (" + where + ")"};
    }
  }
  return {Relation::inconclusive,
          "necessary conditions hold (theta_2 and lower-orthant cdf on the grid); "
          "the supermodular order itself is not decided"};
}

/// Pairwise Spearman rho of an eFGM copula, theta_2 / 3.
inline double spearman_rho_pair(const ThetaVector& t) {
  if (!admissibility_check(t).admissible) throw invalid_input("theta is not admissible");
  return t.at(2) / 3.0;
}

}  // namespace efgm
