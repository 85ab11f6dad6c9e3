#pragma once

// Parameterizations of an exchangeable FGM copula and the maps between them.
//
// An eFGM copula of dimension d is fixed by any one of
//   * the dependence parameters theta_2..theta_d,
//   * the pmf p_0..p_d of N_d = I_1 + ... + I_d, the sum of the underlying
//     exchangeable symmetric Bernoulli vector (mean d/2),
//   * the joint success probabilities zeta_k = Pr(I_1 = ... = I_k = 1),
//   * a mixing distribution Lambda on [0, 1] with mean 1/2 that makes the
//     Bernoulli coordinates conditionally i.i.d.
// The pmf of N_d is the canonical form; every model normalizes to it.

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <limits>
#include <utility>
#include <variant>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/random/gamma_distribution.hpp>

#include "efgm/combinatorics.hpp"
#include "efgm/error.hpp"
#include "efgm/random.hpp"

namespace efgm {

namespace detail {

inline void require_dimension(int d) {
  if (d < 2) throw invalid_input("dimension d must be >= 2, got " + std::to_string(d));
}

inline void require_finite(std::span<const double> values, const char* what) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw invalid_input(std::string(what) + " entry " + std::to_string(i) + " is not finite");
    }
  }
}

}  // namespace detail

/// Dependence parameters (theta_2, ..., theta_d).
///
/// Only the shape is validated here. Admissibility, which implies
/// |theta_k| <= 1, is a property checked by the geometry module and
/// enforced whenever the vector is converted to a pmf.
class ThetaVector {
 public:
  ThetaVector(int d, std::vector<double> values) : d_(d), values_(std::move(values)) {
    detail::require_dimension(d);
    if (values_.size() != static_cast<std::size_t>(d - 1)) {
      throw invalid_input("theta vector for d=" + std::to_string(d) + " needs " +
                          std::to_string(d - 1) + " values, got " +
                          std::to_string(values_.size()));
    }
    detail::require_finite(values_, "theta");
  }

  static ThetaVector independence(int d) {
    return ThetaVector(d, std::vector<double>(static_cast<std::size_t>(std::max(d - 1, 0)), 0.0));
  }

  int d() const { return d_; }
  /// theta_k for 2 <= k <= d.
  double at(int k) const { return values_.at(static_cast<std::size_t>(k - 2)); }
  /// theta_2 first.
  const std::vector<double>& values() const& { return values_; }
  std::vector<double> values() && { return std::move(values_); }

  friend bool operator==(const ThetaVector&, const ThetaVector&) = default;

 private:
  int d_;
  std::vector<double> values_;
};

/// Joint success probabilities (zeta_0, ..., zeta_d).
class ZetaVector {
 public:
  ZetaVector(int d, std::vector<double> zeta) : d_(d), zeta_(std::move(zeta)) {
    detail::require_dimension(d);
    if (zeta_.size() != static_cast<std::size_t>(d + 1)) {
      throw invalid_input("zeta vector for d=" + std::to_string(d) + " needs " +
                          std::to_string(d + 1) + " values, got " + std::to_string(zeta_.size()));
    }
    detail::require_finite(zeta_, "zeta");
    if (std::abs(zeta_[0] - 1.0) > tol::equality) throw invalid_input("zeta_0 must equal 1");
    if (std::abs(zeta_[1] - 0.5) > tol::equality) throw invalid_input("zeta_1 must equal 1/2");
    zeta_[0] = 1.0;
    zeta_[1] = 0.5;
    for (int k = 1; k < d; ++k) {
      const double next = zeta_[static_cast<std::size_t>(k) + 1];
      if (next < -tol::negative_clamp || next > zeta_[static_cast<std::size_t>(k)] + tol::equality) {
        throw invalid_input("zeta must satisfy 0 <= zeta_{k+1} <= zeta_k; violated at k=" +
                            std::to_string(k));
      }
      if (next < 0.0) zeta_[static_cast<std::size_t>(k) + 1] = 0.0;
    }
  }

  int d() const { return d_; }
  double at(int k) const { return zeta_.at(static_cast<std::size_t>(k)); }
  const std::vector<double>& values() const& { return zeta_; }
  std::vector<double> values() && { return std::move(zeta_); }

 private:
  int d_;
  std::vector<double> zeta_;
};

/// Pmf (p_0, ..., p_d) of N_d, an element of the class N_d (mean d/2).
class NdPmf {
 public:
  NdPmf(int d, std::vector<double> p) : NdPmf(d, std::move(p), tol::equality, false) {}

  /// Output of a conversion: sum and mean are checked at the round-trip
  /// tolerance, then the entries are rescaled to sum to 1.
  static NdPmf from_computed(int d, std::vector<double> p) {
    return NdPmf(d, std::move(p), tol::round_trip, true);
  }

  static NdPmf independence(int d) {
    detail::require_dimension(d);
    std::vector<double> p = binomial_row(d);
    for (double& x : p) x = std::ldexp(x, -d);
    return NdPmf(d, std::move(p));
  }

  int d() const { return d_; }
  double at(int k) const { return p_.at(static_cast<std::size_t>(k)); }
  const std::vector<double>& values() const& { return p_; }
  std::vector<double> values() && { return std::move(p_); }

 private:
  NdPmf(int d, std::vector<double> p, double tolerance, bool renormalize) : d_(d), p_(std::move(p)) {
    detail::require_dimension(d);
    if (p_.size() != static_cast<std::size_t>(d + 1)) {
      throw invalid_input("N_d pmf for d=" + std::to_string(d) + " needs " +
                          std::to_string(d + 1) + " values, got " + std::to_string(p_.size()));
    }
    detail::require_finite(p_, "pmf");
    double sum = 0.0;
    double mean = 0.0;
    for (int k = 0; k <= d; ++k) {
      double& pk = p_[static_cast<std::size_t>(k)];
      if (pk < -tol::negative_clamp) {
        throw invalid_input("pmf entry p_" + std::to_string(k) + " = " + std::to_string(pk) +
                            " is negative");
      }
      if (pk < 0.0) pk = 0.0;
      sum += pk;
      mean += k * pk;
    }
    if (std::abs(sum - 1.0) > tolerance) {
      throw invalid_input("pmf must sum to 1 (sum = " + std::to_string(sum) + ")");
    }
    if (std::abs(mean - 0.5 * d) > tolerance * std::max(1.0, 0.5 * d)) {
      throw invalid_input("pmf mean must equal d/2 = " + std::to_string(0.5 * d) +
                          " (mean = " + std::to_string(mean) + ")");
    }
    if (renormalize) {
      for (double& x : p_) x /= sum;
    }
  }

  int d_;
  std::vector<double> p_;
};

// ---------------------------------------------------------------------------
// Mixing distributions

/// Lambda ~ Beta(alpha, alpha).
struct BetaMixer {
  double alpha;
};

/// Madsen's model zeta_k = beta + (1 - beta) a^k with a = (1/2 - beta)/(1 - beta):
/// Lambda is 1 with probability beta and `a` otherwise.
struct MadsenMixer {
  double beta;
  double atom() const { return beta >= 0.5 ? 0.0 : (0.5 - beta) / (1.0 - beta); }
};

/// Lambda = exp(-r Y) where psi is the Laplace-Stieltjes transform of Y and
/// r solves psi(r) = 1/2, so that zeta_k = psi(k r).
struct LstMixer {
  std::string name;
  std::function<double(double)> psi;
  /// Optional draw of Y; required for mixture sampling.
  std::function<double(Rng&)> sample_y;
  /// Optional survival function Pr(Y > y); required for mixer ordering checks.
  std::function<double(double)> y_survival;
};

/// Raw moments E[Lambda^k] for k = 0..K with K >= d.
struct MomentListMixer {
  std::vector<double> moments;
};

using MixingSpec = std::variant<BetaMixer, MadsenMixer, LstMixer, MomentListMixer>;

/// Y ~ Gamma(shape 1/a, rate 1/a), psi(t) = (1 + a t)^(-1/a).
inline LstMixer gamma_lst_mixer(double a);

// ---------------------------------------------------------------------------
// Conversions

inline ThetaVector zeta_to_theta(const ZetaVector& z) {
  const int d = z.d();
  std::vector<double> theta(static_cast<std::size_t>(d - 1));
  for (int k = 2; k <= d; ++k) {
    double s = 0.0;
    double pow_m2 = 1.0;
    for (int l = 0; l <= k; ++l) {
      s += binomial(k, l) * z.at(l) * pow_m2;
      pow_m2 *= -2.0;
    }
    theta[static_cast<std::size_t>(k - 2)] = s;
  }
  return ThetaVector(d, std::move(theta));
}

inline constexpr double kEpsilon = std::numeric_limits<double>::epsilon();

inline NdPmf nd_pmf_from_zeta(const ZetaVector& z) {
  const int d = z.d();
  std::vector<double> p(static_cast<std::size_t>(d + 1));
  for (int k = 0; k <= d; ++k) {
    double s = 0.0;
    double magnitude = 0.0;
    for (int l = 0; l <= d - k; ++l) {
      const double term = binomial(d - k, l) * z.at(k + l);
      s += (l % 2 == 0) ? term : -term;
      magnitude += term;
    }
    s *= binomial(d, k);
    magnitude *= binomial(d, k);
    // The alternating sum loses about eps * magnitude to cancellation.
    const double clamp = std::max(tol::negative_clamp, 64.0 * kEpsilon * magnitude);
    if (s < -clamp) {
      throw inadmissible("zeta vector implies Pr(N_d = " + std::to_string(k) +
                         ") = " + std::to_string(s) + " < 0");
    }
    p[static_cast<std::size_t>(k)] = std::max(s, 0.0);
  }
  return NdPmf::from_computed(d, std::move(p));
}

inline ZetaVector zeta_from_nd_pmf(const NdPmf& p) {
  const int d = p.d();
  std::vector<double> zeta(static_cast<std::size_t>(d + 1));
  for (int k = 0; k <= d; ++k) {
    double s = 0.0;
    for (int m = k; m <= d; ++m) s += p.at(m) * binomial(m, k);
    zeta[static_cast<std::size_t>(k)] = s / binomial(d, k);
  }
  return ZetaVector(d, std::move(zeta));
}

/// Pr(I = bits) = Pr(N_d = |bits|) / C(d, |bits|).
inline double bernoulli_pmf_point(const NdPmf& p, std::span<const int> bits) {
  if (bits.size() != static_cast<std::size_t>(p.d())) {
    throw invalid_input("bit vector length " + std::to_string(bits.size()) +
                        " does not match d=" + std::to_string(p.d()));
  }
  int ones = 0;
  for (int b : bits) {
    if (b != 0 && b != 1) throw invalid_input("bit vector entries must be 0 or 1");
    ones += b;
  }
  return p.at(ones) / binomial(p.d(), ones);
}

/// theta_k = E[(-1)^(I_1 + ... + I_k)], grouped by N_d: given N_d = m the
/// first k coordinates hold a hypergeometric number of ones, whose signed
/// expectation is K_k(m) / C(d, k). Algebraically identical to
/// zeta_to_theta(zeta_from_nd_pmf(p)) but free of the alternating-sum
/// cancellation that the zeta route suffers for larger d.
inline ThetaVector theta_from_nd_pmf(const NdPmf& p) {
  const int d = p.d();
  std::vector<double> theta(static_cast<std::size_t>(d - 1));
  for (int k = 2; k <= d; ++k) {
    const double ck = binomial(d, k);
    double s = 0.0;
    for (int m = 0; m <= d; ++m) {
      if (p.at(m) != 0.0) s += p.at(m) * (krawtchouk_sum(d, k, m) / ck);
    }
    theta[static_cast<std::size_t>(k - 2)] = s;
  }
  return ThetaVector(d, std::move(theta));
}

inline constexpr int kMaxOracleDimension = 20;

namespace detail {

// Exact expectation over all 2^d Bernoulli outcomes; `sign_form` selects
// E[(-1)^(I_1+...+I_k)] instead of (-2)^k E[prod (I_j - 1/2)].
inline ThetaVector theta_by_enumeration(const NdPmf& p, bool sign_form) {
  const int d = p.d();
  if (d > kMaxOracleDimension) {
    throw capability_error("2^d enumeration limited to d <= " +
                           std::to_string(kMaxOracleDimension));
  }
  std::vector<double> theta(static_cast<std::size_t>(d - 1), 0.0);
  std::vector<double> point_mass(static_cast<std::size_t>(d + 1));
  for (int m = 0; m <= d; ++m) point_mass[static_cast<std::size_t>(m)] = p.at(m) / binomial(d, m);
  const std::uint64_t outcomes = std::uint64_t{1} << d;
  for (std::uint64_t mask = 0; mask < outcomes; ++mask) {
    const int ones = std::popcount(mask);
    const double f = point_mass[static_cast<std::size_t>(ones)];
    if (f == 0.0) continue;
    double prefix = 1.0;
    int prefix_ones = 0;
    for (int j = 0; j < d; ++j) {
      const int bit = static_cast<int>((mask >> j) & 1U);
      if (sign_form) {
        prefix_ones += bit;
      } else {
        prefix *= -2.0 * (bit - 0.5);
      }
      if (j >= 1) {
        const double value = sign_form ? ((prefix_ones % 2 == 0) ? 1.0 : -1.0) : prefix;
        theta[static_cast<std::size_t>(j - 1)] += f * value;
      }
    }
  }
  return ThetaVector(d, std::move(theta));
}

}  // namespace detail

/// Brute-force theta_k = (-2)^k E[prod_{j<=k} (I_j - 1/2)] over all 2^d outcomes.
inline ThetaVector theta_oracle(const NdPmf& p) { return detail::theta_by_enumeration(p, false); }

/// Same expectation in the sign form E[(-1)^(I_1 + ... + I_k)].
inline ThetaVector theta_oracle_sign_form(const NdPmf& p) {
  return detail::theta_by_enumeration(p, true);
}

/// Constraint margins g(m) = 1 + sum_k theta_k K_k(m), m = 0..d. The sign
/// constraints of the admissible set depend on the sign vector only through
/// the number m of -1 entries, and p_m = C(d, m) 2^-d g(m).
inline std::vector<double> constraint_margins(const ThetaVector& t) {
  const int d = t.d();
  std::vector<double> g(static_cast<std::size_t>(d + 1), 1.0);
  for (int m = 0; m <= d; ++m) {
    double s = 1.0;
    for (int k = 2; k <= d; ++k) s += t.at(k) * krawtchouk_sum(d, k, m);
    g[static_cast<std::size_t>(m)] = s;
  }
  return g;
}

inline NdPmf theta_to_nd_pmf(const ThetaVector& t) {
  const int d = t.d();
  const std::vector<double> g = constraint_margins(t);
  std::vector<double> p(static_cast<std::size_t>(d + 1));
  for (int m = 0; m <= d; ++m) {
    const double pm = std::ldexp(binomial(d, m), -d) * g[static_cast<std::size_t>(m)];
    if (pm < -tol::negative_clamp) {
      throw inadmissible("theta violates the sign constraint at m=" + std::to_string(m) +
                         " (margin g(" + std::to_string(m) + ") = " +
                         std::to_string(g[static_cast<std::size_t>(m)]) + ")");
    }
    p[static_cast<std::size_t>(m)] = std::max(pm, 0.0);
  }
  return NdPmf::from_computed(d, std::move(p));
}

// ---------------------------------------------------------------------------
// Mixing distributions

namespace detail {

inline void validate_mixer(const MixingSpec& m) {
  if (const auto* b = std::get_if<BetaMixer>(&m)) {
    if (!(b->alpha > 0.0) || !std::isfinite(b->alpha)) {
      throw invalid_input("beta mixer needs alpha > 0");
    }
  } else if (const auto* md = std::get_if<MadsenMixer>(&m)) {
    if (!(md->beta >= 0.0 && md->beta <= 0.5)) {
      throw invalid_input("Madsen mixer needs beta in [0, 0.5]");
    }
  } else if (const auto* l = std::get_if<LstMixer>(&m)) {
    if (!l->psi) throw invalid_input("LST mixer needs a transform psi");
  } else if (const auto* ml = std::get_if<MomentListMixer>(&m)) {
    if (ml->moments.size() < 2) throw invalid_input("moment list needs E[Lambda^0], E[Lambda^1]");
    if (std::abs(ml->moments[0] - 1.0) > tol::equality) {
      throw invalid_input("moment list must start with E[Lambda^0] = 1");
    }
    if (std::abs(ml->moments[1] - 0.5) > tol::equality) {
      throw invalid_input("mixing distribution must have mean 1/2 (E[Lambda] = " +
                          std::to_string(ml->moments[1]) + ")");
    }
  }
}

}  // namespace detail

/// Root r of psi(r) = 1/2 by bisection; psi is strictly decreasing.
inline double lst_half_root(const std::function<double(double)>& psi) {
  double lo = 1e-12;
  double hi = 1.0;
  if (!(psi(lo) > 0.5)) throw numeric_error("LST root: psi(1e-12) is not above 1/2");
  int doublings = 0;
  while (!(psi(hi) < 0.5)) {
    hi *= 2.0;
    if (++doublings > 1100 || !std::isfinite(hi)) {
      throw numeric_error("LST root: no sign change of psi - 1/2 on the bracket");
    }
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (psi(mid) > 0.5 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

inline ZetaVector mixing_to_zeta(const MixingSpec& m, int d) {
  detail::require_dimension(d);
  detail::validate_mixer(m);
  std::vector<double> zeta(static_cast<std::size_t>(d + 1));
  if (const auto* b = std::get_if<BetaMixer>(&m)) {
    // E[Lambda^k] = prod_{l<k} (alpha + l) / (2 alpha + l)
    double z = 1.0;
    for (int k = 0; k <= d; ++k) {
      zeta[static_cast<std::size_t>(k)] = z;
      z *= (b->alpha + k) / (2.0 * b->alpha + k);
    }
  } else if (const auto* md = std::get_if<MadsenMixer>(&m)) {
    zeta[0] = 1.0;
    const double a = md->atom();
    for (int k = 1; k <= d; ++k) {
      zeta[static_cast<std::size_t>(k)] = md->beta + (1.0 - md->beta) * std::pow(a, k);
    }
    if (md->beta == 0.5) std::fill(zeta.begin() + 1, zeta.end(), 0.5);
  } else if (const auto* l = std::get_if<LstMixer>(&m)) {
    const double r = lst_half_root(l->psi);
    zeta[0] = 1.0;
    zeta[1] = 0.5;
    for (int k = 2; k <= d; ++k) zeta[static_cast<std::size_t>(k)] = l->psi(k * r);
  } else {
    const auto& moments = std::get<MomentListMixer>(m).moments;
    if (moments.size() < static_cast<std::size_t>(d + 1)) {
      throw invalid_input("moment list has " + std::to_string(moments.size()) +
                          " entries, need " + std::to_string(d + 1));
    }
    std::copy_n(moments.begin(), d + 1, zeta.begin());
  }
  return ZetaVector(d, std::move(zeta));
}

/// Pmf of N_d under the mixture. Beta and Madsen mixers are handled in
/// closed form (beta-binomial, two-atom binomial mixture); the others go
/// through the zeta vector.
inline NdPmf mixing_to_nd_pmf(const MixingSpec& m, int d) {
  detail::require_dimension(d);
  detail::validate_mixer(m);
  std::vector<double> p(static_cast<std::size_t>(d + 1));
  if (const auto* b = std::get_if<BetaMixer>(&m)) {
    const double a = b->alpha;
    p[0] = 1.0;
    for (int k = 0; k < d; ++k) {
      p[static_cast<std::size_t>(k) + 1] = p[static_cast<std::size_t>(k)] *
                                           (static_cast<double>(d - k) / (k + 1)) *
                                           ((a + k) / (a + d - k - 1));
    }
    // Symmetric about d/2: average with the mirror so the mean is exact.
    for (int k = 0; k <= d / 2; ++k) {
      const double sym = 0.5 * (p[static_cast<std::size_t>(k)] + p[static_cast<std::size_t>(d - k)]);
      p[static_cast<std::size_t>(k)] = p[static_cast<std::size_t>(d - k)] = sym;
    }
    const double total = std::accumulate(p.begin(), p.end(), 0.0);
    for (double& x : p) x /= total;
    return NdPmf::from_computed(d, std::move(p));
  }
  if (const auto* md = std::get_if<MadsenMixer>(&m)) {
    const double a = md->atom();
    for (int k = 0; k <= d; ++k) {
      const double bin = (a == 0.0) ? (k == 0 ? 1.0 : 0.0)
                                    : binomial(d, k) * std::pow(a, k) * std::pow(1.0 - a, d - k);
      p[static_cast<std::size_t>(k)] = (1.0 - md->beta) * bin + (k == d ? md->beta : 0.0);
    }
    return NdPmf::from_computed(d, std::move(p));
  }
  return nd_pmf_from_zeta(mixing_to_zeta(m, d));
}

/// theta_k = B(alpha + 1/2, (k+1)/2) / B(alpha + (k+1)/2, 1/2) for even k, 0 for odd k.
inline ThetaVector beta_family_theta_ratio(double alpha, int d) {
  detail::require_dimension(d);
  if (!(alpha > 0.0)) throw invalid_input("beta family needs alpha > 0");
  auto lbeta = [](double x, double y) { return std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y); };
  std::vector<double> theta(static_cast<std::size_t>(d - 1), 0.0);
  for (int k = 2; k <= d; k += 2) {
    theta[static_cast<std::size_t>(k - 2)] =
        std::exp(lbeta(alpha + 0.5, 0.5 * (k + 1)) - lbeta(alpha + 0.5 * (k + 1), 0.5));
  }
  return ThetaVector(d, std::move(theta));
}

/// theta_k = prod_{l=1}^{k/2} (2l - 1) / (2 alpha + 2l - 1) for even k, 0 for odd k.
inline ThetaVector beta_family_theta(double alpha, int d) {
  detail::require_dimension(d);
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw invalid_input("beta family needs alpha > 0");
  std::vector<double> theta(static_cast<std::size_t>(d - 1), 0.0);
  double prod = 1.0;
  for (int k = 2; k <= d; k += 2) {
    const int l = k / 2;
    prod *= (2.0 * l - 1.0) / (2.0 * alpha + 2.0 * l - 1.0);
    theta[static_cast<std::size_t>(k - 2)] = prod;
  }
  return ThetaVector(d, std::move(theta));
}

/// theta_k = (-2)^k E[(Lambda - 1/2)^k].
inline ThetaVector theta_from_mixing(const MixingSpec& m, int d) {
  detail::require_dimension(d);
  detail::validate_mixer(m);
  if (const auto* b = std::get_if<BetaMixer>(&m)) return beta_family_theta(b->alpha, d);
  std::vector<double> theta(static_cast<std::size_t>(d - 1));
  if (const auto* md = std::get_if<MadsenMixer>(&m)) {
    // Atoms at 1 (weight beta) and a (weight 1 - beta).
    const double a = md->atom();
    for (int k = 2; k <= d; ++k) {
      theta[static_cast<std::size_t>(k - 2)] =
          md->beta * ((k % 2 == 0) ? 1.0 : -1.0) + (1.0 - md->beta) * std::pow(1.0 - 2.0 * a, k);
    }
    return ThetaVector(d, std::move(theta));
  }
  // Central moments from the raw moments.
  const ZetaVector z = mixing_to_zeta(m, d);
  for (int k = 2; k <= d; ++k) {
    double central = 0.0;
    for (int l = 0; l <= k; ++l) central += binomial(k, l) * z.at(l) * std::pow(-0.5, k - l);
    theta[static_cast<std::size_t>(k - 2)] = std::pow(-2.0, k) * central;
  }
  return ThetaVector(d, std::move(theta));
}

// ---------------------------------------------------------------------------
// Models

struct MixtureModel {
  MixingSpec mixer;
  int d;
};

using CopulaModel = std::variant<ThetaVector, NdPmf, ZetaVector, MixtureModel>;

inline int dimension(const CopulaModel& model) {
  return std::visit(
      [](const auto& m) -> int {
        if constexpr (std::is_same_v<std::decay_t<decltype(m)>, MixtureModel>) {
          return m.d;
        } else {
          return m.d();
        }
      },
      model);
}

/// Normal form (d, N_d pmf) of any model; canonicalize(NdPmf) is the identity.
inline NdPmf canonicalize(const CopulaModel& model) {
  return std::visit(
      [](const auto& m) -> NdPmf {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ThetaVector>) {
          return theta_to_nd_pmf(m);
        } else if constexpr (std::is_same_v<T, NdPmf>) {
          return m;
        } else if constexpr (std::is_same_v<T, ZetaVector>) {
          return nd_pmf_from_zeta(m);
        } else {
          return mixing_to_nd_pmf(m.mixer, m.d);
        }
      },
      model);
}

inline LstMixer gamma_lst_mixer(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) throw invalid_input("gamma LST mixer needs a > 0");
  LstMixer mixer;
  mixer.name = "gamma(" + std::to_string(a) + ")";
  mixer.psi = [a](double t) { return std::pow(1.0 + a * t, -1.0 / a); };
  mixer.sample_y = [a](Rng& rng) {
    return boost::random::gamma_distribution<double>(1.0 / a, a)(rng);
  };
  mixer.y_survival = [a](double y) {
    return y <= 0.0 ? 1.0 : boost::math::gamma_q(1.0 / a, y / a);
  };
  return mixer;
}

}  // namespace efgm
