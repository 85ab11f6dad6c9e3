#pragma once

// Admissible region of eFGM parameters and its extreme points.
//
// The admissible thetas form a convex polytope that is the linear image of
// N_d, the polytope of pmfs on {0..d} with mean d/2. The vertices of N_d
// are the one- or two-point pmfs described by `ExtremePoint`.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "efgm/combinatorics.hpp"
#include "efgm/error.hpp"
#include "efgm/representations.hpp"

namespace efgm {

struct ConstraintReport {
  bool admissible = false;
  /// Admissible with the smallest margin within tolerance of zero.
  bool boundary = false;
  /// g(m) = 1 + sum_k theta_k K_k(m), m = 0..d.
  std::vector<double> margins;
  /// First m attaining the smallest margin.
  int worst_m = 0;

  double worst_margin() const { return margins.at(static_cast<std::size_t>(worst_m)); }
};

inline ConstraintReport admissibility_check(const ThetaVector& t) {
  ConstraintReport report;
  report.margins = constraint_margins(t);
  const auto worst = std::min_element(report.margins.begin(), report.margins.end());
  report.worst_m = static_cast<int>(worst - report.margins.begin());
  report.admissible = *worst >= -tol::negative_clamp;
  report.boundary = report.admissible && *worst < tol::negative_clamp;
  return report;
}

/// Literal check of all 2^d sign constraints
///   1 + sum_k theta_k e_k(eps) >= 0,  eps in {-1, 1}^d,
/// where e_k is the k-th elementary symmetric polynomial. The sign vectors
/// are visited in Gray-code order so each step updates prod (1 + eps_j x)
/// by one exact polynomial division and multiplication (integer
/// coefficients, exact in double for d <= 20).
inline bool full_constraint_check(const ThetaVector& t) {
  const int d = t.d();
  if (d > kMaxOracleDimension) {
    throw capability_error("full sign enumeration limited to d <= " +
                           std::to_string(kMaxOracleDimension));
  }
  std::vector<double> e = binomial_row(d);  // all eps_j = +1
  std::vector<int> eps(static_cast<std::size_t>(d), 1);
  auto satisfied = [&] {
    double s = 1.0;
    for (int k = 2; k <= d; ++k) s += t.at(k) * e[static_cast<std::size_t>(k)];
    return s >= -tol::negative_clamp;
  };
  if (!satisfied()) return false;
  const std::uint64_t total = std::uint64_t{1} << d;
  for (std::uint64_t step = 1; step < total; ++step) {
    const int j = std::countr_zero(step);
    const double from = eps[static_cast<std::size_t>(j)];
    // Divide by (1 + from x), then multiply by (1 - from x).
    for (int k = 1; k <= d; ++k) {
      e[static_cast<std::size_t>(k)] -= from * e[static_cast<std::size_t>(k - 1)];
    }
    for (int k = d; k >= 1; --k) {
      e[static_cast<std::size_t>(k)] -= from * e[static_cast<std::size_t>(k - 1)];
    }
    eps[static_cast<std::size_t>(j)] = -eps[static_cast<std::size_t>(j)];
    if (!satisfied()) return false;
  }
  return true;
}

/// Vertex of N_d: two-point pmf on j1 < d/2 < j2, or (d even) the one-point
/// pmf at d/2, reported with j1 = j2 = d/2.
struct ExtremePoint {
  int j1;
  int j2;
  bool center;
  NdPmf pmf;
  ThetaVector theta;
};

inline std::size_t extreme_point_count(int d) {
  detail::require_dimension(d);
  const auto n = static_cast<std::size_t>(d);
  return (d % 2 == 1) ? (n + 1) * (n + 1) / 4 : n * n / 4 + 1;
}

inline NdPmf two_point_pmf(int d, int j1, int j2) {
  detail::require_dimension(d);
  const double half = 0.5 * d;
  if (!(j1 >= 0 && j1 < half && j2 > half && j2 <= d)) {
    throw invalid_input("two-point vertex needs 0 <= j1 < d/2 < j2 <= d");
  }
  std::vector<double> p(static_cast<std::size_t>(d + 1), 0.0);
  p[static_cast<std::size_t>(j1)] = (j2 - half) / (j2 - j1);
  p[static_cast<std::size_t>(j2)] = (half - j1) / (j2 - j1);
  return NdPmf(d, std::move(p));
}

/// Lexicographic in (j1, j2), center last.
inline std::vector<ExtremePoint> enumerate_extreme_points(int d) {
  detail::require_dimension(d);
  const int j1_max = (d % 2 == 1) ? (d - 1) / 2 : d / 2 - 1;
  const int j2_min = (d % 2 == 1) ? (d + 1) / 2 : d / 2 + 1;
  std::vector<ExtremePoint> points;
  points.reserve(extreme_point_count(d));
  for (int j1 = 0; j1 <= j1_max; ++j1) {
    for (int j2 = j2_min; j2 <= d; ++j2) {
      NdPmf pmf = two_point_pmf(d, j1, j2);
      ThetaVector theta = theta_from_nd_pmf(pmf);
      points.push_back({j1, j2, false, std::move(pmf), std::move(theta)});
    }
  }
  if (d % 2 == 0) {
    std::vector<double> p(static_cast<std::size_t>(d + 1), 0.0);
    p[static_cast<std::size_t>(d / 2)] = 1.0;
    NdPmf pmf(d, std::move(p));
    ThetaVector theta = theta_from_nd_pmf(pmf);
    points.push_back({d / 2, d / 2, true, std::move(pmf), std::move(theta)});
  }
  return points;
}

struct ConvexDecomposition {
  /// One weight per vertex of enumerate_extreme_points(d), same order.
  std::vector<double> weights;
  /// Max-norm reconstruction error of the pmf.
  double residual = 0.0;
};

namespace detail {

// Lawson-Hanson active-set solution of min ||E u - f|| subject to u >= 0.
inline Eigen::VectorXd nnls(const Eigen::MatrixXd& e, const Eigen::VectorXd& f) {
  const Eigen::Index n = e.cols();
  Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
  std::vector<bool> passive(static_cast<std::size_t>(n), false);
  const double tol = 1e-14 * std::max(1.0, e.lpNorm<Eigen::Infinity>()) * static_cast<double>(n);
  const int max_outer = 3 * static_cast<int>(n) + 30;

  const auto solve_passive = [&](Eigen::VectorXd& z) {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (passive[static_cast<std::size_t>(j)]) idx.push_back(j);
    }
    Eigen::MatrixXd ep(e.rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t c = 0; c < idx.size(); ++c) ep.col(static_cast<Eigen::Index>(c)) = e.col(idx[c]);
    const Eigen::VectorXd zp = ep.colPivHouseholderQr().solve(f);
    z.setZero(n);
    for (std::size_t c = 0; c < idx.size(); ++c) z(idx[c]) = zp(static_cast<Eigen::Index>(c));
  };

  for (int outer = 0; outer < max_outer; ++outer) {
    const Eigen::VectorXd w = e.transpose() * (f - e * u);
    Eigen::Index t = -1;
    double best = tol;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!passive[static_cast<std::size_t>(j)] && w(j) > best) {
        best = w(j);
        t = j;
      }
    }
    if (t < 0) return u;
    passive[static_cast<std::size_t>(t)] = true;
    Eigen::VectorXd z;
    for (int inner = 0; inner <= static_cast<int>(n); ++inner) {
      solve_passive(z);
      double alpha = 2.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[static_cast<std::size_t>(j)] && z(j) <= 0.0) alpha = std::min(alpha, u(j) / (u(j) - z(j)));
      }
      if (alpha > 1.0) break;
      u += alpha * (z - u);
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[static_cast<std::size_t>(j)] && u(j) <= tol) {
          passive[static_cast<std::size_t>(j)] = false;
          u(j) = 0.0;
        }
      }
    }
    u = z;
  }
  throw numeric_error("nnls: active-set iteration did not terminate");
}

}  // namespace detail

/// Minimum-Euclidean-norm convex weights over the vertices reproducing `p`.
///
/// Solves  min ||lambda||^2  s.t.  A lambda = p, 1'lambda = 1, lambda >= 0
/// as a least-distance program through NNLS, then re-solves the equality
/// system on the support found. The objective is strictly convex, so the
/// answer is unique even though convex decompositions in general are not.
inline ConvexDecomposition decompose(const NdPmf& p) {
  const int d = p.d();
  const std::vector<ExtremePoint> points = enumerate_extreme_points(d);
  const Eigen::Index n = static_cast<Eigen::Index>(points.size());
  const Eigen::Index rows = d + 2;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(rows, n);
  Eigen::VectorXd target(rows);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (int k = 0; k <= d; ++k) a(k, j) = points[static_cast<std::size_t>(j)].pmf.at(k);
    a(d + 1, j) = 1.0;
  }
  for (int k = 0; k <= d; ++k) target(k) = p.at(k);
  target(d + 1) = 1.0;

  // Least distance: min ||x|| s.t. G x >= h, with G = [A; -A; I], h = [b; -b; 0].
  // Its solution is x = -r_(1..n) / r_(n+1), r = E u - f, where u solves the
  // NNLS problem with E = [G'; h'] and f = e_(n+1).
  const Eigen::Index m = 2 * rows + n;
  Eigen::MatrixXd e = Eigen::MatrixXd::Zero(n + 1, m);
  e.block(0, 0, n, rows) = a.transpose();
  e.block(0, rows, n, rows) = -a.transpose();
  e.block(0, 2 * rows, n, n) = Eigen::MatrixXd::Identity(n, n);
  e.block(n, 0, 1, rows) = target.transpose();
  e.block(n, rows, 1, rows) = -target.transpose();
  Eigen::VectorXd f = Eigen::VectorXd::Zero(n + 1);
  f(n) = 1.0;
  const Eigen::VectorXd r = e * detail::nnls(e, f) - f;
  if (!(std::abs(r(n)) > 1e-14)) throw numeric_error("decompose: least-distance problem reported infeasible");
  Eigen::VectorXd lambda = -r.head(n) / r(n);

  // Polish: the optimum is the min-norm solution of A_S x_S = b on its support S.
  std::vector<Eigen::Index> support;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (lambda(j) > 1e-12) support.push_back(j);
  }
  Eigen::MatrixXd as(rows, static_cast<Eigen::Index>(support.size()));
  for (std::size_t c = 0; c < support.size(); ++c) as.col(static_cast<Eigen::Index>(c)) = a.col(support[c]);
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(as);
  cod.setThreshold(1e-12);
  const Eigen::VectorXd xs = cod.solve(target);
  const double polished_residual = (as * xs - target).lpNorm<Eigen::Infinity>();
  const double raw_residual = (a * lambda - target).lpNorm<Eigen::Infinity>();
  if (xs.minCoeff() >= -1e-13 && polished_residual <= raw_residual) {
    lambda.setZero();
    for (std::size_t c = 0; c < support.size(); ++c) lambda(support[c]) = xs(static_cast<Eigen::Index>(c));
  }

  ConvexDecomposition out;
  out.weights.resize(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) {
    out.weights[static_cast<std::size_t>(j)] = std::max(lambda(j), 0.0);
  }
  const Eigen::VectorXd recon = a.topRows(d + 1) * Eigen::Map<Eigen::VectorXd>(out.weights.data(), n);
  out.residual = (recon - target.head(d + 1)).lpNorm<Eigen::Infinity>();
  if (out.residual > tol::round_trip) {
    throw numeric_error("decompose: reconstruction residual " + std::to_string(out.residual));
  }
  return out;
}

/// theta = sum_j w_j theta_j.
inline ThetaVector convex_combination_theta(std::span<const double> weights,
                                            std::span<const ExtremePoint> points) {
  if (weights.size() != points.size() || points.empty()) {
    throw invalid_input("need one weight per extreme point");
  }
  const int d = points.front().theta.d();
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= -tol::negative_clamp)) throw invalid_input("convex weights must be nonnegative");
    total += w;
  }
  if (std::abs(total - 1.0) > tol::round_trip) {
    throw invalid_input("convex weights must sum to 1 (sum = " + std::to_string(total) + ")");
  }
  std::vector<double> theta(static_cast<std::size_t>(d - 1), 0.0);
  for (std::size_t j = 0; j < points.size(); ++j) {
    if (points[j].theta.d() != d) throw invalid_input("extreme points differ in dimension");
    for (int k = 2; k <= d; ++k) theta[static_cast<std::size_t>(k - 2)] += weights[j] * points[j].theta.at(k);
  }
  return ThetaVector(d, std::move(theta));
}

}  // namespace efgm
