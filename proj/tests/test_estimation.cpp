#include <gtest/gtest.h>

#include <numeric>

#include "oracles.hpp"

using namespace efgm;

namespace {

Matrix single_row(std::vector<double> u) {
  Matrix m(1, u.size());
  for (std::size_t j = 0; j < u.size(); ++j) m(0, j) = u[j];
  return m;
}

void expect_fit_invariants(const FitResult& fit, int d) {
  EXPECT_TRUE(loglik_monotone(fit.loglik_trace));
  EXPECT_EQ(fit.loglik_trace.size(), static_cast<std::size_t>(fit.iterations) + 1);
  double sum = 0.0;
  for (double w : fit.weights) {
    EXPECT_GE(w, 0.0);
    sum += w;
  }
  EXPECT_NEAR(sum, 1.0, 1e-12);
  const auto points = enumerate_extreme_points(d);
  const ThetaVector t = convex_combination_theta(fit.weights, points);
  for (int k = 2; k <= d; ++k) EXPECT_NEAR(fit.theta.at(k), t.at(k), 1e-14);
  EXPECT_TRUE(admissibility_check(fit.theta).admissible);
  for (std::size_t j : fit.active) EXPECT_GT(fit.weights[j], 0.0);
}

}  // namespace

// --- compute_xi -------------------------------------------------------------------

TEST(ComputeXi, CenterRowIsAllOnes) {
  for (int d = 2; d <= 12; ++d) {
    const XiMatrix xi = compute_xi(single_row(std::vector<double>(static_cast<std::size_t>(d), 0.5)), d);
    ASSERT_EQ(xi.xi.cols(), extreme_point_count(d));
    for (double x : xi.xi.data()) EXPECT_NEAR(x, 1.0, 1e-12);
  }
}

TEST(ComputeXi, MatchesEnumerationPerVertex) {
  const std::vector<double> u{0.1, 0.2, 0.3};
  const XiMatrix xi = compute_xi(single_row(u), 3);
  const auto points = enumerate_extreme_points(3);
  for (std::size_t j = 0; j < points.size(); ++j) {
    EXPECT_NEAR(xi.xi(0, j) * std::exp(xi.log_offset[0]), oracle::brute_density(points[j].pmf, u), 1e-12);
  }
}

TEST(ComputeXi, RandomRowsMatchEnumeration) {
  std::mt19937_64 gen(1);
  for (int d = 2; d <= 9; ++d) {
    Matrix data(30, static_cast<std::size_t>(d));
    for (auto& x : data.data()) x = std::uniform_real_distribution<double>(1e-6, 1 - 1e-6)(gen);
    const XiMatrix xi = compute_xi(data, d, 2);
    const auto points = enumerate_extreme_points(d);
    for (std::size_t m = 0; m < data.rows(); ++m) {
      std::vector<double> u(data.row(m).begin(), data.row(m).end());
      for (std::size_t j = 0; j < points.size(); ++j) {
        const double want = oracle::brute_density(points[j].pmf, u);
        EXPECT_NEAR(xi.xi(m, j) * std::exp(xi.log_offset[m]), want, 1e-10 * std::max(1.0, want));
      }
    }
  }
}

TEST(ComputeXi, BivariateUpperVertex) {
  const XiMatrix xi = compute_xi(single_row({0.9, 0.9}), 2);
  const auto points = enumerate_extreme_points(2);
  for (std::size_t j = 0; j < points.size(); ++j) {
    if (points[j].theta.at(2) == 1.0) {
      EXPECT_NEAR(xi.xi(0, j), 1.64, 1e-14);
    }
  }
}

TEST(ComputeXi, RejectsBoundaryAndShapeErrors) {
  try {
    compute_xi(single_row({0.5, 1.0}), 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::invalid_input);
  }
  EXPECT_THROW(compute_xi(single_row({0.5, 0.5, 0.5}), 2), Error);
}

// --- em_fit -----------------------------------------------------------------------

TEST(EmFit, RecoversSingleVertex) {
  const SampleBatch b = sample(ThetaVector(3, {0, 1}), 10000, 101);
  const FitResult fit = em_fit(b.rows, 3);
  EXPECT_GE(fit.theta.at(3), 0.9);
  expect_fit_invariants(fit, 3);
}

TEST(EmFit, IndependenceData) {
  const SampleBatch b = sample(NdPmf::independence(3), 10000, 102);
  const FitResult fit = em_fit(b.rows, 3);
  EXPECT_NEAR(fit.theta.at(2), 0.0, 0.05);
  expect_fit_invariants(fit, 3);
  // The theta_3 score has variance 1/27, so the estimate's standard error is
  // sqrt(27 / n): 0.05 is about one standard error at n = 10000 and four at
  // n = 200000.
  const SampleBatch big = sample(NdPmf::independence(3), 200000, 112);
  const FitResult wide = em_fit(big.rows, 3);
  EXPECT_NEAR(wide.theta.at(2), 0.0, 0.05);
  EXPECT_NEAR(wide.theta.at(3), 0.0, 0.05);
}

TEST(EmFit, StudyParameterDimensionTen) {
  const SampleBatch b = sample(study_theta(), 10000, 103);
  const FitResult fit = em_fit(b.rows, 10);
  EXPECT_NEAR(fit.theta.at(2), 0.0667, 0.02);
  expect_fit_invariants(fit, 10);
}

TEST(EmFit, MonotoneOnAssortedData) {
  std::mt19937_64 gen(104);
  for (int d = 2; d <= 7; ++d) {
    const NdPmf p = oracle::random_nd_pmf(d, gen);
    const SampleBatch b = sample(p, 2000, 200 + static_cast<std::uint64_t>(d));
    const FitResult fit = em_fit(b.rows, d);
    expect_fit_invariants(fit, d);
  }
}

TEST(EmFit, StationaryAtConvergence) {
  const SampleBatch b = sample(MixtureModel{BetaMixer{1.0}, 4}, 5000, 105);
  EmOptions opt;
  opt.tol = 1e-14;
  opt.max_iter = 200000;
  const XiMatrix xi = compute_xi(b.rows, 4);
  const FitResult fit = em_fit(xi, 4, opt);
  ASSERT_TRUE(fit.converged);
  const std::vector<double> ratio = em_stationarity(xi, fit.weights);
  for (std::size_t t = 0; t < fit.weights.size(); ++t) {
    if (fit.weights[t] > 1e-3) {
      EXPECT_NEAR(ratio[t], 1.0, 1e-6) << "vertex " << t;
    } else {
      EXPECT_LE(ratio[t], 1.0 + 1e-6) << "vertex " << t;
    }
  }
}

TEST(EmFit, IterationCapReportsNotConverged) {
  const SampleBatch b = sample(study_theta(), 500, 106);
  EmOptions opt;
  opt.max_iter = 3;
  const FitResult fit = em_fit(b.rows, 10, opt);
  EXPECT_FALSE(fit.converged);
  EXPECT_EQ(fit.iterations, 3);
  EXPECT_EQ(fit.loglik_trace.size(), 4U);
  expect_fit_invariants(fit, 10);
}

TEST(EmFit, WarnsWithFewObservationsAndValidatesOptions) {
  const SampleBatch b = sample(NdPmf::independence(6), 5, 107);
  const FitResult fit = em_fit(b.rows, 6);
  EXPECT_FALSE(fit.warnings.empty());
  EmOptions bad;
  bad.tol = 0.0;
  EXPECT_THROW(em_fit(b.rows, 6, bad), Error);
}

TEST(EmFit, DeterministicAndThreadIndependent) {
  const SampleBatch b = sample(study_theta(), 3000, 108);
  EmOptions one;
  EmOptions three;
  three.threads = 3;
  const FitResult a = em_fit(b.rows, 10, one);
  const FitResult c = em_fit(b.rows, 10, three);
  EXPECT_EQ(a.theta.values(), c.theta.values());
  EXPECT_EQ(a.loglik_trace, c.loglik_trace);
}

// --- pseudo-observations ---------------------------------------------------------

TEST(PseudoObservations, RankTransform) {
  Matrix raw(3, 1);
  raw(0, 0) = 3.2;
  raw(1, 0) = 1.1;
  raw(2, 0) = 5.0;
  const Matrix u = pseudo_observations(raw);
  EXPECT_DOUBLE_EQ(u(0, 0), 0.5);
  EXPECT_DOUBLE_EQ(u(1, 0), 0.25);
  EXPECT_DOUBLE_EQ(u(2, 0), 0.75);
}

TEST(PseudoObservations, TiesGetAverageRank) {
  Matrix raw(4, 1);
  raw(0, 0) = 1.0;
  raw(1, 0) = 2.0;
  raw(2, 0) = 2.0;
  raw(3, 0) = 3.0;
  const Matrix u = pseudo_observations(raw);
  EXPECT_DOUBLE_EQ(u(1, 0), 0.5);
  EXPECT_DOUBLE_EQ(u(2, 0), 0.5);
}

TEST(PseudoObservations, ConstantColumnRejected) {
  Matrix raw(3, 2, 1.0);
  raw(0, 0) = 0.0;
  EXPECT_THROW(pseudo_observations(raw), Error);
}

TEST(PseudoObservations, UniformColumnHasUnitRankCorrelation) {
  const SampleBatch b = sample(NdPmf::independence(2), 1000, 109);
  const Matrix u = pseudo_observations(b.rows);
  // Ranks preserved: Spearman of original against output is exactly 1.
  std::vector<std::size_t> order_in(1000);
  std::vector<std::size_t> order_out(1000);
  std::iota(order_in.begin(), order_in.end(), 0);
  std::iota(order_out.begin(), order_out.end(), 0);
  std::sort(order_in.begin(), order_in.end(), [&](auto a, auto c) { return b.rows(a, 0) < b.rows(c, 0); });
  std::sort(order_out.begin(), order_out.end(), [&](auto a, auto c) { return u(a, 0) < u(c, 0); });
  EXPECT_EQ(order_in, order_out);
  for (double x : u.data()) {
    EXPECT_GT(x, 0.0);
    EXPECT_LT(x, 1.0);
  }
}

TEST(PseudoObservations, FitIsInvariantToMonotoneMargins) {
  const SampleBatch b = sample(MixtureModel{BetaMixer{1.0}, 4}, 10000, 110);
  Matrix raw = b.rows;
  for (std::size_t r = 0; r < raw.rows(); ++r) {
    raw(r, 0) = std::log(raw(r, 0));
    raw(r, 1) = std::exp(3 * raw(r, 1));
    raw(r, 2) = -1.0 / raw(r, 2);
    raw(r, 3) = std::pow(raw(r, 3), 5.0);
  }
  const FitResult direct = em_fit(b.rows, 4);
  const FitResult ranked = em_fit(pseudo_observations(raw), 4);
  EXPECT_LE(std::abs(direct.theta.at(2) - ranked.theta.at(2)), 0.01);
}

// --- simulation study ----------------------------------------------------------

TEST(Quantile, LinearInterpolation) {
  const std::vector<double> x{1, 2, 3, 4};
  EXPECT_DOUBLE_EQ(quantile_sorted(x, 0.25), 1.75);
  EXPECT_DOUBLE_EQ(quantile_sorted(x, 0.5), 2.5);
  EXPECT_DOUBLE_EQ(quantile_sorted(x, 1.0), 4.0);
  EXPECT_THROW(quantile_sorted({}, 0.5), Error);
}

TEST(SimulationStudy, SingleReplicationEqualsOneFit) {
  StudyConfig cfg;
  cfg.theta = ThetaVector(4, {0.2, 0.05, 0.1});
  cfg.n = 3000;
  cfg.reps = 1;
  cfg.seed = 55;
  const StudyResult r = simulation_study(cfg);
  const SampleBatch b = sample(cfg.theta, cfg.n, substream_seed(cfg.seed, 0));
  const FitResult fit = em_fit(b.rows, 4);
  EXPECT_EQ(r.estimates.at(0).values(), fit.theta.values());
  ASSERT_EQ(r.summary.size(), 7U);
  EXPECT_EQ(r.summary[0].label, "Real parameter");
  EXPECT_EQ(r.summary[2].values, fit.theta.values());  // median of one value
  EXPECT_EQ(r.summary[6].values, std::vector<double>(3, 0.0));
}

TEST(SimulationStudy, DeterministicSummary) {
  StudyConfig cfg;
  cfg.theta = ThetaVector(4, {-0.1, 0.0, 0.3});
  cfg.n = 2000;
  cfg.reps = 4;
  cfg.seed = 56;
  const StudyResult a = simulation_study(cfg);
  const StudyResult b = simulation_study(cfg);
  for (std::size_t i = 0; i < a.summary.size(); ++i) EXPECT_EQ(a.summary[i].values, b.summary[i].values);
  for (bool m : a.monotone) EXPECT_TRUE(m);
  for (std::size_t c = 0; c < 3; ++c) {
    EXPECT_LE(a.summary[1].values[c], a.summary[2].values[c]);
    EXPECT_LE(a.summary[2].values[c], a.summary[4].values[c]);
    EXPECT_NEAR(a.summary[5].values[c], a.summary[4].values[c] - a.summary[1].values[c], 1e-15);
  }
}
