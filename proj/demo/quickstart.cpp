// Builds a beta-mixture model in dimension 5, evaluates it, samples from it
// and fits the sample back.

#include <cstdio>
#include <vector>

#include "efgm/efgm.hpp"

int main() {
  const int d = 5;
  const efgm::MixtureModel model{efgm::BetaMixer{1.0}, d};
  const efgm::NdPmf pmf = efgm::canonicalize(model);
  const efgm::ThetaVector theta = efgm::theta_from_nd_pmf(pmf);

  std::printf("theta:");
  for (double t : theta.values()) std::printf(" %.6f", t);
  std::printf("\n");

  const std::vector<double> u{0.3, 0.5, 0.7, 0.2, 0.9};
  std::printf("C(u) = %.6f  c(u) = %.6f\n", efgm::copula_cdf(pmf, u), efgm::copula_density(pmf, u));

  const efgm::SampleBatch batch = efgm::sample(pmf, 20'000, 42);
  std::printf("empirical theta_2 = %.4f\n", efgm::empirical_theta(batch, 2));

  const efgm::FitResult fit = efgm::em_fit(batch.rows, d);
  std::printf("EM: %d iterations, converged=%d, theta_2 = %.4f, theta_4 = %.4f\n", fit.iterations,
              fit.converged ? 1 : 0, fit.theta.at(2), fit.theta.at(4));
  return 0;
}
