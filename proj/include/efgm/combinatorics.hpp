#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace efgm {

namespace detail {

inline constexpr int kExactBinomialMax = 60;

// Pascal's triangle in 64-bit integers up to row 60, converted to double.
inline const std::vector<std::vector<double>>& pascal_table() {
  static const std::vector<std::vector<double>> table = [] {
    std::vector<std::vector<std::uint64_t>> exact(kExactBinomialMax + 1);
    std::vector<std::vector<double>> out(kExactBinomialMax + 1);
    for (int n = 0; n <= kExactBinomialMax; ++n) {
      exact[static_cast<std::size_t>(n)].assign(static_cast<std::size_t>(n) + 1, 1);
      for (int k = 1; k < n; ++k) {
        exact[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)] =
            exact[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(k - 1)] +
            exact[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(k)];
      }
      out[static_cast<std::size_t>(n)].assign(exact[static_cast<std::size_t>(n)].begin(),
                                              exact[static_cast<std::size_t>(n)].end());
    }
    return out;
  }();
  return table;
}

}  // namespace detail

// Binomial coefficient as a double. Exact integers converted once for
// n <= 60, multiplicative in floating point beyond that.
inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  if (n <= detail::kExactBinomialMax) {
    return detail::pascal_table()[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
  }
  if (k > n - k) k = n - k;
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

inline double log_binomial(int n, int k) {
  if (k < 0 || k > n) return -INFINITY;
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// Row n of Pascal's triangle.
inline std::vector<double> binomial_row(int n) {
  std::vector<double> row(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) row[static_cast<std::size_t>(k)] = binomial(n, k);
  return row;
}

// Krawtchouk-type sign sum: sum over i of (-1)^i C(m, i) C(d - m, k - i).
// It is the k-th elementary symmetric polynomial of a sign vector with m
// entries equal to -1 and d - m entries equal to +1.
inline double krawtchouk_sum(int d, int k, int m) {
  double s = 0.0;
  for (int i = 0; i <= k; ++i) {
    const double term = binomial(m, i) * binomial(d - m, k - i);
    s += (i % 2 == 0) ? term : -term;
  }
  return s;
}

}  // namespace efgm
