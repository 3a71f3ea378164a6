#include "mdm/log_math.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace mdm {

namespace {

constexpr int kFactorialTableSize = 171;

const std::array<double, kFactorialTableSize>& factorial_table() {
  static const auto table = [] {
    std::array<double, kFactorialTableSize> t{};
    t[0] = 0.0;
    // long double accumulation keeps each entry within an ulp.
    long double acc = 0.0L;
    for (int n = 1; n < kFactorialTableSize; ++n) {
      acc += std::log(static_cast<long double>(n));
      t[n] = static_cast<double>(acc);
    }
    return t;
  }();
  return table;
}

constexpr int kRisingDirectLimit = 64;

}  // namespace

double log_gamma(double x) {
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

double log_factorial(int n) {
  if (n < 0) return std::numeric_limits<double>::quiet_NaN();
  if (n < kFactorialTableSize) return factorial_table()[static_cast<std::size_t>(n)];
  return log_gamma(static_cast<double>(n) + 1.0);
}

double log_rising(double x, int n) {
  if (n <= 0) return 0.0;
  if (n > kRisingDirectLimit) return log_gamma(x + n) - log_gamma(x);
  // Multiply in blocks to limit the number of log calls while staying far
  // from overflow.
  double acc = 0.0;
  double block = 1.0;
  for (int k = 0; k < n; ++k) {
    block *= x + k;
    if (block > 1e280 || block < 1e-280) {
      acc += std::log(block);
      block = 1.0;
    }
  }
  return acc + std::log(block);
}

double log_binomial(int n, int k) {
  if (k < 0 || k > n || n < 0) return -std::numeric_limits<double>::infinity();
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

double log_multinomial(std::span<const int> counts) {
  int total = 0;
  double denom = 0.0;
  for (int c : counts) {
    total += c;
    denom += log_factorial(c);
  }
  return log_factorial(total) - denom;
}

double xlogy(int k, double p) {
  if (k == 0) return 0.0;
  return k * std::log(p);
}

double log_sum_exp(std::span<const double> values) {
  if (values.empty()) return -std::numeric_limits<double>::infinity();
  const double peak = *std::max_element(values.begin(), values.end());
  if (std::isinf(peak)) return peak;
  CompensatedSum sum;
  for (double v : values) sum.add(std::exp(v - peak));
  return peak + std::log(sum.value());
}

}  // namespace mdm
