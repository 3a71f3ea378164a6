#pragma once

#include <cmath>
#include <limits>
#include <span>

namespace mdm {

/// A probability carried in the natural-log domain.
///
/// Impossible events are represented by negative infinity rather than an
/// error, so products over chains of conditionals degrade gracefully.
class LogProb {
 public:
  constexpr LogProb() = default;
  constexpr explicit LogProb(double log_value) : log_(log_value) {}

  static constexpr LogProb certain() { return LogProb(0.0); }
  static constexpr LogProb impossible() {
    return LogProb(-std::numeric_limits<double>::infinity());
  }

  constexpr double log() const { return log_; }
  double prob() const { return std::exp(log_); }
  bool is_impossible() const { return std::isinf(log_) && log_ < 0.0; }

  // Product and quotient of probabilities.
  friend LogProb operator*(LogProb a, LogProb b) { return LogProb(a.log_ + b.log_); }
  friend LogProb operator/(LogProb a, LogProb b) { return LogProb(a.log_ - b.log_); }
  LogProb& operator*=(LogProb other) {
    log_ += other.log_;
    return *this;
  }

 private:
  double log_ = 0.0;
};

/// Thread-safe log Gamma(x) for x > 0.
double log_gamma(double x);

/// log(n!) from a precomputed table for n <= 170 (exact to double
/// rounding), falling back to log_gamma(n + 1) above.
double log_factorial(int n);

/// log of the rising factorial x (x+1) ... (x+n-1) = Gamma(x+n)/Gamma(x).
/// Summed term by term for small n; empty product is 0.
double log_rising(double x, int n);

/// log of n! / (k! (n-k)!); -inf when k is outside [0, n].
double log_binomial(int n, int k);

/// log of the multinomial coefficient n! / prod(k_j!) with n = sum(k).
double log_multinomial(std::span<const int> counts);

/// k * log(p), with the convention 0 * log(0) = 0.
double xlogy(int k, double p);

/// Numerically stable log(sum(exp(v))).
double log_sum_exp(std::span<const double> values);

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  void add(const CompensatedSum& other) {
    add(other.sum_);
    add(other.carry_);
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

}  // namespace mdm
