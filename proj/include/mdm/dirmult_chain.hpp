#pragma once

#include <span>
#include <vector>

#include "mdm/core_model.hpp"
#include "mdm/log_math.hpp"

namespace mdm {

/// Allele counts of a single profile with their cumulative sums
/// S_a = n_1 + ... + n_a.
class ProfileCounts {
 public:
  explicit ProfileCounts(std::vector<int> counts);

  std::span<const int> counts() const { return counts_; }
  std::size_t categories() const { return counts_.size(); }
  int operator[](std::size_t a) const { return counts_[a]; }
  int total() const { return total_; }
  /// S_a for a = 0..A (S_0 = 0, S_A = total).
  int cumulative(std::size_t a) const { return cum_[a]; }

 private:
  std::vector<int> counts_;
  std::vector<int> cum_;
  int total_ = 0;
};

/// Dirichlet-multinomial log pmf
///   n! Gamma(alpha.) / Gamma(n + alpha.) prod_b Gamma(n_b + alpha_b) / (n_b! Gamma(alpha_b)).
/// Requires theta > 0; the multinomial limit goes through binomial_chain_log_pmf.
LogProb dm_log_pmf(const ProfileCounts& profile, const DispersionModel& model);

/// Joint law of the first a cells after collapsing cells a+1..A into one
/// cell with parameter alpha_{.a+1}. prefix.size() must be < A.
LogProb dm_collapsed_log_pmf(std::span<const int> prefix, int n_total,
                             const DispersionModel& model);

/// P(n_a | S_{a-1}): beta-binomial on n_total - s_prev trials with shape
/// parameters (alpha_a, alpha_tail). Out-of-range n_a throws.
LogProb beta_binomial_step(int n_a, int s_prev, double alpha_a, double alpha_tail, int n_total);

/// The profile pmf as a left-to-right product of beta-binomial steps,
/// a = 1..A-1; the last cell is implied.
LogProb chain_log_pmf(const ProfileCounts& profile, const DispersionModel& model);

/// Multinomial pmf as a product of binomial steps bin(n - S_{a-1}, Q_a)
/// with Q_a = q_a / sum_{b >= a} q_b. Impossible events give log(0).
LogProb binomial_chain_log_pmf(const ProfileCounts& profile, std::span<const double> probs);
LogProb binomial_chain_log_pmf(const ProfileCounts& profile, const AlleleFrequencies& freqs);

/// Scaled chain probabilities Q_a = q_a / sum_{b >= a} q_b (Q_A = 1).
std::vector<double> scaled_chain_probs(std::span<const double> probs);

/// Suffix sums alpha_{.a} = sum_{b >= a} alpha_b, with a trailing 0.
std::vector<double> alpha_tails(std::span<const double> alpha);

}  // namespace mdm
