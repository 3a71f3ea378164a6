#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "mdm/core_model.hpp"
#include "mdm/mdm_core.hpp"

namespace mdm {

/// Exact sequential sampler for MDM tables.
///
/// Column by column, the pooled count n_.a is drawn from its beta-binomial
/// step law (a Polya urn over the remaining pooled alleles) and then split
/// across profiles by the multivariate hypergeometric law on their
/// remaining capacities. theta == 0 draws each row as an independent
/// multinomial through the binomial chain.
///
/// Each instance owns its generator; use one sampler per thread.
class SequentialSampler {
 public:
  /// Generator identifier recorded alongside sampled output.
  static constexpr std::string_view kRngAlgorithm = "mt19937_64";

  SequentialSampler(MdmParams params, std::uint64_t seed);

  CountTable draw();
  const MdmParams& params() const { return params_; }

 private:
  /// Uniform on [0, 1) from the top 53 bits of one generator output.
  double uniform();
  /// Inverse-cdf draw from unnormalized log weights.
  int draw_index(std::span<const double> log_weights);
  int draw_beta_binomial(int trials, double alpha_a, double alpha_tail);
  int draw_binomial(int trials, double success, double failure);
  int draw_hypergeometric(int successes, int population, int draws);

  MdmParams params_;
  std::mt19937_64 rng_;
  std::vector<double> tails_;
  std::vector<double> scratch_;
};

/// One table from a freshly seeded sampler.
CountTable sequential_sample(const MdmParams& params, std::uint64_t rng_seed);

}  // namespace mdm
