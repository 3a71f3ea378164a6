#pragma once

#include <span>
#include <vector>

#include "mdm/core_model.hpp"
#include "mdm/log_math.hpp"

namespace mdm {

/// MDM(n_*., alpha): I count vectors with fixed row sums sharing a single
/// Dirichlet draw.
struct MdmParams {
  std::vector<int> row_sums;
  DispersionModel model;

  MdmParams(std::vector<int> rows, DispersionModel m);
  std::size_t profiles() const { return row_sums.size(); }
  std::size_t categories() const { return model.category_count(); }
  int total() const;
};

/// log P(n) = log{prod_i C(n_i.; n_i)} + log Gamma(alpha.) - log Gamma(n.. + alpha.)
///          + sum_a [log Gamma(n_.a + alpha_a) - log Gamma(alpha_a)].
/// In the multinomial limit this is the product of independent multinomials.
LogProb mdm_log_pmf(const CountTable& table, const MdmParams& params);

/// One profile's counts at a chain step.
struct StepCounts {
  int count = 0;       // n_ia
  int prior_cum = 0;   // S_i,a-1
  int capacity = 2;    // n_i.
};

/// P(n_1a, ..., n_Ia | S_1,a-1, ..., S_I,a-1) after integrating out Q_a:
/// per-profile binomial coefficients times a pooled beta-binomial kernel.
/// margin must equal the pooled (count, prior_cum) of per_profile.
LogProb joint_step_conditional(const MarginState& margin, double alpha_a, double alpha_tail,
                               std::span<const StepCounts> per_profile);

/// mdm_log_pmf evaluated as a product of joint step conditionals, a = 1..A-1.
LogProb mdm_chain_log_pmf(const CountTable& table, const MdmParams& params);

/// Law of n_*B: the cells outside B collapse into one trailing class with
/// alpha_C = sum of their alphas.
MdmParams marginal_over_alleles(const MdmParams& params, const SubsetSpec& keep);

/// Law of n_*B given n_*C: row sums reduced by the observed C totals,
/// parameters alpha_B. observed_c holds the C columns in ascending order.
MdmParams conditional_over_alleles(const MdmParams& params, const SubsetSpec& observed,
                                   const CountTable& observed_c);

/// Law of the profiles in J: same alpha, restricted row sums.
MdmParams marginal_over_profiles(const MdmParams& params, const SubsetSpec& keep);

/// Law of the remaining profiles given observed rows K (posterior update
/// alpha + column sums of K).
MdmParams conditional_over_profiles(const MdmParams& params, const SubsetSpec& observed,
                                    const CountTable& observed_rows);

/// Multivariate hypergeometric law of a table given both margins:
///   prod_i n_i.! prod_a n_.a! / (n..! prod_ia n_ia!).
LogProb hypergeometric_log_pmf(const CountTable& table);

struct SufficientStatistics {
  std::vector<int> row_sums;
  std::vector<int> col_sums;
  int total = 0;
};

SufficientStatistics sufficient_statistics(const CountTable& table);

/// Columns of table selected by subset, in subset order.
CountTable select_columns(const CountTable& table, std::span<const std::size_t> cols);
/// Columns in keep followed by one column holding the sum of the rest.
CountTable collapse_columns(const CountTable& table, const SubsetSpec& keep);
CountTable select_rows(const CountTable& table, std::span<const std::size_t> rows);

}  // namespace mdm
