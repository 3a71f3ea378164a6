#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mdm/core_model.hpp"
#include "mdm/dirmult_chain.hpp"

namespace mdm {

/// Two diploid genotypes (allele count vectors summing to 2).
struct GenotypePair {
  ProfileCounts profile_i;
  ProfileCounts profile_j;

  GenotypePair(std::vector<int> i, std::vector<int> j);
  std::vector<int> pooled() const;
};

/// Pooled allele multiplicities >= 2 in descending order; singletons are
/// abstracted away. Empty for pairs with no repeated allele.
struct MultiplicityClass {
  std::vector<int> multiplicities;

  std::string label() const;  // e.g. "(3)", "(2,2)", "()"
  auto operator<=>(const MultiplicityClass&) const = default;
};

MultiplicityClass multiplicity_class(const GenotypePair& pair);

/// Ratio of the independent-model step probability to the theta-corrected
/// joint step probability at one chain step, for I contributors:
///
///   Q^n (1-Q)^(2I-S-n) / [ B(n + alpha_a, 2I-S-n + alpha_tail) / B(alpha_a, alpha_tail) ]
///
/// with alpha_.a = tail_mass (1-theta)/theta, alpha_a = Q alpha_.a and
/// alpha_tail = (1-Q) alpha_.a. tail_mass is sum_{b>=a} q_b; the default 1
/// treats the step as the first one. Returns exactly 1 at theta == 0.
double woe_step(const MarginState& margin, double scaled_prob, double theta,
                double tail_mass = 1.0);

struct GridState {
  MarginState state;
  /// n_.a <= 1 is forced once S_.a-1 >= 2I-1; such states carry no correlation.
  bool correlation_free = false;
};

/// All feasible (n_.a, S_.a-1) with n + S <= 2I, ordered by n then S.
std::vector<GridState> woe_margin_grid(int contributors = 2);

/// P(n_i) P(n_j) / P(n_i, n_j): independent multinomial genotype
/// probabilities over the theta-corrected joint probability. Profiles may
/// omit the trailing rest-class entry.
double pair_ratio(const GenotypePair& pair, const AlleleFrequencies& freqs, double theta);

/// Same ratio as a product of woe_step over the allele chain, each step
/// using its own Q_a and tail mass.
double pair_ratio_by_woe(const GenotypePair& pair, const AlleleFrequencies& freqs, double theta);

struct WoeCurveRow {
  MarginState state;
  bool correlation_free = false;
  double scaled_prob = 0.0;
  std::vector<double> woe;  // one per theta
};

/// woe_step for every state over a theta grid (rows in state order).
std::vector<WoeCurveRow> woe_curve(const std::vector<GridState>& states, double scaled_prob,
                                   const std::vector<double>& theta_grid);

struct PairRatioCurve {
  MultiplicityClass cls;
  /// Repeated alleles as (allele index, pooled multiplicity), by
  /// multiplicity then index.
  std::vector<std::pair<std::size_t, int>> repeated;
  std::string key;  // class label plus repeated-allele labels
  std::size_t pair_count = 0;
  std::vector<double> ratio;  // one per theta
};

/// One curve per (class, repeated alleles) over all unordered genotype
/// pairs drawn from the listed alleles. Every pair in a group must yield
/// the same ratio; a violation throws.
std::vector<PairRatioCurve> pair_ratio_curves(const AlleleFrequencies& freqs,
                                              const std::vector<double>& theta_grid);

/// Evenly spaced grid start, start+step, ..., stop (inclusive, rounded).
std::vector<double> theta_range(double start, double stop, double step);

}  // namespace mdm
