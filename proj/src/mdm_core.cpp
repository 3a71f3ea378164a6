#include "mdm/mdm_core.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "mdm/dirmult_chain.hpp"

namespace mdm {

namespace {

void require_matching(const CountTable& table, const MdmParams& params) {
  validate_table(table);
  if (table.categories() != params.categories()) {
    throw ValidationError("table has " + std::to_string(table.categories()) +
                          " allele columns, model has " + std::to_string(params.categories()));
  }
  if (table.row_sums() != params.row_sums) {
    for (std::size_t i = 0; i < std::min(table.profiles(), params.profiles()); ++i) {
      if (table.row_sums()[i] != params.row_sums[i]) {
        throw StructuralError("row " + std::to_string(i) + " sums to " +
                                  std::to_string(table.row_sums()[i]) + ", model expects " +
                                  std::to_string(params.row_sums[i]),
                              StructuralError::Axis::kRow, static_cast<std::ptrdiff_t>(i));
      }
    }
    throw StructuralError("table has " + std::to_string(table.profiles()) + " profiles, model has " +
                              std::to_string(params.profiles()),
                          StructuralError::Axis::kTable, -1);
  }
}

double log_row_coefficients(const CountTable& table) {
  double lp = 0.0;
  for (std::size_t i = 0; i < table.profiles(); ++i) lp += log_multinomial(table.row(i));
  return lp;
}

DispersionModel model_over(const DispersionModel& model, std::span<const std::size_t> cats,
                           bool with_collapsed_rest) {
  // Collapse / restrict in whichever parameterization the model carries.
  const bool limit = model.is_multinomial_limit();
  const auto source = limit ? model.probs() : model.alpha();
  std::vector<double> out;
  out.reserve(cats.size() + 1);
  double kept = 0.0;
  for (std::size_t c : cats) {
    out.push_back(source[c]);
    kept += source[c];
  }
  if (with_collapsed_rest) {
    double rest = 0.0;
    for (std::size_t c = 0; c < source.size(); ++c)
      if (std::find(cats.begin(), cats.end(), c) == cats.end()) rest += source[c];
    out.push_back(rest);
  } else if (limit) {
    for (double& q : out) q /= kept;
  }
  return limit ? DispersionModel::multinomial(std::move(out))
               : DispersionModel::from_alpha(std::move(out));
}

}  // namespace

MdmParams::MdmParams(std::vector<int> rows, DispersionModel m)
    : row_sums(std::move(rows)), model(std::move(m)) {
  if (row_sums.empty()) throw ValidationError("at least one profile is required");
  for (std::size_t i = 0; i < row_sums.size(); ++i) {
    if (row_sums[i] < 0) {
      throw ValidationError("row sum " + std::to_string(i) + " is negative");
    }
  }
}

int MdmParams::total() const { return std::accumulate(row_sums.begin(), row_sums.end(), 0); }

LogProb mdm_log_pmf(const CountTable& table, const MdmParams& params) {
  require_matching(table, params);
  const DispersionModel& model = params.model;
  double lp = log_row_coefficients(table);
  if (model.is_multinomial_limit()) {
    const auto q = model.probs();
    for (std::size_t a = 0; a < q.size(); ++a) lp += xlogy(table.col_sums()[a], q[a]);
    return LogProb(lp);
  }
  const auto alpha = model.alpha();
  lp += log_gamma(model.alpha_total()) - log_gamma(table.total() + model.alpha_total());
  for (std::size_t a = 0; a < alpha.size(); ++a) {
    const int n = table.col_sums()[a];
    if (n == 0) continue;
    lp += log_gamma(n + alpha[a]) - log_gamma(alpha[a]);
  }
  return LogProb(lp);
}

LogProb joint_step_conditional(const MarginState& margin, double alpha_a, double alpha_tail,
                               std::span<const StepCounts> per_profile) {
  if (!(alpha_a > 0.0) || !(alpha_tail > 0.0)) {
    throw ParameterDomainError("joint step: shape parameters must be positive");
  }
  if (per_profile.size() != static_cast<std::size_t>(margin.n_contributors)) {
    throw ValidationError("joint step: margin is for " + std::to_string(margin.n_contributors) +
                          " contributors, got " + std::to_string(per_profile.size()));
  }
  int pooled_n = 0;
  int pooled_s = 0;
  int capacity = 0;
  double lp = 0.0;
  for (std::size_t i = 0; i < per_profile.size(); ++i) {
    const StepCounts& p = per_profile[i];
    const int remaining = p.capacity - p.prior_cum;
    if (p.prior_cum < 0 || remaining < 0 || p.count < 0 || p.count > remaining) {
      throw ValidationError("joint step: profile " + std::to_string(i) + " count " +
                            std::to_string(p.count) + " infeasible with " +
                            std::to_string(remaining) + " remaining alleles");
    }
    lp += log_binomial(remaining, p.count);
    pooled_n += p.count;
    pooled_s += p.prior_cum;
    capacity += p.capacity;
  }
  if (pooled_n != margin.n_col || pooled_s != margin.s_prev) {
    throw ValidationError("joint step: margin (" + std::to_string(margin.n_col) + ", " +
                          std::to_string(margin.s_prev) + ") disagrees with profile counts");
  }
  const int pooled_remaining = capacity - pooled_s;
  lp += log_rising(alpha_a, pooled_n) + log_rising(alpha_tail, pooled_remaining - pooled_n) -
        log_rising(alpha_a + alpha_tail, pooled_remaining);
  return LogProb(lp);
}

LogProb mdm_chain_log_pmf(const CountTable& table, const MdmParams& params) {
  require_matching(table, params);
  const DispersionModel& model = params.model;
  const std::size_t profiles = table.profiles();
  if (model.is_multinomial_limit()) {
    LogProb lp = LogProb::certain();
    for (std::size_t i = 0; i < profiles; ++i) {
      const ProfileCounts row(std::vector<int>(table.row(i).begin(), table.row(i).end()));
      lp *= binomial_chain_log_pmf(row, model.probs());
    }
    return lp;
  }
  const auto alpha = model.alpha();
  const auto tails = alpha_tails(alpha);
  std::vector<StepCounts> step(profiles);
  for (std::size_t i = 0; i < profiles; ++i) step[i].capacity = table.row_sums()[i];
  LogProb lp = LogProb::certain();
  for (std::size_t a = 0; a + 1 < alpha.size(); ++a) {
    MarginState margin{0, 0, static_cast<int>(profiles)};
    for (std::size_t i = 0; i < profiles; ++i) {
      step[i].count = table(i, a);
      margin.n_col += step[i].count;
      margin.s_prev += step[i].prior_cum;
    }
    lp *= joint_step_conditional(margin, alpha[a], tails[a + 1], step);
    for (auto& s : step) s.prior_cum += s.count;
  }
  return lp;
}

MdmParams marginal_over_alleles(const MdmParams& params, const SubsetSpec& keep) {
  if (keep.universe() != params.categories() || !keep.is_proper()) {
    throw ValidationError("allele marginal needs a proper nonempty subset of the " +
                          std::to_string(params.categories()) + " categories");
  }
  return MdmParams(params.row_sums, model_over(params.model, keep.indices(), true));
}

MdmParams conditional_over_alleles(const MdmParams& params, const SubsetSpec& observed,
                                   const CountTable& observed_c) {
  if (observed.universe() != params.categories() || !observed.is_proper()) {
    throw ValidationError("allele conditional needs a proper nonempty observed subset");
  }
  validate_table(observed_c);
  if (observed_c.profiles() != params.profiles() || observed_c.categories() != observed.size()) {
    throw ValidationError("observed counts must be " + std::to_string(params.profiles()) + " x " +
                          std::to_string(observed.size()));
  }
  std::vector<int> rows = params.row_sums;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i] -= observed_c.row_sums()[i];
    if (rows[i] < 0) {
      throw StructuralError("observed counts exceed row sum of profile " + std::to_string(i),
                            StructuralError::Axis::kRow, static_cast<std::ptrdiff_t>(i));
    }
  }
  const auto kept = observed.complement();
  return MdmParams(std::move(rows), model_over(params.model, kept, false));
}

MdmParams marginal_over_profiles(const MdmParams& params, const SubsetSpec& keep) {
  if (keep.universe() != params.profiles()) {
    throw ValidationError("profile subset universe does not match profile count");
  }
  std::vector<int> rows;
  for (std::size_t i : keep.indices()) rows.push_back(params.row_sums[i]);
  return MdmParams(std::move(rows), params.model);
}

MdmParams conditional_over_profiles(const MdmParams& params, const SubsetSpec& observed,
                                    const CountTable& observed_rows) {
  if (observed.universe() != params.profiles() || !observed.is_proper()) {
    throw ValidationError("profile conditional needs a proper nonempty observed subset");
  }
  validate_table(observed_rows);
  if (observed_rows.profiles() != observed.size() ||
      observed_rows.categories() != params.categories()) {
    throw ValidationError("observed rows must be " + std::to_string(observed.size()) + " x " +
                          std::to_string(params.categories()));
  }
  for (std::size_t k = 0; k < observed.size(); ++k) {
    const std::size_t i = observed.indices()[k];
    if (observed_rows.row_sums()[k] != params.row_sums[i]) {
      throw StructuralError("observed row " + std::to_string(k) + " does not match row sum of profile " +
                                std::to_string(i),
                            StructuralError::Axis::kRow, static_cast<std::ptrdiff_t>(k));
    }
  }
  std::vector<int> rows;
  for (std::size_t i : observed.complement()) rows.push_back(params.row_sums[i]);
  if (params.model.is_multinomial_limit()) return MdmParams(std::move(rows), params.model);
  std::vector<double> alpha(params.model.alpha().begin(), params.model.alpha().end());
  for (std::size_t a = 0; a < alpha.size(); ++a) alpha[a] += observed_rows.col_sums()[a];
  return MdmParams(std::move(rows), DispersionModel::from_alpha(std::move(alpha)));
}

LogProb hypergeometric_log_pmf(const CountTable& table) {
  validate_table(table);
  double lp = -log_factorial(table.total());
  for (int r : table.row_sums()) lp += log_factorial(r);
  for (int c : table.col_sums()) lp += log_factorial(c);
  for (int n : table.counts().data()) lp -= log_factorial(n);
  return LogProb(lp);
}

SufficientStatistics sufficient_statistics(const CountTable& table) {
  validate_table(table);
  return {table.row_sums(), table.col_sums(), table.total()};
}

CountTable select_columns(const CountTable& table, std::span<const std::size_t> cols) {
  IntMatrix out(table.profiles(), cols.size());
  for (std::size_t i = 0; i < table.profiles(); ++i)
    for (std::size_t k = 0; k < cols.size(); ++k) out(i, k) = table(i, cols[k]);
  return CountTable(std::move(out));
}

CountTable collapse_columns(const CountTable& table, const SubsetSpec& keep) {
  IntMatrix out(table.profiles(), keep.size() + 1);
  for (std::size_t i = 0; i < table.profiles(); ++i) {
    for (std::size_t a = 0; a < table.categories(); ++a) {
      const auto it = std::find(keep.indices().begin(), keep.indices().end(), a);
      const std::size_t dst = it == keep.indices().end()
                                  ? keep.size()
                                  : static_cast<std::size_t>(it - keep.indices().begin());
      out(i, dst) += table(i, a);
    }
  }
  return CountTable(std::move(out));
}

CountTable select_rows(const CountTable& table, std::span<const std::size_t> rows) {
  IntMatrix out(rows.size(), table.categories());
  for (std::size_t k = 0; k < rows.size(); ++k)
    std::copy(table.row(rows[k]).begin(), table.row(rows[k]).end(), out.row(k).begin());
  return CountTable(std::move(out));
}

}  // namespace mdm
