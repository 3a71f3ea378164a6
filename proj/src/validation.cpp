#include "mdm/validation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "mdm/dirmult_chain.hpp"
#include "mdm/enumeration.hpp"
#include "mdm/forensic.hpp"
#include "mdm/log_math.hpp"
#include "mdm/moments.hpp"

namespace mdm {

namespace {

struct WeightedTable {
  CountTable table;
  double prob;
};

std::vector<WeightedTable> weighted_tables(const MdmParams& params) {
  std::vector<WeightedTable> out;
  for (const CountTable& t : enumerate_tables(params.row_sums, params.categories())) {
    const double p = mdm_log_pmf(t, params).prob();
    out.push_back({t, p});
  }
  return out;
}

std::vector<int> flat(const CountTable& t) {
  return {t.counts().data().begin(), t.counts().data().end()};
}

std::vector<std::vector<std::size_t>> proper_subsets(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
    std::vector<std::size_t> s;
    for (std::size_t k = 0; k < n; ++k)
      if (mask & (1u << k)) s.push_back(k);
    out.push_back(std::move(s));
  }
  return out;
}

class Tracker {
 public:
  Tracker(std::string name, double tolerance) {
    result_.name = std::move(name);
    result_.tolerance = tolerance;
  }
  void observe(double error) {
    ++result_.checks;
    if (std::isnan(error)) error = std::numeric_limits<double>::infinity();
    result_.max_error = std::max(result_.max_error, error);
  }
  SuiteResult finish() {
    result_.passed = result_.max_error <= result_.tolerance;
    return result_;
  }

 private:
  SuiteResult result_;
};

}  // namespace

std::vector<MdmParams> validation_grid() {
  const std::vector<double> asym = {0.5, 1.0, 2.0, 4.0};
  const std::vector<double> skew = {0.1, 0.2, 0.3, 0.4};
  std::vector<MdmParams> grid;
  for (std::size_t profiles = 1; profiles <= 3; ++profiles) {
    for (std::size_t cats = 2; cats <= 4; ++cats) {
      std::vector<DispersionModel> models;
      models.push_back(DispersionModel::from_alpha(std::vector<double>(cats, 1.0)));
      models.push_back(DispersionModel::from_alpha({asym.begin(), asym.begin() + cats}));
      std::vector<double> skewed(skew.begin(), skew.begin() + static_cast<long>(cats));
      const double total = std::accumulate(skewed.begin(), skewed.end(), 0.0);
      for (double& q : skewed) q /= total;
      for (double theta : {0.01, 0.03, 0.1, 0.3}) {
        models.push_back(theta_to_alpha(
            AlleleFrequencies(std::vector<double>(cats, 1.0 / static_cast<double>(cats))), theta));
        models.push_back(theta_to_alpha(AlleleFrequencies(skewed), theta));
      }
      // Every row-sum vector over {1,2,3}.
      std::vector<int> row_sums(profiles, 1);
      while (true) {
        for (const auto& m : models) grid.emplace_back(row_sums, m);
        std::size_t k = 0;
        while (k < profiles && row_sums[k] == 3) row_sums[k++] = 1;
        if (k == profiles) break;
        ++row_sums[k];
      }
    }
  }
  return grid;
}

SuiteResult check_normalization(const std::vector<MdmParams>& grid) {
  Tracker t("normalization", 1e-12);
  for (const auto& p : grid) t.observe(std::abs(oracle::pmf_sum(p) - 1.0));
  return t.finish();
}

SuiteResult check_chain_equivalence(const std::vector<MdmParams>& grid) {
  Tracker t("chain-equivalence", 1e-10);
  for (const auto& p : grid) {
    for (const CountTable& table : enumerate_tables(p.row_sums, p.categories())) {
      const double direct = mdm_log_pmf(table, p).log();
      t.observe(std::abs(mdm_chain_log_pmf(table, p).log() - direct));
      if (table.profiles() == 1) {
        const ProfileCounts row(std::vector<int>(table.row(0).begin(), table.row(0).end()));
        t.observe(std::abs(chain_log_pmf(row, p.model).log() - dm_log_pmf(row, p.model).log()));
      }
    }
  }
  return t.finish();
}

SuiteResult check_marginals(const std::vector<MdmParams>& grid) {
  Tracker t("marginal-conditional", 1e-12);
  for (const auto& p : grid) {
    const auto tables = weighted_tables(p);
    const std::size_t cats = p.categories();
    const std::size_t profiles = p.profiles();

    for (const auto& b : proper_subsets(cats)) {
      const SubsetSpec keep(b, cats);
      const auto c_idx = keep.complement();
      const SubsetSpec cset(c_idx, cats);
      const MdmParams marg_b = marginal_over_alleles(p, keep);
      const MdmParams marg_c = marginal_over_alleles(p, cset);
      std::map<std::vector<int>, CompensatedSum> by_b, by_c;
      for (const auto& wt : tables) {
        by_b[flat(select_columns(wt.table, b))].add(wt.prob);
        by_c[flat(select_columns(wt.table, c_idx))].add(wt.prob);
      }
      for (const auto& wt : tables) {
        const CountTable b_counts = select_columns(wt.table, b);
        const CountTable c_counts = select_columns(wt.table, c_idx);
        const double marginal = mdm_log_pmf(collapse_columns(wt.table, keep), marg_b).prob();
        t.observe(std::abs(marginal - by_b[flat(b_counts)].value()));

        const double p_c = by_c[flat(c_counts)].value();
        const MdmParams cond = conditional_over_alleles(p, cset, c_counts);
        const double conditional = mdm_log_pmf(b_counts, cond).prob();
        t.observe(std::abs(conditional - wt.prob / p_c));

        const double marginal_c = mdm_log_pmf(collapse_columns(wt.table, cset), marg_c).prob();
        t.observe(std::abs(marginal_c * conditional - wt.prob));
      }
    }

    if (profiles < 2) continue;
    for (const auto& j : proper_subsets(profiles)) {
      const SubsetSpec keep(j, profiles);
      const auto k_idx = keep.complement();
      const SubsetSpec observed(k_idx, profiles);
      const MdmParams marg_j = marginal_over_profiles(p, keep);
      const MdmParams marg_k = marginal_over_profiles(p, observed);
      std::map<std::vector<int>, CompensatedSum> by_j, by_k;
      for (const auto& wt : tables) {
        by_j[flat(select_rows(wt.table, j))].add(wt.prob);
        by_k[flat(select_rows(wt.table, k_idx))].add(wt.prob);
      }
      for (const auto& wt : tables) {
        const CountTable j_rows = select_rows(wt.table, j);
        const CountTable k_rows = select_rows(wt.table, k_idx);
        const double marginal = mdm_log_pmf(j_rows, marg_j).prob();
        t.observe(std::abs(marginal - by_j[flat(j_rows)].value()));

        const MdmParams cond = conditional_over_profiles(p, observed, k_rows);
        const double conditional = mdm_log_pmf(j_rows, cond).prob();
        t.observe(std::abs(conditional - wt.prob / by_k[flat(k_rows)].value()));

        const double marginal_k = mdm_log_pmf(k_rows, marg_k).prob();
        t.observe(std::abs(marginal_k * conditional - wt.prob));
      }
    }
  }
  return t.finish();
}

SuiteResult check_hypergeometric(const std::vector<MdmParams>& grid) {
  Tracker t("hypergeometric", 1e-12);
  for (const auto& p : grid) {
    const auto tables = weighted_tables(p);
    std::map<std::vector<int>, CompensatedSum> by_cols;
    for (const auto& wt : tables) by_cols[wt.table.col_sums()].add(wt.prob);
    for (const auto& wt : tables) {
      const double conditional = wt.prob / by_cols[wt.table.col_sums()].value();
      t.observe(std::abs(hypergeometric_log_pmf(wt.table).prob() - conditional));
    }
    for (const auto& [cols, mass] : by_cols) {
      CompensatedSum total;
      for (const CountTable& m : enumerate_tables_with_margins(p.row_sums, cols)) {
        total.add(hypergeometric_log_pmf(m).prob());
      }
      t.observe(std::abs(total.value() - 1.0));
    }
  }
  return t.finish();
}

SuiteResult check_moments(const std::vector<MdmParams>& grid, int max_order) {
  Tracker t("moment-oracle", 1e-10);
  for (const auto& p : grid) {
    const std::size_t profiles = p.profiles();
    const std::size_t cats = p.categories();
    std::vector<FactorialOrder> orders;
    for (int total = 1; total <= max_order; ++total) {
      for (const CountTable& flat_order :
           enumerate_tables(std::vector<int>{total}, profiles * cats)) {
        IntMatrix m(profiles, cats);
        for (std::size_t c = 0; c < profiles * cats; ++c) m(c / cats, c % cats) = flat_order(0, c);
        orders.emplace_back(std::move(m));
      }
    }
    const auto brute = oracle::moments(orders, p);
    for (std::size_t k = 0; k < orders.size(); ++k) {
      const double closed = factorial_moment(orders[k], p);
      const double err = std::abs(closed - brute[k]);
      t.observe(std::abs(brute[k]) > 1e-300 ? err / std::abs(brute[k]) : err);
    }
  }
  return t.finish();
}

SuiteResult check_covariances(const std::vector<MdmParams>& grid) {
  Tracker t("covariance", 1e-12);
  for (const auto& p : grid) {
    const std::size_t profiles = p.profiles();
    const std::size_t cats = p.categories();
    const auto mean = mean_matrix(p);
    for (std::size_t i = 0; i < profiles; ++i)
      for (std::size_t a = 0; a < cats; ++a)
        for (std::size_t i2 = 0; i2 < profiles; ++i2) {
          double row_total = 0.0;
          for (std::size_t a2 = 0; a2 < cats; ++a2) {
            const double closed = covariance(i, a, i2, a2, p);
            row_total += closed;
            double second;
            if (i == i2 && a == a2) {
              second = factorial_moment(FactorialOrder::single(profiles, cats, i, a, 2), p) +
                       mean(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(a));
            } else {
              IntMatrix r(profiles, cats);
              r(i, a) = 1;
              r(i2, a2) = 1;
              second = factorial_moment(FactorialOrder(std::move(r)), p);
            }
            const double derived =
                second - mean(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(a)) *
                             mean(static_cast<Eigen::Index>(i2), static_cast<Eigen::Index>(a2));
            t.observe(std::abs(closed - derived));
          }
          t.observe(std::abs(row_total));
        }
  }
  return t.finish();
}

SuiteResult check_woe_properties() {
  // Violation magnitude; 0 when every property holds.
  Tracker t("woe-properties", 0.0);
  const auto grid = woe_margin_grid(2);
  const auto relevant =
      std::count_if(grid.begin(), grid.end(), [](const GridState& g) { return !g.correlation_free; });
  t.observe(grid.size() == 15 && relevant == 12 ? 0.0 : 1.0);

  for (int qi = 1; qi <= 50; ++qi) {
    const double q = qi / 100.0;
    for (const auto& g : grid) t.observe(std::abs(woe_step(g.state, q, 0.0) - 1.0));
    for (int ti = 1; ti <= 50; ++ti) {
      const double theta = ti / 100.0;
      for (int s = 0; s <= 3; ++s) {
        // Equality holds analytically at s = 3; allow rounding there.
        const double w = woe_step({1, s, 2}, q, theta);
        t.observe(std::max(0.0, (1.0 - 1e-12) - w));
      }
    }
  }
  for (int ti = 1; ti <= 50; ++ti) {
    const double theta = ti / 100.0;
    for (const auto& g : grid) {
      if (g.state.n_col < 2) continue;
      const double w = woe_step(g.state, 0.025, theta);
      t.observe(w < 1.0 ? 0.0 : std::max(w - 1.0, 1e-16));
    }
  }

  // The per-profile split of a pooled margin does not change the ratio.
  for (double q : {0.025, 0.1, 0.4}) {
    for (double theta : {0.01, 0.1, 0.3}) {
      const double alpha = (1.0 - theta) / theta;
      for (int si = 0; si <= 2; ++si)
        for (int sj = 0; sj <= 2; ++sj)
          for (int ni = 0; ni <= 2 - si; ++ni)
            for (int nj = 0; nj <= 2 - sj; ++nj) {
              const std::vector<StepCounts> step = {{ni, si, 2}, {nj, sj, 2}};
              const MarginState margin{ni + nj, si + sj, 2};
              const int m = 4 - margin.s_prev - margin.n_col;
              const double independent = log_binomial(2 - si, ni) + log_binomial(2 - sj, nj) +
                                         xlogy(margin.n_col, q) + xlogy(m, 1.0 - q);
              const double joint =
                  joint_step_conditional(margin, q * alpha, (1.0 - q) * alpha, step).log();
              const double ratio = std::exp(independent - joint);
              t.observe(std::max(0.0, std::abs(ratio - woe_step(margin, q, theta)) - 1e-12));
            }
    }
  }
  return t.finish();
}

SuiteResult check_pair_ratios() {
  Tracker t("pair-ratio", 1e-10);
  const AlleleFrequencies freqs({0.025, 0.05, 0.1, 0.2, 0.4});
  std::vector<std::vector<int>> genotypes;
  for (std::size_t a = 0; a < 5; ++a)
    for (std::size_t b = a; b < 5; ++b) {
      std::vector<int> g(5, 0);
      ++g[a];
      ++g[b];
      genotypes.push_back(g);
    }
  for (const auto& gi : genotypes)
    for (const auto& gj : genotypes) {
      const GenotypePair pair(gi, gj);
      t.observe(std::abs(pair_ratio(pair, freqs, 0.0) - 1.0));
      for (double theta : {0.001, 0.01, 0.03, 0.1, 0.25, 0.5}) {
        const double a = pair_ratio(pair, freqs, theta);
        const double b = pair_ratio_by_woe(pair, freqs, theta);
        t.observe(std::abs(a - b) / std::max(1.0, std::abs(a)));
      }
    }
  return t.finish();
}

std::vector<SuiteResult> run_validation_suites() {
  const auto grid = validation_grid();
  return {check_normalization(grid), check_chain_equivalence(grid), check_marginals(grid),
          check_hypergeometric(grid), check_moments(grid),           check_covariances(grid),
          check_woe_properties(),     check_pair_ratios()};
}

}  // namespace mdm
