#pragma once

#include <string>
#include <vector>

#include "mdm/mdm_core.hpp"

namespace mdm {

/// One invariant family checked against its enumeration oracle.
struct SuiteResult {
  std::string name;
  bool passed = false;
  double max_error = 0.0;
  double tolerance = 0.0;
  std::size_t checks = 0;
};

/// Parameter grid used by the oracle suites: I in {1,2,3}, A in {2,3,4},
/// every row-sum vector over {1,2,3}, and alpha from (1,...,1),
/// (0.5,1,2,4)[:A] and theta in {0.01,0.03,0.1,0.3} with uniform and
/// skewed allele frequencies.
std::vector<MdmParams> validation_grid();

SuiteResult check_normalization(const std::vector<MdmParams>& grid);
SuiteResult check_chain_equivalence(const std::vector<MdmParams>& grid);
SuiteResult check_marginals(const std::vector<MdmParams>& grid);
SuiteResult check_hypergeometric(const std::vector<MdmParams>& grid);
/// Factorial moments of total order <= max_order against enumeration.
SuiteResult check_moments(const std::vector<MdmParams>& grid, int max_order = 4);
SuiteResult check_covariances(const std::vector<MdmParams>& grid);
SuiteResult check_woe_properties();
SuiteResult check_pair_ratios();

/// Every suite above over validation_grid().
std::vector<SuiteResult> run_validation_suites();

}  // namespace mdm
