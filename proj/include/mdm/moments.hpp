#pragma once

#include <Eigen/Dense>

#include "mdm/core_model.hpp"
#include "mdm/mdm_core.hpp"

namespace mdm {

/// Orders r_ia of a generalized factorial moment E{prod n_ia^(r_ia)}, where
/// x^(k) = x (x-1) ... (x-k+1) is the falling factorial.
class FactorialOrder {
 public:
  explicit FactorialOrder(IntMatrix orders);
  /// All zeros except r_ia = order.
  static FactorialOrder single(std::size_t profiles, std::size_t categories, std::size_t i,
                               std::size_t a, int order = 1);

  const IntMatrix& orders() const { return orders_; }
  std::size_t profiles() const { return orders_.rows(); }
  std::size_t categories() const { return orders_.cols(); }
  const std::vector<int>& row_sums() const { return row_sums_; }
  const std::vector<int>& col_sums() const { return col_sums_; }
  int total() const { return total_; }

 private:
  IntMatrix orders_;
  std::vector<int> row_sums_;
  std::vector<int> col_sums_;
  int total_ = 0;
};

/// Falling factorial x (x-1) ... (x-k+1); 1 when k == 0.
double falling_factorial(double x, int k);

/// Closed-form generalized factorial moment
///   prod_i n_i.^(r_i.) * prod_a alpha_a^[r_.a] / alpha.^[r..]
/// with x^[k] the rising factorial. Zero when any r_i. exceeds n_i.
/// In the multinomial limit the alpha ratio becomes prod_a q_a^r_.a.
double factorial_moment(const FactorialOrder& order, const MdmParams& params);

/// E(n_ia) = n_i. q_a.
Eigen::MatrixXd mean_matrix(const MdmParams& params);

/// Closed-form Cov(n_ia, n_i2a2) for the four profile/allele cases.
double covariance(std::size_t i, std::size_t a, std::size_t i2, std::size_t a2,
                  const MdmParams& params);

/// (I*A) x (I*A) covariance with flat index i*A + a (profile-major).
Eigen::MatrixXd covariance_matrix(const MdmParams& params);

}  // namespace mdm
