#include "mdm/moments.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace mdm {

FactorialOrder::FactorialOrder(IntMatrix orders)
    : orders_(std::move(orders)),
      row_sums_(orders_.row_sums()),
      col_sums_(orders_.col_sums()),
      total_(std::accumulate(row_sums_.begin(), row_sums_.end(), 0)) {
  for (int r : orders_.data()) {
    if (r < 0) throw ValidationError("factorial moment orders must be nonnegative");
  }
}

FactorialOrder FactorialOrder::single(std::size_t profiles, std::size_t categories, std::size_t i,
                                      std::size_t a, int order) {
  IntMatrix m(profiles, categories);
  m(i, a) = order;
  return FactorialOrder(std::move(m));
}

double falling_factorial(double x, int k) {
  double out = 1.0;
  for (int j = 0; j < k; ++j) out *= x - j;
  return out;
}

double factorial_moment(const FactorialOrder& order, const MdmParams& params) {
  if (order.profiles() != params.profiles() || order.categories() != params.categories()) {
    throw ValidationError("factorial order is " + std::to_string(order.profiles()) + " x " +
                          std::to_string(order.categories()) + ", model is " +
                          std::to_string(params.profiles()) + " x " +
                          std::to_string(params.categories()));
  }
  double row_part = 1.0;
  for (std::size_t i = 0; i < params.profiles(); ++i) {
    const int r = order.row_sums()[i];
    if (r > params.row_sums[i]) return 0.0;
    row_part *= falling_factorial(params.row_sums[i], r);
  }
  const DispersionModel& model = params.model;
  double ratio = 1.0;
  if (model.is_multinomial_limit()) {
    const auto q = model.probs();
    for (std::size_t a = 0; a < q.size(); ++a) ratio *= std::pow(q[a], order.col_sums()[a]);
  } else {
    // Interleave numerator and denominator factors to stay near 1.
    const auto alpha = model.alpha();
    int k_total = 0;
    for (std::size_t a = 0; a < alpha.size(); ++a) {
      for (int k = 0; k < order.col_sums()[a]; ++k) {
        ratio *= alpha[a] + k;
        ratio /= model.alpha_total() + k_total++;
      }
    }
  }
  return ratio * row_part;
}

Eigen::MatrixXd mean_matrix(const MdmParams& params) {
  const auto q = params.model.probs();
  Eigen::MatrixXd mean(params.profiles(), params.categories());
  for (std::size_t i = 0; i < params.profiles(); ++i)
    for (std::size_t a = 0; a < q.size(); ++a)
      mean(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(a)) = params.row_sums[i] * q[a];
  return mean;
}

double covariance(std::size_t i, std::size_t a, std::size_t i2, std::size_t a2,
                  const MdmParams& params) {
  if (i >= params.profiles() || i2 >= params.profiles() || a >= params.categories() ||
      a2 >= params.categories()) {
    throw ValidationError("covariance index out of range");
  }
  const auto q = params.model.probs();
  const double theta = params.model.theta();
  const double n = params.row_sums[i];
  const double allele_part = a == a2 ? q[a] * (1.0 - q[a]) : -q[a] * q[a2];
  if (i == i2) return n * allele_part * (1.0 + (n - 1.0) * theta);
  return n * params.row_sums[i2] * allele_part * theta;
}

Eigen::MatrixXd covariance_matrix(const MdmParams& params) {
  const std::size_t profiles = params.profiles();
  const std::size_t cats = params.categories();
  const auto dim = static_cast<Eigen::Index>(profiles * cats);
  Eigen::MatrixXd cov(dim, dim);
  for (std::size_t i = 0; i < profiles; ++i)
    for (std::size_t a = 0; a < cats; ++a)
      for (std::size_t i2 = 0; i2 < profiles; ++i2)
        for (std::size_t a2 = 0; a2 < cats; ++a2)
          cov(static_cast<Eigen::Index>(i * cats + a), static_cast<Eigen::Index>(i2 * cats + a2)) =
              covariance(i, a, i2, a2, params);
  return cov;
}

}  // namespace mdm
