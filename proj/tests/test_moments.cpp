#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <vector>

#include "mdm/enumeration.hpp"
#include "mdm/moments.hpp"

using namespace mdm;

namespace {

MdmParams theta_params(std::vector<int> rows, std::vector<double> q, double theta) {
  return MdmParams(std::move(rows), theta_to_alpha(AlleleFrequencies(std::move(q)), theta));
}

}  // namespace

TEST_CASE("falling_factorial") {
  CHECK(falling_factorial(5, 0) == 1.0);
  CHECK(falling_factorial(5, 2) == 20.0);
  CHECK(falling_factorial(1, 2) == 0.0);
}

TEST_CASE("factorial_moment reference values") {
  const MdmParams p({2}, DispersionModel::from_alpha({2, 2}));
  CHECK(factorial_moment(FactorialOrder::single(1, 2, 0, 0, 2), p) ==
        doctest::Approx(0.6).epsilon(1e-14));
  CHECK(factorial_moment(FactorialOrder::single(1, 2, 0, 0, 3), p) == 0.0);
  CHECK(factorial_moment(FactorialOrder(IntMatrix(1, 2)), p) == 1.0);
  CHECK(oracle::moment(FactorialOrder::single(1, 2, 0, 0, 2), p) ==
        doctest::Approx(0.6).epsilon(1e-13));
}

TEST_CASE("mean_matrix") {
  const auto a = mean_matrix(theta_params({2, 2}, {0.25, 0.75}, 0.1));
  CHECK(a(0, 0) == 0.5);
  CHECK(a(0, 1) == 1.5);
  CHECK(a(1, 0) == 0.5);
  CHECK(a(1, 1) == 1.5);
  const auto b = mean_matrix(theta_params({2, 2}, {0.25, 0.75}, 0.4));
  CHECK(a == b);

  const auto p = theta_params({3, 1}, {0.1, 0.2, 0.7}, 0.05);
  const auto m = mean_matrix(p);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t k = 0; k < 3; ++k)
      CHECK(m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) ==
            factorial_moment(FactorialOrder::single(2, 3, i, k), p));
}

TEST_CASE("covariance reference values") {
  const auto p = theta_params({2, 2}, {0.1, 0.9}, 0.03);
  CHECK(covariance(0, 0, 0, 0, p) == doctest::Approx(0.1854).epsilon(1e-13));
  CHECK(covariance(0, 0, 1, 0, p) == doctest::Approx(0.0108).epsilon(1e-12));
  const auto p0 = theta_params({2, 2}, {0.1, 0.9}, 0.0);
  CHECK(covariance(0, 0, 1, 0, p0) == 0.0);
  CHECK(covariance(0, 0, 1, 1, p0) == 0.0);
}

TEST_CASE("covariance_matrix structure") {
  const auto p = theta_params({2, 3}, {0.1, 0.3, 0.6}, 0.07);
  const auto c = covariance_matrix(p);
  REQUIRE(c.rows() == 6);
  CHECK(c == c.transpose());
  for (Eigen::Index r = 0; r < 6; ++r) {
    for (Eigen::Index blk = 0; blk < 2; ++blk) {
      CHECK(std::abs(c.row(r).segment(blk * 3, 3).sum()) < 1e-12);
    }
  }
  CHECK(c(0, 4) == covariance(0, 0, 1, 1, p));

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(c);
  CHECK(eig.eigenvalues().minCoeff() >= -1e-10);
}

TEST_CASE("covariance closed forms against factorial moments") {
  const auto p = theta_params({2, 3}, {0.2, 0.3, 0.5}, 0.1);
  const std::size_t I = 2;
  const std::size_t A = 3;
  auto mean = [&](std::size_t i, std::size_t a) {
    return oracle::moment(FactorialOrder::single(I, A, i, a), p);
  };
  for (std::size_t i = 0; i < I; ++i)
    for (std::size_t a = 0; a < A; ++a)
      for (std::size_t i2 = 0; i2 < I; ++i2)
        for (std::size_t a2 = 0; a2 < A; ++a2) {
          IntMatrix r(I, A);
          r(i, a) += 1;
          r(i2, a2) += 1;
          double second = oracle::moment(FactorialOrder(r), p);
          if (i == i2 && a == a2) second += mean(i, a);
          CHECK(std::abs(covariance(i, a, i2, a2, p) - (second - mean(i, a) * mean(i2, a2))) < 1e-12);
        }
}

TEST_CASE("cross-profile covariance increases with theta") {
  double previous = 0.0;
  for (double theta : {0.01, 0.05, 0.1, 0.2, 0.3, 0.45}) {
    const double c = covariance(0, 1, 1, 1, theta_params({2, 2}, {0.2, 0.3, 0.5}, theta));
    CHECK(c > previous);
    previous = c;
  }
}
