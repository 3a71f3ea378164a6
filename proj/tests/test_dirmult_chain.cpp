#include <doctest.h>

#include <cmath>
#include <vector>

#include "mdm/dirmult_chain.hpp"
#include "mdm/log_math.hpp"

using namespace mdm;

namespace {

DispersionModel alpha_model(std::vector<double> alpha) {
  return DispersionModel::from_alpha(std::move(alpha));
}

}  // namespace

TEST_CASE("dm_log_pmf reference values") {
  CHECK(dm_log_pmf(ProfileCounts({1, 1}), alpha_model({1, 1})).log() ==
        doctest::Approx(std::log(1.0 / 3.0)).epsilon(1e-14));
  CHECK(dm_log_pmf(ProfileCounts({2, 0}), alpha_model({2, 2})).prob() ==
        doctest::Approx(0.3).epsilon(1e-14));
  CHECK(dm_log_pmf(ProfileCounts({0, 0, 0}), alpha_model({0.5, 1, 2})).log() == 0.0);

  double total = 0.0;
  for (int k = 0; k <= 2; ++k) total += dm_log_pmf(ProfileCounts({k, 2 - k}), alpha_model({2, 2})).prob();
  CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("dm_log_pmf rejects the multinomial limit") {
  const auto m = DispersionModel::multinomial({0.5, 0.5});
  CHECK_THROWS_AS(dm_log_pmf(ProfileCounts({1, 1}), m), ParameterDomainError);
}

TEST_CASE("dm_collapsed_log_pmf") {
  const auto m = alpha_model({1, 1, 1});
  const std::vector<int> prefix{0};
  CHECK(dm_collapsed_log_pmf(prefix, 2, m).prob() == doctest::Approx(0.5).epsilon(1e-14));

  // Brute-force over the collapsed cells.
  double brute = 0.0;
  for (int k = 0; k <= 2; ++k) brute += dm_log_pmf(ProfileCounts({0, k, 2 - k}), m).prob();
  CHECK(brute == doctest::Approx(0.5).epsilon(1e-14));

  const auto m4 = alpha_model({0.5, 1, 2, 4});
  const std::vector<int> full{1, 0, 2};
  CHECK(dm_collapsed_log_pmf(full, 3, m4).log() ==
        doctest::Approx(dm_log_pmf(ProfileCounts({1, 0, 2, 0}), m4).log()).epsilon(1e-13));
}

TEST_CASE("beta_binomial_step") {
  CHECK(beta_binomial_step(0, 2, 1.3, 2.0, 2).log() == 0.0);
  CHECK(beta_binomial_step(1, 0, 1.0, 1.0, 2).log() ==
        doctest::Approx(std::log(1.0 / 3.0)).epsilon(1e-14));
  double total = 0.0;
  for (int n = 0; n <= 1; ++n) total += beta_binomial_step(n, 1, 0.9, 8.1, 2).prob();
  CHECK(std::abs(total - 1.0) < 1e-12);
  CHECK_THROWS(beta_binomial_step(2, 1, 0.9, 8.1, 2));
}

TEST_CASE("chain_log_pmf equals the direct pmf") {
  const auto m = alpha_model({0.5, 1, 2, 4});
  for (const auto& n : std::vector<std::vector<int>>{{0, 1, 1, 0}, {3, 0, 0, 0}, {1, 2, 0, 3}}) {
    const ProfileCounts p(n);
    CHECK(std::abs(chain_log_pmf(p, m).log() - dm_log_pmf(p, m).log()) < 1e-12);
  }
}

TEST_CASE("binomial chain") {
  const std::vector<double> half{0.5, 0.5};
  CHECK(binomial_chain_log_pmf(ProfileCounts({1, 1}), half).prob() ==
        doctest::Approx(0.5).epsilon(1e-15));
  const std::vector<double> skew{0.25, 0.75};
  CHECK(binomial_chain_log_pmf(ProfileCounts({2, 0}), skew).prob() ==
        doctest::Approx(0.0625).epsilon(1e-15));
  const AlleleFrequencies f({0.025, 0.05, 0.1, 0.2, 0.4});
  CHECK(binomial_chain_log_pmf(ProfileCounts({0, 0, 2, 0, 0, 0}), f).prob() ==
        doctest::Approx(0.01).epsilon(1e-14));

  SUBCASE("exhausted mass makes later counts impossible") {
    const std::vector<double> p{1.0, 0.0};
    CHECK(binomial_chain_log_pmf(ProfileCounts({1, 1}), p).is_impossible());
    CHECK(binomial_chain_log_pmf(ProfileCounts({2, 0}), p).log() == 0.0);
  }
}

TEST_CASE("scaled chain probabilities and alpha tails") {
  const std::vector<double> q{0.2, 0.3, 0.5};
  const auto Q = scaled_chain_probs(q);
  CHECK(Q[0] == doctest::Approx(0.2));
  CHECK(Q[1] == doctest::Approx(0.375));
  CHECK(Q[2] == 1.0);
  const std::vector<double> alpha{1, 2, 3};
  CHECK(alpha_tails(alpha) == std::vector<double>{6, 5, 3, 0});
}

TEST_CASE("small theta approaches the binomial chain") {
  const AlleleFrequencies f({0.1, 0.2, 0.3});
  const auto m = theta_to_alpha(f, 1e-6);
  for (const auto& n : std::vector<std::vector<int>>{{2, 0, 0, 0}, {0, 1, 1, 0}, {0, 0, 0, 2}, {1, 0, 0, 1}}) {
    const ProfileCounts p(n);
    CHECK(std::abs(dm_log_pmf(p, m).log() - binomial_chain_log_pmf(p, f).log()) < 1e-4);
  }
}
