#include <doctest.h>

#include <cmath>
#include <vector>

#include "mdm/log_math.hpp"

using namespace mdm;

TEST_CASE("log_gamma and log_factorial agree on integers") {
  for (int n = 0; n < 40; ++n) {
    CHECK(log_factorial(n) == doctest::Approx(log_gamma(n + 1.0)).epsilon(1e-14));
  }
  CHECK(log_factorial(0) == 0.0);
  CHECK(log_factorial(5) == doctest::Approx(std::log(120.0)).epsilon(1e-15));
  CHECK(log_factorial(300) == doctest::Approx(std::lgamma(301.0)).epsilon(1e-14));
}

TEST_CASE("log_rising matches gamma ratio") {
  CHECK(log_rising(2.5, 0) == 0.0);
  CHECK(log_rising(4.0, 3) == doctest::Approx(std::log(4.0 * 5.0 * 6.0)).epsilon(1e-15));
  for (int n : {1, 7, 63, 64, 65, 200}) {
    const double x = 0.37;
    CHECK(log_rising(x, n) == doctest::Approx(std::lgamma(x + n) - std::lgamma(x)).epsilon(1e-12));
  }
}

TEST_CASE("log_binomial and log_multinomial") {
  CHECK(std::exp(log_binomial(4, 2)) == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(std::isinf(log_binomial(3, 4)));
  CHECK(std::isinf(log_binomial(3, -1)));
  const std::vector<int> c{2, 1, 1};
  CHECK(std::exp(log_multinomial(c)) == doctest::Approx(12.0).epsilon(1e-14));
}

TEST_CASE("xlogy treats 0 * log(0) as 0") {
  CHECK(xlogy(0, 0.0) == 0.0);
  CHECK(xlogy(2, 0.5) == doctest::Approx(2.0 * std::log(0.5)));
}

TEST_CASE("log_sum_exp is stable") {
  const std::vector<double> v{-1000.0, -1000.0};
  CHECK(log_sum_exp(v) == doctest::Approx(-1000.0 + std::log(2.0)));
  const std::vector<double> none{-INFINITY, -INFINITY};
  CHECK(std::isinf(log_sum_exp(none)));
}

TEST_CASE("LogProb arithmetic") {
  const LogProb half(std::log(0.5));
  CHECK((half * half).prob() == doctest::Approx(0.25));
  CHECK((half / half).log() == 0.0);
  CHECK(LogProb::impossible().is_impossible());
  CHECK(LogProb::certain().prob() == 1.0);
}

TEST_CASE("CompensatedSum recovers cancelled terms") {
  CompensatedSum s;
  s.add(1.0);
  s.add(1e-17);
  s.add(-1.0);
  CHECK(s.value() == doctest::Approx(1e-17).epsilon(1e-6));
}
