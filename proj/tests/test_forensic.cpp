#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <vector>

#include "mdm/dirmult_chain.hpp"
#include "mdm/forensic.hpp"
#include "mdm/log_math.hpp"
#include "mdm/mdm_core.hpp"

using namespace mdm;

namespace {

const AlleleFrequencies kPanel({0.025, 0.05, 0.1, 0.2, 0.4});

std::vector<int> genotype(std::size_t categories, std::size_t a, std::size_t b) {
  std::vector<int> g(categories, 0);
  ++g[a];
  ++g[b];
  return g;
}

double log_binomial_term(int x, int trials, double q) {
  return log_binomial(trials, x) + xlogy(x, q) + xlogy(trials - x, 1 - q);
}

}  // namespace

TEST_CASE("woe_step reference values") {
  CHECK(woe_step(MarginState{1, 0}, 0.1, 0.1) == doctest::Approx(1.29257).epsilon(1e-5));
  CHECK(woe_step(MarginState{2, 0}, 0.1, 0.1) == doctest::Approx(0.76345).epsilon(1e-5));

  // Independent evaluation with gamma functions.
  const double q = 0.1;
  const double alpha = 9.0;
  const double direct = q * std::pow(1 - q, 3) /
                        std::exp(std::lgamma(1 + q * alpha) - std::lgamma(q * alpha) +
                                 std::lgamma(3 + (1 - q) * alpha) - std::lgamma((1 - q) * alpha) -
                                 std::lgamma(4 + alpha) + std::lgamma(alpha));
  CHECK(woe_step(MarginState{1, 0}, q, 0.1) == doctest::Approx(direct).epsilon(1e-13));
}

TEST_CASE("woe_step is exactly one without dispersion") {
  for (const auto& g : woe_margin_grid()) CHECK(woe_step(g.state, 0.3, 0.0) == 1.0);
}

TEST_CASE("woe_step matches the joint step conditional") {
  const double theta = 0.2;
  const double q = 0.15;
  const double alpha = (1 - theta) / theta;
  for (const auto& g : woe_margin_grid()) {
    const int n = g.state.n_col;
    const int s = g.state.s_prev;
    // Put all prior alleles on profile 1 first, then profile 2.
    const int s1 = std::min(s, 2);
    const int s2 = s - s1;
    for (int x = 0; x <= std::min(n, 2 - s1); ++x) {
      const int y = n - x;
      if (y > 2 - s2) continue;
      const std::vector<StepCounts> counts{{x, s1}, {y, s2}};
      const double independent = std::exp(log_binomial_term(x, 2 - s1, q) + log_binomial_term(y, 2 - s2, q));
      const double joint = joint_step_conditional(g.state, q * alpha, (1 - q) * alpha, counts).prob();
      CHECK(woe_step(g.state, q, theta) == doctest::Approx(independent / joint).epsilon(1e-12));
    }
  }
}

TEST_CASE("woe_step with a tail mass override") {
  const double tail = 0.6;
  const double theta = 0.1;
  const double Q = 0.25;
  const double alpha = tail * (1 - theta) / theta;
  const double expected = Q * std::pow(1 - Q, 2) /
                          std::exp(std::log(Q * alpha) + std::log((1 - Q) * alpha) +
                                   std::log((1 - Q) * alpha + 1) - std::log(alpha) -
                                   std::log(alpha + 1) - std::log(alpha + 2));
  CHECK(woe_step(MarginState{1, 1}, Q, theta, tail) == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("margin grid") {
  const auto g = woe_margin_grid(2);
  CHECK(g.size() == 15);
  std::set<std::pair<int, int>> flagged;
  for (const auto& s : g)
    if (s.correlation_free) flagged.emplace(s.state.n_col, s.state.s_prev);
  CHECK(flagged == std::set<std::pair<int, int>>{{0, 3}, {1, 3}, {0, 4}});
  CHECK(g.size() - flagged.size() == 12);
  CHECK(woe_margin_grid(1).size() == 6);
  CHECK(std::is_sorted(g.begin(), g.end(),
                       [](const GridState& a, const GridState& b) { return a.state < b.state; }));
}

TEST_CASE("multiplicity classes") {
  CHECK(multiplicity_class(GenotypePair({1, 1, 0}, {1, 0, 1})).label() == "(2)");
  CHECK(multiplicity_class(GenotypePair({2, 0}, {2, 0})).label() == "(4)");
  CHECK(multiplicity_class(GenotypePair({2, 0, 0}, {1, 1, 0})).label() == "(3)");
  CHECK(multiplicity_class(GenotypePair({1, 1, 0, 0}, {0, 0, 1, 1})).label() == "()");
  CHECK(multiplicity_class(GenotypePair({1, 1}, {1, 1})).label() == "(2,2)");
  CHECK_THROWS(GenotypePair({1, 0}, {1, 1}));
}

TEST_CASE("pair ratio") {
  const std::size_t A = kPanel.allele_count();

  SUBCASE("one without dispersion") {
    CHECK(pair_ratio(GenotypePair(genotype(A, 0, 1), genotype(A, 0, 2)), kPanel, 0.0) == 1.0);
  }
  SUBCASE("homozygous pair by both paths") {
    const GenotypePair pair(genotype(A, 0, 0), genotype(A, 0, 0));
    const double theta = 0.03;
    const double by_pmf = pair_ratio(pair, kPanel, theta);
    CHECK(std::abs(by_pmf - pair_ratio_by_woe(pair, kPanel, theta)) < 1e-10 * by_pmf);

    // Closed form: q^4 / [(a)_4 / (alpha)_4].
    const double alpha = 0.97 / 0.03;
    const double a = 0.025 * alpha;
    const double closed = std::pow(0.025, 4) * (alpha * (alpha + 1) * (alpha + 2) * (alpha + 3)) /
                          (a * (a + 1) * (a + 2) * (a + 3));
    CHECK(by_pmf == doctest::Approx(closed).epsilon(1e-12));
  }
  SUBCASE("singletons cancel") {
    const double theta = 0.1;
    const double shared_a1 = pair_ratio(GenotypePair(genotype(A, 0, 1), genotype(A, 0, 2)), kPanel, theta);
    const double other = pair_ratio(GenotypePair(genotype(A, 0, 4), genotype(A, 0, 3)), kPanel, theta);
    CHECK(shared_a1 == doctest::Approx(other).epsilon(1e-12));
  }
  SUBCASE("singleton-only pairs do not depend on frequencies") {
    const AlleleFrequencies uniform({0.2, 0.2, 0.2, 0.2, 0.2});
    for (double theta : {0.01, 0.1, 0.3}) {
      const GenotypePair pair(genotype(A, 0, 1), genotype(A, 2, 3));
      CHECK(pair_ratio(pair, kPanel, theta) ==
            doctest::Approx(pair_ratio(pair, uniform, theta)).epsilon(1e-12));
    }
  }
  SUBCASE("three copies factor into chain steps") {
    // Pooled (3,1,0,0,0 | rest 0): step states (3,0), (1,3), then (0,4).
    const GenotypePair pair(genotype(A, 0, 0), genotype(A, 0, 1));
    const double theta = 0.07;
    const auto q = kPanel.category_probs();
    std::vector<double> tail(q.size() + 1, 0.0);
    for (std::size_t k = q.size(); k-- > 0;) tail[k] = tail[k + 1] + q[k];
    const std::vector<int> pooled = pair.pooled();
    double product = 1.0;
    int s = 0;
    for (std::size_t k = 0; k + 1 < q.size(); ++k) {
      product *= woe_step(MarginState{pooled[k], s}, q[k] / tail[k], theta, tail[k]);
      s += pooled[k];
    }
    CHECK(pair_ratio(pair, kPanel, theta) == doctest::Approx(product).epsilon(1e-10));
  }
}

TEST_CASE("pair ratio curves") {
  const auto grid = theta_range(0.0, 0.5, 0.01);
  REQUIRE(grid.size() == 51);
  CHECK(grid[1] == 0.01);
  CHECK(grid.back() == 0.5);

  const auto curves = pair_ratio_curves(kPanel, grid);
  std::map<std::string, const PairRatioCurve*> by_key;
  std::set<std::string> classes;
  for (const auto& c : curves) {
    by_key[c.key] = &c;
    classes.insert(c.cls.label());
    CHECK(c.ratio.front() == 1.0);
  }
  CHECK(classes == std::set<std::string>{"()", "(2)", "(2,2)", "(3)", "(4)"});
  for (const auto& label : kPanel.labels()) {
    const auto* four = by_key.at("(4)@" + label);
    const auto* two = by_key.at("(2)@" + label);
    for (std::size_t t = 1; t < grid.size(); ++t) CHECK(four->ratio[t] < two->ratio[t]);
  }
  std::size_t pairs = 0;
  for (const auto& c : curves) pairs += c.pair_count;
  CHECK(pairs == 15 * 16 / 2);  // unordered pairs of the 15 genotypes
}
