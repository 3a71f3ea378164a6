#include <doctest.h>

#include "mdm/core_model.hpp"

using namespace mdm;

TEST_CASE("theta_to_alpha") {
  SUBCASE("symmetric") {
    const auto m = theta_to_alpha(AlleleFrequencies({0.5, 0.5}), 0.2);
    CHECK(m.alpha_total() == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(m.alpha()[0] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(m.alpha()[1] == doctest::Approx(2.0).epsilon(1e-14));
  }
  SUBCASE("theta zero is the multinomial limit") {
    const auto m = theta_to_alpha(AlleleFrequencies({0.5, 0.5}), 0.0);
    CHECK(m.is_multinomial_limit());
    CHECK(m.alpha().empty());
    CHECK(m.probs()[0] == 0.5);
  }
  SUBCASE("rest class") {
    const AlleleFrequencies f({0.025, 0.05, 0.1, 0.2, 0.4});
    CHECK(f.has_rest());
    CHECK(f.rest_mass() == doctest::Approx(0.225).epsilon(1e-12));
    CHECK(f.category_count() == 6);
    const auto m = theta_to_alpha(f, 0.03);
    CHECK(m.alpha_total() == doctest::Approx(0.97 / 0.03).epsilon(1e-12));
    CHECK(m.alpha()[0] == doctest::Approx(0.025 * 0.97 / 0.03).epsilon(1e-12));
    CHECK(m.alpha()[0] == doctest::Approx(0.80833).epsilon(1e-5));
    CHECK(1.0 / (1.0 + m.alpha_total()) == doctest::Approx(0.03).epsilon(1e-12));
  }
  SUBCASE("round trip through alpha") {
    const auto m = theta_to_alpha(AlleleFrequencies({0.1, 0.3, 0.6}), 0.07);
    const auto back = DispersionModel::from_alpha({m.alpha().begin(), m.alpha().end()});
    CHECK(back.theta() == doctest::Approx(0.07).epsilon(1e-12));
    for (std::size_t a = 0; a < 3; ++a) {
      CHECK(back.probs()[a] == doctest::Approx(m.probs()[a]).epsilon(1e-12));
    }
  }
  SUBCASE("domain errors") {
    const AlleleFrequencies f({0.5, 0.5});
    CHECK_THROWS_AS(theta_to_alpha(f, 1.0), ParameterDomainError);
    CHECK_THROWS_AS(theta_to_alpha(f, -0.1), ParameterDomainError);
    CHECK_THROWS_AS(AlleleFrequencies({0.5, 0.0}), ValidationError);
    CHECK_THROWS_AS(AlleleFrequencies({0.7, 0.7}), ValidationError);
    CHECK_THROWS_AS(DispersionModel::from_alpha({1.0, -1.0}), ValidationError);
  }
}

TEST_CASE("AlleleFrequencies labels and category probabilities") {
  const AlleleFrequencies f({0.2, 0.3});
  CHECK(f.labels() == std::vector<std::string>{"a1", "a2"});
  const auto p = f.category_probs();
  REQUIRE(p.size() == 3);
  CHECK(p[2] == doctest::Approx(0.5));
  CHECK_FALSE(AlleleFrequencies({0.5, 0.5}).has_rest());
}

TEST_CASE("CountTable validation") {
  CHECK_NOTHROW(validate_table(CountTable(IntMatrix::from_rows({{1, 1}, {2, 0}}), {2, 2})));
  try {
    validate_table(CountTable(IntMatrix::from_rows({{1, 2}, {2, 0}}), {2, 2}));
    FAIL("expected a structural error");
  } catch (const StructuralError& e) {
    CHECK(e.axis() == StructuralError::Axis::kRow);
    CHECK(e.index() == 0);
  }
  CHECK_THROWS_AS(validate_table(CountTable(IntMatrix(0, 2))), StructuralError);
  CHECK_THROWS_AS(validate_table(CountTable(IntMatrix(2, 0))), StructuralError);
  CHECK_THROWS_AS(validate_table(CountTable::from_rows({{1, -1}})), StructuralError);
  CHECK_THROWS_AS(IntMatrix::from_rows({{1, 1}, {1}}), Error);

  const auto t = CountTable::from_rows({{1, 1}, {2, 0}});
  CHECK(t.row_sums() == std::vector<int>{2, 2});
  CHECK(t.col_sums() == std::vector<int>{3, 1});
  CHECK(t.total() == 4);
}

TEST_CASE("MarginState feasibility") {
  CHECK(MarginState{2, 2}.feasible());
  CHECK_FALSE(MarginState{3, 2}.feasible());
  CHECK_FALSE(MarginState{-1, 0}.feasible());
  CHECK(MarginState{5, 1, 3}.feasible());
}

TEST_CASE("SubsetSpec") {
  const SubsetSpec s({2, 0}, 4);
  CHECK(s.indices()[0] == 0);
  CHECK(s.contains(2));
  CHECK_FALSE(s.contains(1));
  CHECK(s.is_proper());
  CHECK(s.complement() == std::vector<std::size_t>{1, 3});
  CHECK_THROWS_AS(SubsetSpec({}, 3), ValidationError);
  CHECK_THROWS_AS(SubsetSpec({1, 1}, 3), ValidationError);
  CHECK_THROWS_AS(SubsetSpec({3}, 3), ValidationError);
}
