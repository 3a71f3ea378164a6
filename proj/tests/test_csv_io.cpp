#include <doctest.h>

#include <sstream>

#include "mdm/csv_io.hpp"

using namespace mdm;

TEST_CASE("allele frequency file") {
  std::istringstream in(
      "locus,allele,frequency\n"
      "# comment\n"
      "D3,12,0.2\n"
      "D3,13,0.3\n"
      "\n"
      "vWA,14,0.5\n"
      "vWA,15,0.5\n");
  const auto loci = read_allele_frequencies(in);
  REQUIRE(loci.size() == 2);
  CHECK(loci[0].locus == "D3");
  CHECK(loci[0].freqs.labels() == std::vector<std::string>{"12", "13"});
  CHECK(loci[0].freqs.has_rest());
  CHECK(loci[0].freqs.rest_mass() == doctest::Approx(0.5));
  CHECK_FALSE(loci[1].freqs.has_rest());
}

TEST_CASE("allele frequency errors") {
  auto parse = [](const char* text) {
    std::istringstream in(text);
    return read_allele_frequencies(in);
  };
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("locus,freq\n"), ParseError);
  CHECK_THROWS_AS(parse("locus,allele,frequency\nD3,12\n"), ParseError);
  CHECK_THROWS_AS(parse("locus,allele,frequency\nD3,12,abc\n"), ParseError);
  CHECK_THROWS_AS(parse("locus,allele,frequency\nD3,12,-0.1\n"), ParseError);
  CHECK_THROWS_AS(parse("locus,allele,frequency\nD3,12,0.1\nD3,12,0.2\n"), ParseError);
  CHECK_THROWS_AS(parse("locus,allele,frequency\nD3,12,0.8\nD3,13,0.7\n"), ParseError);
  try {
    parse("locus,allele,frequency\nD3,12,0.1\nD3,13,x\n");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("table files") {
  std::istringstream one("profile,allele_1,allele_2\n1,1,1\n2,2,0\n");
  const auto t = read_tables(one);
  REQUIRE(t.size() == 1);
  CHECK(t[0].table == CountTable::from_rows({{1, 1}, {2, 0}}));

  std::istringstream many(
      "# rng=mt19937_64 seed=1\n"
      "table,profile,allele_1,allele_2\n"
      "x,1,1,1\nx,2,0,2\ny,1,2,0\n");
  const auto m = read_tables(many);
  REQUIRE(m.size() == 2);
  CHECK(m[0].id == "x");
  CHECK(m[1].table.profiles() == 1);

  auto parse = [](const char* text) {
    std::istringstream in(text);
    return read_tables(in);
  };
  CHECK_THROWS_AS(parse("profile\n"), ParseError);
  CHECK_THROWS_AS(parse("profile,allele_1\n"), ParseError);
  CHECK_THROWS_AS(parse("profile,allele_1,allele_2\n1,1\n"), ParseError);
  CHECK_THROWS_AS(parse("profile,allele_1,allele_2\n1,1,-1\n"), ParseError);
  CHECK_THROWS_AS(parse("profile,allele_1,allele_2\n1,1,1.5\n"), ParseError);
  CHECK_THROWS_AS(parse("table,profile,a\nx,1,1\ny,1,1\nx,2,1\n"), ParseError);
}

TEST_CASE("writing") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK(csv_field("(2)@a1") == "(2)@a1");
  CHECK(csv_field("(2,2)@a1/a2") == "\"(2,2)@a1/a2\"");
  CHECK(csv_field("a\"b") == "\"a\"\"b\"");

  std::ostringstream out;
  write_table(out, CountTable::from_rows({{1, 1}, {0, 2}}), "t1");
  CHECK(out.str() == "t1,1,1,1\nt1,2,0,2\n");
  std::istringstream back("table,profile,allele_1,allele_2\n" + out.str());
  CHECK(read_tables(back)[0].table == CountTable::from_rows({{1, 1}, {0, 2}}));
}
