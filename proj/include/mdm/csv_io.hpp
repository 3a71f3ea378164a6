#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "mdm/core_model.hpp"

namespace mdm {

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct LocusFrequencies {
  std::string locus;
  AlleleFrequencies freqs;
};

/// Reads `locus,allele,frequency` rows; loci keep their first-seen order.
/// Blank lines and lines starting with '#' are ignored.
std::vector<LocusFrequencies> read_allele_frequencies(std::istream& in);

struct NamedTable {
  std::string id;
  CountTable table;
};

/// Reads `profile,allele_1,...,allele_A` rows as one table, or
/// `table,profile,allele_1,...` rows as several tables grouped by id.
std::vector<NamedTable> read_tables(std::istream& in);

/// 17 significant digits, round-trippable.
std::string format_double(double v);

/// Quotes a field if it contains a comma or quote.
std::string csv_field(std::string_view v);

void write_table(std::ostream& out, const CountTable& table, std::string_view id = {});

}  // namespace mdm
