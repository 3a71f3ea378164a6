#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "mdm/core_model.hpp"
#include "mdm/mdm_core.hpp"
#include "mdm/moments.hpp"

namespace mdm {

/// Raised before enumerating more than kMaxEnumeratedTables tables.
class SizeGuardError : public Error {
 public:
  using Error::Error;
};

inline constexpr std::uint64_t kMaxEnumeratedTables = 100'000'000;

/// Number of tables with the given row sums over `categories` columns:
/// prod_i C(n_i. + A - 1, A - 1). Saturates at UINT64_MAX.
std::uint64_t table_count(std::span<const int> row_sums, std::size_t categories);

/// Visits every table with fixed row sums (and optionally fixed column
/// sums) exactly once. Rows vary slowest-first; within a row, entries run
/// in descending lexicographic order, e.g. (2,0), (1,1), (0,2).
class TableIterator {
 public:
  struct Sentinel {};

  /// All tables with the given row sums.
  TableIterator(std::vector<int> row_sums, std::size_t categories);
  /// All tables with both margins fixed.
  TableIterator(std::vector<int> row_sums, std::vector<int> col_sums);

  bool done() const { return done_; }
  const IntMatrix& counts() const { return current_; }
  CountTable table() const { return CountTable(current_); }
  void advance();

  /// Jump to the table at 0-based position `index` of the full sequence.
  /// Only available without column constraints.
  void seek(std::uint64_t index);

  // Range-for support.
  TableIterator& begin() { return *this; }
  Sentinel end() const { return {}; }
  CountTable operator*() const { return table(); }
  TableIterator& operator++() {
    advance();
    return *this;
  }
  friend bool operator!=(const TableIterator& it, Sentinel) { return !it.done_; }

 private:
  std::vector<int> caps_for(std::size_t row) const;
  void fill_from(std::size_t row);
  bool advance_row(std::size_t row);

  std::vector<int> row_sums_;
  std::vector<int> col_sums_;
  bool fixed_columns_ = false;
  std::size_t categories_ = 0;
  IntMatrix current_;
  bool done_ = false;
};

/// Every table with the given row sums, lexicographically ordered.
TableIterator enumerate_tables(std::vector<int> row_sums, std::size_t categories);

/// Every table with the given row and column sums.
TableIterator enumerate_tables_with_margins(std::vector<int> row_sums, std::vector<int> col_sums);

/// Brute-force ground truth: exact sums of the closed-form pmf over every
/// table. The default entry points split the table sequence into fixed
/// chunks evaluated with OpenMP and reduced in chunk order, so results do
/// not depend on the thread count. namespace serial holds the single-pass
/// reference versions.
namespace oracle {

using TableFunction = std::function<double(const CountTable&)>;
using TableKey = std::function<std::vector<int>(const CountTable&)>;

/// sum over tables of exp(mdm_log_pmf) * fn(table).
double expectation(const MdmParams& params, const TableFunction& fn);
double pmf_sum(const MdmParams& params);
/// E{prod_ia n_ia^(r_ia)} by enumeration.
double moment(const FactorialOrder& order, const MdmParams& params);
/// Several factorial moments from a single pass over the tables.
std::vector<double> moments(const std::vector<FactorialOrder>& orders, const MdmParams& params);
/// P(n_J* = target) with target rows in subset order.
double profile_marginal(const MdmParams& params, const SubsetSpec& keep, const CountTable& target);
/// P(n_*B = target) where target holds the B columns in subset order.
double allele_marginal(const MdmParams& params, const SubsetSpec& keep, const CountTable& target);
/// P(table | row and column sums) as pmf(table) / sum of pmf over tables
/// sharing both margins.
double margin_conditional(const CountTable& table, const MdmParams& params);
/// Probability mass grouped by key(table).
std::map<std::vector<int>, double> distribution_of(const MdmParams& params, const TableKey& key);

namespace serial {
double expectation(const MdmParams& params, const TableFunction& fn);
double pmf_sum(const MdmParams& params);
double moment(const FactorialOrder& order, const MdmParams& params);
}  // namespace serial

}  // namespace oracle

}  // namespace mdm
