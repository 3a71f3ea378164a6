#include "mdm/enumeration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "mdm/log_math.hpp"

namespace mdm {

namespace {

__extension__ using Wide = unsigned __int128;

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kSaturated / a) return kSaturated;
  return a * b;
}

// C(n, k) with saturation; exact while it fits.
std::uint64_t choose(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  Wide acc = 1;
  for (int j = 1; j <= k; ++j) {
    acc = acc * static_cast<unsigned>(n - k + j) / static_cast<unsigned>(j);
    if (acc > kSaturated) return kSaturated;
  }
  return static_cast<std::uint64_t>(acc);
}

std::uint64_t compositions(int total, std::size_t parts) {
  if (parts == 0) return total == 0 ? 1 : 0;
  return choose(total + static_cast<int>(parts) - 1, static_cast<int>(parts) - 1);
}

// Largest composition (lexicographically) of `total` under caps.
void greedy_fill(std::span<int> row, std::span<const int> caps, int total) {
  for (std::size_t j = 0; j < row.size(); ++j) {
    row[j] = std::min(caps[j], total);
    total -= row[j];
  }
}

void check_guard(std::span<const int> row_sums, std::size_t categories) {
  for (int r : row_sums) {
    if (r < 0) throw ValidationError("row sums must be nonnegative");
  }
  const auto count = table_count(row_sums, categories);
  if (count > kMaxEnumeratedTables) {
    throw SizeGuardError("refusing to enumerate " +
                         (count == kSaturated ? std::string("more than 2^64")
                                              : std::to_string(count)) +
                         " tables (limit " + std::to_string(kMaxEnumeratedTables) + ")");
  }
}

}  // namespace

std::uint64_t table_count(std::span<const int> row_sums, std::size_t categories) {
  std::uint64_t count = 1;
  for (int r : row_sums) count = saturating_mul(count, compositions(r, categories));
  return count;
}

TableIterator::TableIterator(std::vector<int> row_sums, std::size_t categories)
    : row_sums_(std::move(row_sums)), categories_(categories) {
  if (categories_ == 0) throw ValidationError("at least one category is required");
  check_guard(row_sums_, categories_);
  current_ = IntMatrix(row_sums_.size(), categories_);
  fill_from(0);
}

TableIterator::TableIterator(std::vector<int> row_sums, std::vector<int> col_sums)
    : row_sums_(std::move(row_sums)),
      col_sums_(std::move(col_sums)),
      fixed_columns_(true),
      categories_(col_sums_.size()) {
  if (categories_ == 0) throw ValidationError("at least one category is required");
  if (row_sums_.empty()) throw ValidationError("at least one profile is required");
  for (int c : col_sums_) {
    if (c < 0) throw ValidationError("column sums must be nonnegative");
  }
  if (std::accumulate(row_sums_.begin(), row_sums_.end(), 0) !=
      std::accumulate(col_sums_.begin(), col_sums_.end(), 0)) {
    throw StructuralError("row and column sums have different totals",
                          StructuralError::Axis::kTable, -1);
  }
  check_guard(row_sums_, categories_);
  current_ = IntMatrix(row_sums_.size(), categories_);
  fill_from(0);
}

std::vector<int> TableIterator::caps_for(std::size_t row) const {
  if (!fixed_columns_) return std::vector<int>(categories_, row_sums_[row]);
  std::vector<int> caps = col_sums_;
  for (std::size_t k = 0; k < row; ++k)
    for (std::size_t a = 0; a < categories_; ++a) caps[a] -= current_(k, a);
  return caps;
}

void TableIterator::fill_from(std::size_t row) {
  for (std::size_t i = row; i < row_sums_.size(); ++i) {
    const auto caps = caps_for(i);
    // With both margins fixed the last row is whatever the columns leave.
    if (fixed_columns_ && i + 1 == row_sums_.size()) {
      std::copy(caps.begin(), caps.end(), current_.row(i).begin());
    } else {
      greedy_fill(current_.row(i), caps, row_sums_[i]);
    }
  }
}

bool TableIterator::advance_row(std::size_t row) {
  const auto caps = caps_for(row);
  auto r = current_.row(row);
  int suffix = r.back();
  int suffix_caps = caps.back();
  for (std::size_t j = r.size() - 1; j-- > 0;) {
    if (r[j] > 0 && suffix_caps >= suffix + 1) {
      --r[j];
      greedy_fill(r.subspan(j + 1), std::span<const int>(caps).subspan(j + 1), suffix + 1);
      return true;
    }
    suffix += r[j];
    suffix_caps += caps[j];
  }
  return false;
}

void TableIterator::advance() {
  if (done_) return;
  std::size_t iterable = row_sums_.size();
  if (fixed_columns_) --iterable;
  for (std::size_t i = iterable; i-- > 0;) {
    if (advance_row(i)) {
      fill_from(i + 1);
      return;
    }
  }
  done_ = true;
}

void TableIterator::seek(std::uint64_t index) {
  if (fixed_columns_) throw Error("seek is not supported with fixed column sums");
  const std::uint64_t total = table_count(row_sums_, categories_);
  if (index >= total) {
    done_ = true;
    return;
  }
  done_ = false;
  for (std::size_t i = row_sums_.size(); i-- > 0;) {
    const std::uint64_t radix = compositions(row_sums_[i], categories_);
    std::uint64_t rank = index % radix;
    index /= radix;
    auto r = current_.row(i);
    int remaining = row_sums_[i];
    for (std::size_t j = 0; j + 1 < categories_; ++j) {
      const std::size_t parts_after = categories_ - j - 1;
      for (int v = remaining; v >= 0; --v) {
        const std::uint64_t block = compositions(remaining - v, parts_after);
        if (rank < block) {
          r[j] = v;
          remaining -= v;
          break;
        }
        rank -= block;
      }
    }
    r[categories_ - 1] = remaining;
  }
}

TableIterator enumerate_tables(std::vector<int> row_sums, std::size_t categories) {
  return TableIterator(std::move(row_sums), categories);
}

TableIterator enumerate_tables_with_margins(std::vector<int> row_sums, std::vector<int> col_sums) {
  return TableIterator(std::move(row_sums), std::move(col_sums));
}

namespace oracle {

namespace {

constexpr std::uint64_t kChunks = 256;

double weighted(const CountTable& table, const MdmParams& params, const TableFunction& fn) {
  const LogProb lp = mdm_log_pmf(table, params);
  if (lp.is_impossible()) return 0.0;
  return lp.prob() * fn(table);
}

}  // namespace

double expectation(const MdmParams& params, const TableFunction& fn) {
  const std::uint64_t total = table_count(params.row_sums, params.categories());
  check_guard(params.row_sums, params.categories());
  const std::uint64_t chunks = std::min(total, kChunks);
  std::vector<CompensatedSum> partial(chunks);
  std::vector<std::string> errors(chunks);

#pragma omp parallel for schedule(dynamic)
  for (std::int64_t c = 0; c < static_cast<std::int64_t>(chunks); ++c) {
    try {
      const auto uc = static_cast<std::uint64_t>(c);
      const std::uint64_t begin = uc * total / chunks;
      const std::uint64_t end = (uc + 1) * total / chunks;
      TableIterator it(params.row_sums, params.categories());
      it.seek(begin);
      for (std::uint64_t k = begin; k < end; ++k, it.advance()) {
        partial[uc].add(weighted(it.table(), params, fn));
      }
    } catch (const std::exception& e) {
      errors[static_cast<std::size_t>(c)] = e.what();
    }
  }
  for (const auto& e : errors) {
    if (!e.empty()) throw Error(e);
  }
  CompensatedSum sum;
  for (const auto& p : partial) sum.add(p);
  return sum.value();
}

double pmf_sum(const MdmParams& params) {
  return expectation(params, [](const CountTable&) { return 1.0; });
}

namespace {

double falling_product(const CountTable& table, const FactorialOrder& order) {
  double v = 1.0;
  for (std::size_t i = 0; i < table.profiles(); ++i)
    for (std::size_t a = 0; a < table.categories(); ++a) {
      const int r = order.orders()(i, a);
      if (r > 0) v *= falling_factorial(table(i, a), r);
    }
  return v;
}

}  // namespace

double moment(const FactorialOrder& order, const MdmParams& params) {
  return expectation(params,
                     [&order](const CountTable& t) { return falling_product(t, order); });
}

std::vector<double> moments(const std::vector<FactorialOrder>& orders, const MdmParams& params) {
  // Sparse (cell, order) lists keep the inner loop short.
  std::vector<std::vector<std::pair<std::size_t, int>>> sparse(orders.size());
  for (std::size_t k = 0; k < orders.size(); ++k) {
    const auto& m = orders[k].orders();
    if (m.rows() != params.profiles() || m.cols() != params.categories()) {
      throw ValidationError("factorial order shape does not match the model");
    }
    for (std::size_t c = 0; c < m.data().size(); ++c)
      if (m.data()[c] > 0) sparse[k].emplace_back(c, m.data()[c]);
  }
  check_guard(params.row_sums, params.categories());
  const std::uint64_t total = table_count(params.row_sums, params.categories());
  const std::uint64_t chunks = std::min(total, kChunks);
  std::vector<std::vector<CompensatedSum>> partial(chunks,
                                                   std::vector<CompensatedSum>(orders.size()));
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t c = 0; c < static_cast<std::int64_t>(chunks); ++c) {
    const auto uc = static_cast<std::uint64_t>(c);
    const std::uint64_t begin = uc * total / chunks;
    const std::uint64_t end = (uc + 1) * total / chunks;
    TableIterator it(params.row_sums, params.categories());
    it.seek(begin);
    for (std::uint64_t t = begin; t < end; ++t, it.advance()) {
      const double p = mdm_log_pmf(it.table(), params).prob();
      const auto cells = it.counts().data();
      for (std::size_t k = 0; k < sparse.size(); ++k) {
        double v = p;
        for (const auto& [cell, r] : sparse[k]) v *= falling_factorial(cells[cell], r);
        partial[uc][k].add(v);
      }
    }
  }
  std::vector<double> out(orders.size());
  for (std::size_t k = 0; k < orders.size(); ++k) {
    CompensatedSum sum;
    for (const auto& p : partial) sum.add(p[k]);
    out[k] = sum.value();
  }
  return out;
}

double profile_marginal(const MdmParams& params, const SubsetSpec& keep,
                        const CountTable& target) {
  return expectation(params, [&](const CountTable& t) {
    for (std::size_t k = 0; k < keep.size(); ++k) {
      const auto row = t.row(keep.indices()[k]);
      if (!std::equal(row.begin(), row.end(), target.row(k).begin())) return 0.0;
    }
    return 1.0;
  });
}

double allele_marginal(const MdmParams& params, const SubsetSpec& keep,
                       const CountTable& target) {
  return expectation(params, [&](const CountTable& t) {
    for (std::size_t i = 0; i < t.profiles(); ++i)
      for (std::size_t k = 0; k < keep.size(); ++k)
        if (t(i, keep.indices()[k]) != target(i, k)) return 0.0;
    return 1.0;
  });
}

double margin_conditional(const CountTable& table, const MdmParams& params) {
  validate_table(table);
  CompensatedSum denom;
  for (const CountTable& t : enumerate_tables_with_margins(table.row_sums(), table.col_sums())) {
    denom.add(mdm_log_pmf(t, params).prob());
  }
  return mdm_log_pmf(table, params).prob() / denom.value();
}

std::map<std::vector<int>, double> distribution_of(const MdmParams& params, const TableKey& key) {
  std::map<std::vector<int>, CompensatedSum> acc;
  for (const CountTable& t : enumerate_tables(params.row_sums, params.categories())) {
    acc[key(t)].add(mdm_log_pmf(t, params).prob());
  }
  std::map<std::vector<int>, double> out;
  for (const auto& [k, v] : acc) out.emplace(k, v.value());
  return out;
}

namespace serial {

double expectation(const MdmParams& params, const TableFunction& fn) {
  CompensatedSum sum;
  for (const CountTable& t : enumerate_tables(params.row_sums, params.categories())) {
    sum.add(weighted(t, params, fn));
  }
  return sum.value();
}

double pmf_sum(const MdmParams& params) {
  return expectation(params, [](const CountTable&) { return 1.0; });
}

double moment(const FactorialOrder& order, const MdmParams& params) {
  return expectation(params,
                     [&order](const CountTable& t) { return falling_product(t, order); });
}

}  // namespace serial

}  // namespace oracle

}  // namespace mdm
