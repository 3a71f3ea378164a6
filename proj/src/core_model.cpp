#include "mdm/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace mdm {

namespace {

double checked_sum(std::span<const double> values, const char* what) {
  if (values.empty()) {
    throw ValidationError(std::string(what) + ": at least one category is required");
  }
  double sum = 0.0;
  for (std::size_t a = 0; a < values.size(); ++a) {
    const double v = values[a];
    if (!std::isfinite(v) || v <= 0.0) {
      std::ostringstream msg;
      msg << what << ": entry " << a << " must be positive and finite (got " << v << ")";
      throw ValidationError(msg.str());
    }
    sum += v;
  }
  return sum;
}

}  // namespace

AlleleFrequencies::AlleleFrequencies(std::vector<double> probs, std::vector<std::string> labels)
    : probs_(std::move(probs)), labels_(std::move(labels)) {
  const double sum = checked_sum(probs_, "allele frequency");
  if (sum > 1.0 + kFrequencySumTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "allele frequencies sum to " << sum << " > 1";
    throw ValidationError(msg.str());
  }
  rest_mass_ = sum >= 1.0 - kFrequencySumTolerance ? 0.0 : 1.0 - sum;
  if (labels_.empty()) {
    for (std::size_t a = 0; a < probs_.size(); ++a) labels_.push_back("a" + std::to_string(a + 1));
  } else if (labels_.size() != probs_.size()) {
    throw ValidationError("allele label count does not match frequency count");
  }
}

std::vector<double> AlleleFrequencies::category_probs() const {
  std::vector<double> out = probs_;
  if (has_rest()) out.push_back(rest_mass_);
  return out;
}

DispersionModel DispersionModel::from_alpha(std::vector<double> alpha) {
  DispersionModel m;
  m.alpha_total_ = checked_sum(alpha, "Dirichlet parameter");
  m.theta_ = 1.0 / (1.0 + m.alpha_total_);
  m.probs_.reserve(alpha.size());
  for (double a : alpha) m.probs_.push_back(a / m.alpha_total_);
  m.alpha_ = std::move(alpha);
  return m;
}

DispersionModel DispersionModel::multinomial(std::vector<double> probs) {
  const double sum = checked_sum(probs, "category probability");
  if (std::abs(sum - 1.0) > 1e-10) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "category probabilities sum to " << sum << ", expected 1";
    throw ValidationError(msg.str());
  }
  DispersionModel m;
  m.probs_ = std::move(probs);
  return m;
}

DispersionModel theta_to_alpha(const AlleleFrequencies& freqs, double theta) {
  if (!(theta >= 0.0 && theta < 1.0)) {
    std::ostringstream msg;
    msg << "theta must lie in [0, 1), got " << theta;
    throw ParameterDomainError(msg.str());
  }
  std::vector<double> probs = freqs.category_probs();
  if (theta == 0.0) return DispersionModel::multinomial(std::move(probs));
  const double scale = (1.0 - theta) / theta;
  std::vector<double> alpha;
  alpha.reserve(probs.size());
  for (double q : probs) alpha.push_back(q * scale);
  auto model = DispersionModel::from_alpha(std::move(alpha));
  return model;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) {
      throw StructuralError("ragged table: row " + std::to_string(r) + " has " +
                                std::to_string(rows[r].size()) + " entries, expected " +
                                std::to_string(cols),
                            StructuralError::Axis::kRow, static_cast<std::ptrdiff_t>(r));
    }
    std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
  }
  return m;
}

std::vector<int> IntMatrix::row_sums() const {
  std::vector<int> out(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    const auto rr = row(r);
    out[r] = std::accumulate(rr.begin(), rr.end(), 0);
  }
  return out;
}

std::vector<int> IntMatrix::col_sums() const {
  std::vector<int> out(cols_, 0);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out[c] += (*this)(r, c);
  return out;
}

CountTable::CountTable(IntMatrix counts)
    : counts_(std::move(counts)),
      row_sums_(counts_.row_sums()),
      col_sums_(counts_.col_sums()),
      total_(std::accumulate(row_sums_.begin(), row_sums_.end(), 0)) {}

CountTable::CountTable(IntMatrix counts, std::vector<int> declared_row_sums)
    : counts_(std::move(counts)),
      row_sums_(std::move(declared_row_sums)),
      col_sums_(counts_.col_sums()),
      total_(std::accumulate(row_sums_.begin(), row_sums_.end(), 0)) {}

CountTable CountTable::from_rows(const std::vector<std::vector<int>>& rows) {
  return CountTable(IntMatrix::from_rows(rows));
}

void validate_table(const CountTable& table) {
  using Axis = StructuralError::Axis;
  if (table.profiles() == 0) {
    throw StructuralError("table has no profiles; at least one is required", Axis::kTable, -1);
  }
  if (table.categories() == 0) {
    throw StructuralError("table has no allele columns", Axis::kTable, -1);
  }
  if (table.row_sums().size() != table.profiles()) {
    throw StructuralError("row-sum vector length does not match profile count", Axis::kTable,
                          -1);
  }
  const IntMatrix& m = table.counts();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    int sum = 0;
    for (std::size_t a = 0; a < m.cols(); ++a) {
      if (m(i, a) < 0) {
        throw StructuralError("negative count at row " + std::to_string(i) + ", column " +
                                  std::to_string(a),
                              Axis::kRow, static_cast<std::ptrdiff_t>(i));
      }
      sum += m(i, a);
    }
    if (sum != table.row_sums()[i]) {
      throw StructuralError("row " + std::to_string(i) + " counts sum to " + std::to_string(sum) +
                                " but its row sum is " + std::to_string(table.row_sums()[i]),
                            Axis::kRow, static_cast<std::ptrdiff_t>(i));
    }
  }
  const auto cols = m.col_sums();
  for (std::size_t a = 0; a < cols.size(); ++a) {
    if (cols[a] != table.col_sums()[a]) {
      throw StructuralError("column " + std::to_string(a) + " sum mismatch", Axis::kColumn,
                            static_cast<std::ptrdiff_t>(a));
    }
  }
  if (std::accumulate(cols.begin(), cols.end(), 0) != table.total()) {
    throw StructuralError("row and column totals disagree", Axis::kTable, -1);
  }
}

SubsetSpec::SubsetSpec(std::vector<std::size_t> indices, std::size_t universe)
    : indices_(std::move(indices)), universe_(universe) {
  if (indices_.empty()) throw ValidationError("subset must be nonempty");
  std::sort(indices_.begin(), indices_.end());
  if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end()) {
    throw ValidationError("subset contains duplicate indices");
  }
  if (indices_.back() >= universe_) {
    throw ValidationError("subset index " + std::to_string(indices_.back()) +
                          " out of range for " + std::to_string(universe_) + " elements");
  }
}

bool SubsetSpec::contains(std::size_t i) const {
  return std::binary_search(indices_.begin(), indices_.end(), i);
}

std::vector<std::size_t> SubsetSpec::complement() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < universe_; ++i)
    if (!contains(i)) out.push_back(i);
  return out;
}

}  // namespace mdm
