#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mdm {

// ---------------------------------------------------------------------------
// Errors

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter lies outside its mathematical domain (e.g. theta >= 1).
class ParameterDomainError : public Error {
 public:
  using Error::Error;
};

/// Input values fail validation (non-positive frequency, bad subset, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A table's stored margins disagree with its counts.
class StructuralError : public Error {
 public:
  enum class Axis { kRow, kColumn, kTable };
  StructuralError(const std::string& what, Axis axis, std::ptrdiff_t index)
      : Error(what), axis_(axis), index_(index) {}
  Axis axis() const { return axis_; }
  /// Offending row/column, or -1 for whole-table problems.
  std::ptrdiff_t index() const { return index_; }

 private:
  Axis axis_;
  std::ptrdiff_t index_;
};

// ---------------------------------------------------------------------------

inline constexpr double kFrequencySumTolerance = 1e-12;

/// Allele probabilities q with an optional implicit rest class holding the
/// mass not assigned to a listed allele.
class AlleleFrequencies {
 public:
  /// Validates the listed probabilities; a sum below 1 infers the rest mass.
  explicit AlleleFrequencies(std::vector<double> probs,
                             std::vector<std::string> labels = {});

  std::span<const double> probs() const { return probs_; }
  double rest_mass() const { return rest_mass_; }
  bool has_rest() const { return rest_mass_ > 0.0; }
  std::size_t allele_count() const { return probs_.size(); }
  /// Listed alleles plus the rest class, if any.
  std::size_t category_count() const { return probs_.size() + (has_rest() ? 1 : 0); }
  /// Probabilities over all categories; the rest class is last.
  std::vector<double> category_probs() const;
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  std::vector<double> probs_;
  std::vector<std::string> labels_;
  double rest_mass_ = 0.0;
};

/// Overdispersion state: theta together with the Dirichlet parameters
/// alpha_a = q_a (1 - theta) / theta. theta == 0 is the independent
/// multinomial limit, in which alpha is absent.
class DispersionModel {
 public:
  /// Dirichlet parameters given directly; theta = 1 / (1 + sum(alpha)).
  static DispersionModel from_alpha(std::vector<double> alpha);
  /// theta == 0 state over the given category probabilities.
  static DispersionModel multinomial(std::vector<double> probs);

  double theta() const { return theta_; }
  bool is_multinomial_limit() const { return theta_ == 0.0; }
  std::size_t category_count() const { return probs_.size(); }
  /// q over all categories (rest class included).
  std::span<const double> probs() const { return probs_; }
  /// Empty in the multinomial limit.
  std::span<const double> alpha() const { return alpha_; }
  double alpha_total() const { return alpha_total_; }

 private:
  DispersionModel() = default;
  double theta_ = 0.0;
  std::vector<double> probs_;
  std::vector<double> alpha_;
  double alpha_total_ = 0.0;
};

/// alpha_a = q_a (1 - theta) / theta over every category of freqs.
DispersionModel theta_to_alpha(const AlleleFrequencies& freqs, double theta);

/// Dense row-major nonnegative integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols, int fill = 0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  /// Throws StructuralError on ragged input.
  static IntMatrix from_rows(const std::vector<std::vector<int>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  int operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  int& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::span<const int> row(std::size_t r) const {
    return std::span<const int>(data_).subspan(r * cols_, cols_);
  }
  std::span<int> row(std::size_t r) { return std::span<int>(data_).subspan(r * cols_, cols_); }
  std::span<const int> data() const { return data_; }

  std::vector<int> row_sums() const;
  std::vector<int> col_sums() const;

  bool operator==(const IntMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<int> data_;
};

/// I x A table of counts with its row sums n_i., column sums n_.a and
/// total n_.. (profiles in rows, alleles in columns).
class CountTable {
 public:
  CountTable() = default;
  /// Margins computed from the counts.
  explicit CountTable(IntMatrix counts);
  /// Row sums supplied by the caller; validate_table checks them.
  CountTable(IntMatrix counts, std::vector<int> declared_row_sums);
  static CountTable from_rows(const std::vector<std::vector<int>>& rows);

  const IntMatrix& counts() const { return counts_; }
  std::size_t profiles() const { return counts_.rows(); }
  std::size_t categories() const { return counts_.cols(); }
  int operator()(std::size_t i, std::size_t a) const { return counts_(i, a); }
  std::span<const int> row(std::size_t i) const { return counts_.row(i); }
  const std::vector<int>& row_sums() const { return row_sums_; }
  const std::vector<int>& col_sums() const { return col_sums_; }
  int total() const { return total_; }

  bool operator==(const CountTable& other) const { return counts_ == other.counts_; }

 private:
  IntMatrix counts_;
  std::vector<int> row_sums_;
  std::vector<int> col_sums_;
  int total_ = 0;
};

/// Throws StructuralError naming the offending row or column.
void validate_table(const CountTable& table);

/// Pooled column count n_.a and pooled cumulative sum S_.,a-1 at one
/// chain step, for I contributors of two alleles each.
struct MarginState {
  int n_col = 0;
  int s_prev = 0;
  int n_contributors = 2;

  int pooled_capacity() const { return 2 * n_contributors; }
  bool feasible() const {
    return n_contributors >= 1 && n_col >= 0 && s_prev >= 0 &&
           n_col + s_prev <= pooled_capacity();
  }
  auto operator<=>(const MarginState&) const = default;
};

/// Strictly increasing, in-range index set (alleles or profiles).
class SubsetSpec {
 public:
  /// Indices are sorted; duplicates, out-of-range and empty sets throw.
  SubsetSpec(std::vector<std::size_t> indices, std::size_t universe);

  std::span<const std::size_t> indices() const { return indices_; }
  std::size_t size() const { return indices_.size(); }
  std::size_t universe() const { return universe_; }
  bool contains(std::size_t i) const;
  bool is_proper() const { return indices_.size() < universe_; }
  std::vector<std::size_t> complement() const;

 private:
  std::vector<std::size_t> indices_;
  std::size_t universe_;
};

}  // namespace mdm
