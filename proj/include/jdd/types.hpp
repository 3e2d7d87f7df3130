#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace jdd {

/// Caller supplied data or parameters that violate an operation's contract.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A file does not follow the expected binary or text layout.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two inputs are individually well formed but disagree with each other.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense row-major matrix of doubles. When used as a point set, each row is
/// one observation vector.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix from_rows(const std::vector<std::vector<double>>& rows);
  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0; }

  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const noexcept {
    return {data_.data() + i * cols_, cols_};
  }

  std::span<const double> values() const noexcept { return data_; }
  std::span<double> values() noexcept { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// m paired observations (x_i, y_i). xs is m x d_x, ys is m x d_y.
class PairedSample {
 public:
  PairedSample() = default;
  /// Throws InputError unless both matrices have the same, nonzero row count
  /// and nonzero column counts.
  PairedSample(Matrix xs, Matrix ys);

  std::size_t size() const noexcept { return xs_.rows(); }
  std::size_t dim_x() const noexcept { return xs_.cols(); }
  std::size_t dim_y() const noexcept { return ys_.cols(); }
  const Matrix& xs() const noexcept { return xs_; }
  const Matrix& ys() const noexcept { return ys_; }

  friend bool operator==(const PairedSample&, const PairedSample&) = default;

 private:
  Matrix xs_;
  Matrix ys_;
};

/// Throws InputError if any entry is NaN or infinite. `what` names the input.
void require_finite(std::span<const double> values, const std::string& what);

}  // namespace jdd
