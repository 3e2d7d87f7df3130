#include "jdd/types.hpp"

#include <cmath>

namespace jdd {

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Matrix out(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) {
      throw InputError("Matrix::from_rows: ragged rows (row " + std::to_string(i) + " has " +
                       std::to_string(rows[i].size()) + " entries, expected " +
                       std::to_string(cols) + ")");
    }
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = rows[i][j];
  }
  return out;
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  std::vector<std::vector<double>> copy;
  copy.reserve(rows.size());
  for (const auto& r : rows) copy.emplace_back(r);
  return from_rows(copy);
}

PairedSample::PairedSample(Matrix xs, Matrix ys) : xs_(std::move(xs)), ys_(std::move(ys)) {
  if (xs_.rows() == 0) throw InputError("PairedSample: sample must contain at least one pair");
  if (xs_.rows() != ys_.rows()) {
    throw InputError("PairedSample: " + std::to_string(xs_.rows()) + " x-rows but " +
                     std::to_string(ys_.rows()) + " y-rows");
  }
  if (xs_.cols() == 0 || ys_.cols() == 0) {
    throw InputError("PairedSample: observation dimensions must be positive");
  }
}

void require_finite(std::span<const double> values, const std::string& what) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw InputError(what + ": non-finite entry at position " + std::to_string(i));
    }
  }
}

}  // namespace jdd
