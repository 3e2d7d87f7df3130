#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "jdd/types.hpp"

namespace jdd {

enum class KernelKind { Rbf, ExplicitLinear };

/// A bounded kernel, 0 <= k(a, b) <= bound().
///
/// Rbf: k(a, b) = exp(-|a - b|^2 / bandwidth^2). Note the denominator is
/// bandwidth^2, not 2 * bandwidth^2. The bound is always 1.
///
/// ExplicitLinear: k(a, b) = <a, b>, i.e. vectors are their own features.
/// Only meant for validating the other estimators against explicit feature
/// maps. Data with a self-similarity <a, a> above the declared bound is
/// rejected; nonnegative coordinates additionally keep every value >= 0.
class KernelSpec {
 public:
  static KernelSpec rbf(double bandwidth);
  static KernelSpec linear(std::size_t feature_dim, double bound);

  KernelKind kind() const noexcept { return kind_; }
  double bandwidth() const noexcept { return bandwidth_; }
  std::size_t feature_dim() const noexcept { return feature_dim_; }
  double bound() const noexcept { return bound_; }

  friend bool operator==(const KernelSpec&, const KernelSpec&) = default;

 private:
  KernelSpec(KernelKind kind, double bandwidth, std::size_t feature_dim, double bound)
      : kind_(kind), bandwidth_(bandwidth), feature_dim_(feature_dim), bound_(bound) {}

  KernelKind kind_ = KernelKind::Rbf;
  double bandwidth_ = 0.0;
  std::size_t feature_dim_ = 0;
  double bound_ = 1.0;
};

/// k(a, b). Throws InputError on dimension mismatch, non-finite entries, or
/// (linear kernel) a self-similarity above the bound.
double kernel_eval(const KernelSpec& spec, std::span<const double> a, std::span<const double> b);

/// k(a, a).
double self_similarity(const KernelSpec& spec, std::span<const double> a);

/// Checks that every row of `points` can be fed to `spec`. Throws InputError
/// otherwise.
void validate_points(const KernelSpec& spec, const Matrix& points, const char* what = "points");

/// Gram matrix G(i, j) = k(rows[i], cols[j]). Rows are split across OpenMP
/// threads; each entry is computed independently, so the result is bitwise
/// identical to serial::gram for any thread count.
Matrix gram(const KernelSpec& spec, const Matrix& rows, const Matrix& cols);

/// The two gram matrices evaluated on a sample pair.
struct GramPair {
  Matrix gx;
  Matrix gy;
  double bound = 1.0;
};

GramPair gram_pair(const KernelSpec& kx, const KernelSpec& ky, const PairedSample& a,
                   const PairedSample& b);

/// Outcome of probing |f(x)| <= sqrt(K) with random unit-norm RKHS functions.
struct FunctionBoundReport {
  std::size_t trials = 0;
  std::size_t degenerate_draws = 0;  // draws whose norm was numerically zero
  double max_abs_value = 0.0;        // max over non-degenerate draws and points
  double sqrt_bound = 1.0;

  bool holds(double tolerance = 1e-9) const noexcept {
    return max_abs_value <= sqrt_bound + tolerance;
  }
};

/// Draws `trials` functions f = sum_j c_j phi(p_j) / ||.|| with Gaussian
/// coefficients over `points`, evaluates |f| at every point and reports the
/// largest value seen. Draw t uses substream (seed, t).
FunctionBoundReport check_function_bound(const KernelSpec& spec, const Matrix& points,
                                         std::size_t trials, std::uint64_t seed);

namespace serial {

/// Single-threaded reference for jdd::gram.
Matrix gram(const KernelSpec& spec, const Matrix& rows, const Matrix& cols);

}  // namespace serial

}  // namespace jdd
