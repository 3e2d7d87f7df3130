#include "jdd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "detail/kernel_math.hpp"
#include "jdd/random.hpp"

namespace jdd {
namespace {

using detail::dot;
using detail::eval_unchecked;

void check_vector(const KernelSpec& spec, std::span<const double> v, const std::string& what) {
  require_finite(v, what);
  if (spec.kind() == KernelKind::ExplicitLinear) {
    if (v.size() != spec.feature_dim()) {
      throw InputError(what + ": dimension " + std::to_string(v.size()) +
                       " does not match linear kernel feature_dim " +
                       std::to_string(spec.feature_dim()));
    }
    const double self = dot(v, v);
    if (self > spec.bound()) {
      throw InputError(what + ": self-similarity " + std::to_string(self) +
                       " exceeds declared kernel bound " + std::to_string(spec.bound()));
    }
  }
}

void fill_gram(const KernelSpec& spec, const Matrix& rows, const Matrix& cols, Matrix& out,
               bool parallel) {
  const auto n_rows = static_cast<std::ptrdiff_t>(rows.rows());
  const std::size_t n_cols = cols.rows();
#pragma omp parallel for schedule(static) if (parallel)
  for (std::ptrdiff_t i = 0; i < n_rows; ++i) {
    const auto r = rows.row(static_cast<std::size_t>(i));
    auto dst = out.row(static_cast<std::size_t>(i));
    for (std::size_t j = 0; j < n_cols; ++j) dst[j] = eval_unchecked(spec, r, cols.row(j));
  }
}

Matrix gram_impl(const KernelSpec& spec, const Matrix& rows, const Matrix& cols, bool parallel) {
  if (rows.empty() || cols.empty()) throw InputError("gram: empty point list");
  if (rows.cols() != cols.cols()) {
    throw InputError("gram: dimension mismatch (" + std::to_string(rows.cols()) + " vs " +
                     std::to_string(cols.cols()) + ")");
  }
  validate_points(spec, rows, "gram rows");
  if (&rows != &cols) validate_points(spec, cols, "gram cols");
  Matrix out(rows.rows(), cols.rows());
  fill_gram(spec, rows, cols, out, parallel);
  return out;
}

}  // namespace

KernelSpec KernelSpec::rbf(double bandwidth) {
  if (!(bandwidth > 0.0) || !std::isfinite(bandwidth)) {
    throw InputError("RBF bandwidth must be a positive finite number, got " +
                     std::to_string(bandwidth));
  }
  return KernelSpec(KernelKind::Rbf, bandwidth, 0, 1.0);
}

KernelSpec KernelSpec::linear(std::size_t feature_dim, double bound) {
  if (feature_dim == 0) throw InputError("linear kernel feature_dim must be positive");
  if (!(bound > 0.0) || !std::isfinite(bound)) {
    throw InputError("kernel bound must be a positive finite number, got " +
                     std::to_string(bound));
  }
  return KernelSpec(KernelKind::ExplicitLinear, 0.0, feature_dim, bound);
}

double kernel_eval(const KernelSpec& spec, std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw InputError("kernel_eval: dimension mismatch (" + std::to_string(a.size()) + " vs " +
                     std::to_string(b.size()) + ")");
  }
  check_vector(spec, a, "kernel_eval first argument");
  check_vector(spec, b, "kernel_eval second argument");
  return eval_unchecked(spec, a, b);
}

double self_similarity(const KernelSpec& spec, std::span<const double> a) {
  check_vector(spec, a, "self_similarity argument");
  return eval_unchecked(spec, a, a);
}

void validate_points(const KernelSpec& spec, const Matrix& points, const char* what) {
  for (std::size_t i = 0; i < points.rows(); ++i) {
    check_vector(spec, points.row(i), std::string(what) + " row " + std::to_string(i));
  }
}

Matrix gram(const KernelSpec& spec, const Matrix& rows, const Matrix& cols) {
  return gram_impl(spec, rows, cols, /*parallel=*/true);
}

GramPair gram_pair(const KernelSpec& kx, const KernelSpec& ky, const PairedSample& a,
                   const PairedSample& b) {
  return GramPair{gram(kx, a.xs(), b.xs()), gram(ky, a.ys(), b.ys()),
                  std::max(kx.bound(), ky.bound())};
}

FunctionBoundReport check_function_bound(const KernelSpec& spec, const Matrix& points,
                                         std::size_t trials, std::uint64_t seed) {
  if (trials == 0) throw InputError("check_function_bound: trials must be >= 1");
  const Matrix g = gram(spec, points, points);
  const std::size_t n = points.rows();

  double max_abs = 0.0;
  std::size_t degenerate = 0;
  const auto n_trials = static_cast<std::ptrdiff_t>(trials);
#pragma omp parallel for schedule(static) reduction(max : max_abs) reduction(+ : degenerate)
  for (std::ptrdiff_t t = 0; t < n_trials; ++t) {
    auto rng = substream(seed, static_cast<std::uint64_t>(t));
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> coeff(n);
    for (auto& c : coeff) c = normal(rng);

    // f(x_i) = (G c)_i and ||f||^2 = c^T G c.
    std::vector<double> values(n, 0.0);
    double norm_sq = 0.0;
    double coeff_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto gi = g.row(i);
      values[i] = dot(gi, coeff);
      norm_sq += coeff[i] * values[i];
      coeff_sq += coeff[i] * coeff[i];
    }
    if (!(norm_sq > 1e-12 * coeff_sq * spec.bound())) {
      ++degenerate;
      continue;
    }
    const double norm = std::sqrt(norm_sq);
    for (double v : values) max_abs = std::max(max_abs, std::abs(v) / norm);
  }
  return FunctionBoundReport{trials, degenerate, max_abs, std::sqrt(spec.bound())};
}

namespace serial {

Matrix gram(const KernelSpec& spec, const Matrix& rows, const Matrix& cols) {
  return gram_impl(spec, rows, cols, /*parallel=*/false);
}

}  // namespace serial

}  // namespace jdd
