#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "jdd/kernels.hpp"
#include "jdd/types.hpp"

namespace jdd {

/// An empirical joint distribution discrepancy (unsquared).
struct JddValue {
  double value = 0.0;        // sqrt(max(squared_sum, 0))
  std::size_t m = 0;         // size of the first sample
  std::size_t n = 0;         // size of the second sample
  double squared_sum = 0.0;  // raw radicand before clamping
  /// The radicand came out below -1e-9, which floating point alone cannot
  /// explain for a positive semidefinite kernel.
  bool negative_radicand = false;
};

/// Biased empirical JDD between p and q:
///
///   sqrt( 1/m^2 sum_ij kx(x_i,x_j) ky(y_i,y_j)
///       + 1/n^2 sum_ij kx(x'_i,x'_j) ky(y'_i,y'_j)
///       - 2/(mn) sum_ij kx(x_i,x'_j) ky(y_i,y'_j) )
///
/// m != n is allowed. Rows of the three gram-product sums are distributed
/// over OpenMP threads; each row is accumulated sequentially in extended
/// precision and rows are combined in index order, so the result does not
/// depend on the thread count.
JddValue jdd_biased(const KernelSpec& kx, const KernelSpec& ky, const PairedSample& p,
                    const PairedSample& q);

/// Same quantity by direct nested loops over kernel_eval with compensated
/// summation and no gram materialization. Intended for m, n <= 500.
JddValue jdd_naive_oracle(const KernelSpec& kx, const KernelSpec& ky, const PairedSample& p,
                          const PairedSample& q);

/// Explicit mean embeddings with identity features: the Frobenius norm of
/// (1/m) sum x_i y_i^T - (1/n) sum x'_i y'_i^T. Equals jdd_biased under
/// linear kernels.
JddValue jdd_embedding_oracle(std::size_t feature_dim_x, std::size_t feature_dim_y,
                              const PairedSample& p, const PairedSample& q);

/// Biased MMD on a single marginal. Baseline for contrasting marginal and
/// joint sensitivity.
double mmd_biased(const KernelSpec& k, const Matrix& a, const Matrix& b);

/// One assignment of Rademacher signs.
struct RademacherDraw {
  std::vector<std::int8_t> signs;  // each +1 or -1
  std::uint64_t index = 0;         // substream index the signs came from

  /// Uniform i.i.d. signs from substream (seed, index).
  static RademacherDraw generate(std::size_t m, std::uint64_t seed, std::uint64_t index);
};

/// (1/m) * sqrt( sum_ij s_i s_j kx(x_i,x_j) ky(y_i,y_j) ): the supremum over
/// the unit ball for one sign assignment.
double rademacher_draw_value(const KernelSpec& kx, const KernelSpec& ky, const PairedSample& s,
                             const RademacherDraw& draw);

struct RademacherEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t trials = 0;
};

/// Monte Carlo estimate of the joint Rademacher average. Trial t uses
/// RademacherDraw::generate(m, seed, t).
RademacherEstimate rademacher_mc_estimate(const KernelSpec& kx, const KernelSpec& ky,
                                          const PairedSample& s, std::size_t trials,
                                          std::uint64_t seed);

/// (1/m) * sqrt( sum_i kx(x_i,x_i) ky(y_i,y_i) ), the Jensen upper bound on
/// the joint Rademacher average. Never exceeds rademacher_uniform_bound.
double rademacher_jensen_bound(const KernelSpec& kx, const KernelSpec& ky, const PairedSample& s);

/// K / sqrt(m), with K = max of the two kernel bounds.
double rademacher_uniform_bound(const KernelSpec& kx, const KernelSpec& ky, std::size_t m);

namespace serial {

/// Single-threaded reference for jdd::jdd_biased.
JddValue jdd_biased(const KernelSpec& kx, const KernelSpec& ky, const PairedSample& p,
                    const PairedSample& q);

}  // namespace serial

}  // namespace jdd
