#include "jdd/discrepancy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "detail/kernel_math.hpp"
#include "jdd/random.hpp"

namespace jdd {
namespace {

using detail::eval_unchecked;

constexpr double kNegativeRadicandTolerance = 1e-9;

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double v) noexcept {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

void require_compatible(const PairedSample& p, const PairedSample& q, const char* op) {
  if (p.size() == 0 || q.size() == 0) {
    throw InputError(std::string(op) + ": samples must be non-empty");
  }
  if (p.dim_x() != q.dim_x() || p.dim_y() != q.dim_y()) {
    throw InputError(std::string(op) + ": dimension mismatch, p is (" +
                     std::to_string(p.dim_x()) + ", " + std::to_string(p.dim_y()) +
                     ") but q is (" + std::to_string(q.dim_x()) + ", " +
                     std::to_string(q.dim_y()) + ")");
  }
}

// sum_ij entry(i, j), rows accumulated independently in long double and
// combined in row order.
template <typename Entry>
long double ordered_sum(std::size_t rows, std::size_t cols, Entry entry, bool parallel) {
  std::vector<long double> row_sums(rows, 0.0L);
  const auto n_rows = static_cast<std::ptrdiff_t>(rows);
#pragma omp parallel for schedule(static) if (parallel)
  for (std::ptrdiff_t i = 0; i < n_rows; ++i) {
    long double acc = 0.0L;
    for (std::size_t j = 0; j < cols; ++j) acc += entry(static_cast<std::size_t>(i), j);
    row_sums[static_cast<std::size_t>(i)] = acc;
  }
  long double total = 0.0L;
  for (long double r : row_sums) total += r;
  return total;
}

long double joint_gram_sum(const KernelSpec& kx, const KernelSpec& ky, const PairedSample& a,
                           const PairedSample& b, bool parallel) {
  return ordered_sum(
      a.size(), b.size(),
      [&](std::size_t i, std::size_t j) {
        return eval_unchecked(kx, a.xs().row(i), b.xs().row(j)) *
               eval_unchecked(ky, a.ys().row(i), b.ys().row(j));
      },
      parallel);
}

JddValue finish(long double radicand, std::size_t m, std::size_t n) {
  JddValue out;
  out.m = m;
  out.n = n;
  out.squared_sum = static_cast<double>(radicand);
  out.value = std::sqrt(std::max(out.squared_sum, 0.0));
  out.negative_radicand = out.squared_sum < -kNegativeRadicandTolerance;
  return out;
}

JddValue jdd_biased_impl(const KernelSpec& kx, const KernelSpec& ky, const PairedSample& p,
                         const PairedSample& q, bool parallel) {
  require_compatible(p, q, "jdd_biased");
  validate_points(kx, p.xs(), "p.xs");
  validate_points(ky, p.ys(), "p.ys");
  validate_points(kx, q.xs(), "q.xs");
  validate_points(ky, q.ys(), "q.ys");

  const auto m = static_cast<long double>(p.size());
  const auto n = static_cast<long double>(q.size());
  const long double pp = joint_gram_sum(kx, ky, p, p, parallel);
  const long double qq = joint_gram_sum(kx, ky, q, q, parallel);
  const long double pq = joint_gram_sum(kx, ky, p, q, parallel);
  return finish(pp / (m * m) + qq / (n * n) - 2.0L * pq / (m * n), p.size(), q.size());
}

// Symmetric quadratic form s^T H s with +-1 signs. Four interleaved
// accumulators per row; the order is fixed so the value is reproducible.
double sign_quadratic_form(const Matrix& h, std::span<const double> s) {
  const std::size_t m = h.rows();
  long double total = 0.0L;
  for (std::size_t i = 0; i < m; ++i) {
    const auto row = h.row(i);
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    std::size_t j = i + 1;
    for (; j + 4 <= m; j += 4) {
      acc[0] += row[j] * s[j];
      acc[1] += row[j + 1] * s[j + 1];
      acc[2] += row[j + 2] * s[j + 2];
      acc[3] += row[j + 3] * s[j + 3];
    }
    for (; j < m; ++j) acc[0] += row[j] * s[j];
    const double off = (acc[0] + acc[1]) + (acc[2] + acc[3]);
    total += static_cast<long double>(row[i]) + 2.0L * s[i] * off;
  }
  return static_cast<double>(total);
}

Matrix joint_self_gram(const KernelSpec& kx, const KernelSpec& ky, const PairedSample& s) {
  Matrix h = gram(kx, s.xs(), s.xs());
  const Matrix gy = gram(ky, s.ys(), s.ys());
  auto hv = h.values();
  const auto yv = gy.values();
  for (std::size_t k = 0; k < hv.size(); ++k) hv[k] *= yv[k];
  return h;
}

double draw_value_from_form(double form, std::size_t m) {
  if (form < -kNegativeRadicandTolerance) {
    throw std::logic_error("Rademacher quadratic form is negative (" + std::to_string(form) +
                           "); kernel is not positive semidefinite on this data");
  }
  return std::sqrt(std::max(form, 0.0)) / static_cast<double>(m);
}

std::vector<double> signs_as_doubles(const RademacherDraw& draw) {
  return {draw.signs.begin(), draw.signs.end()};
}

}  // namespace

JddValue jdd_biased(const KernelSpec& kx, const KernelSpec& ky, const PairedSample& p,
                    const PairedSample& q) {
  return jdd_biased_impl(kx, ky, p, q, /*parallel=*/true);
}

JddValue jdd_naive_oracle(const KernelSpec& kx, const KernelSpec& ky, const PairedSample& p,
                          const PairedSample& q) {
  require_compatible(p, q, "jdd_naive_oracle");
  auto term = [&](const PairedSample& a, const PairedSample& b) {
    CompensatedSum acc;
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = 0; j < b.size(); ++j) {
        acc.add(kernel_eval(kx, a.xs().row(i), b.xs().row(j)) *
                kernel_eval(ky, a.ys().row(i), b.ys().row(j)));
      }
    }
    return acc.value();
  };
  const double m = static_cast<double>(p.size());
  const double n = static_cast<double>(q.size());
  CompensatedSum radicand;
  radicand.add(term(p, p) / (m * m));
  radicand.add(term(q, q) / (n * n));
  radicand.add(-2.0 * term(p, q) / (m * n));
  return finish(radicand.value(), p.size(), q.size());
}

JddValue jdd_embedding_oracle(std::size_t feature_dim_x, std::size_t feature_dim_y,
                              const PairedSample& p, const PairedSample& q) {
  require_compatible(p, q, "jdd_embedding_oracle");
  if (p.dim_x() != feature_dim_x || p.dim_y() != feature_dim_y) {
    throw InputError("jdd_embedding_oracle: feature dimensions (" +
                     std::to_string(feature_dim_x) + ", " + std::to_string(feature_dim_y) +
                     ") do not match the sample dimensions (" + std::to_string(p.dim_x()) +
                     ", " + std::to_string(p.dim_y()) + ")");
  }
  require_finite(p.xs().values(), "p.xs");
  require_finite(p.ys().values(), "p.ys");
  require_finite(q.xs().values(), "q.xs");
  require_finite(q.ys().values(), "q.ys");

  auto mean_outer = [&](const PairedSample& s) {
    Matrix out(feature_dim_x, feature_dim_y);
    for (std::size_t a = 0; a < feature_dim_x; ++a) {
      for (std::size_t b = 0; b < feature_dim_y; ++b) {
        CompensatedSum acc;
        for (std::size_t i = 0; i < s.size(); ++i) acc.add(s.xs()(i, a) * s.ys()(i, b));
        out(a, b) = acc.value() / static_cast<double>(s.size());
      }
    }
    return out;
  };
  const Matrix mp = mean_outer(p);
  const Matrix mq = mean_outer(q);
  CompensatedSum frob;
  for (std::size_t k = 0; k < mp.values().size(); ++k) {
    const double d = mp.values()[k] - mq.values()[k];
    frob.add(d * d);
  }
  return finish(frob.value(), p.size(), q.size());
}

double mmd_biased(const KernelSpec& k, const Matrix& a, const Matrix& b) {
  if (a.empty() || b.empty()) throw InputError("mmd_biased: point sets must be non-empty");
  if (a.cols() != b.cols()) {
    throw InputError("mmd_biased: dimension mismatch (" + std::to_string(a.cols()) + " vs " +
                     std::to_string(b.cols()) + ")");
  }
  validate_points(k, a, "a");
  validate_points(k, b, "b");
  auto sum = [&](const Matrix& u, const Matrix& v) {
    return ordered_sum(
        u.rows(), v.rows(),
        [&](std::size_t i, std::size_t j) { return eval_unchecked(k, u.row(i), v.row(j)); },
        true);
  };
  const auto m = static_cast<long double>(a.rows());
  const auto n = static_cast<long double>(b.rows());
  const long double radicand =
      sum(a, a) / (m * m) + sum(b, b) / (n * n) - 2.0L * sum(a, b) / (m * n);
  return std::sqrt(std::max(static_cast<double>(radicand), 0.0));
}

RademacherDraw RademacherDraw::generate(std::size_t m, std::uint64_t seed, std::uint64_t index) {
  RademacherDraw draw;
  draw.index = index;
  draw.signs.resize(m);
  auto rng = substream(seed, index);
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (i % 64 == 0) bits = rng();
    draw.signs[i] = (bits & 1U) ? std::int8_t{1} : std::int8_t{-1};
    bits >>= 1U;
  }
  return draw;
}

double rademacher_draw_value(const KernelSpec& kx, const KernelSpec& ky, const PairedSample& s,
                             const RademacherDraw& draw) {
  if (draw.signs.size() != s.size()) {
    throw InputError("rademacher_draw_value: " + std::to_string(draw.signs.size()) +
                     " signs for a sample of size " + std::to_string(s.size()));
  }
  for (auto v : draw.signs) {
    if (v != 1 && v != -1) throw InputError("rademacher_draw_value: signs must be +1 or -1");
  }
  const Matrix h = joint_self_gram(kx, ky, s);
  const auto signs = signs_as_doubles(draw);
  return draw_value_from_form(sign_quadratic_form(h, signs), s.size());
}

RademacherEstimate rademacher_mc_estimate(const KernelSpec& kx, const KernelSpec& ky,
                                          const PairedSample& s, std::size_t trials,
                                          std::uint64_t seed) {
  if (trials < 2) throw InputError("rademacher_mc_estimate: trials must be >= 2");
  const Matrix h = joint_self_gram(kx, ky, s);
  const std::size_t m = s.size();

  std::vector<double> values(trials);
  const auto n_trials = static_cast<std::ptrdiff_t>(trials);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t t = 0; t < n_trials; ++t) {
    const auto draw = RademacherDraw::generate(m, seed, static_cast<std::uint64_t>(t));
    const auto signs = signs_as_doubles(draw);
    values[static_cast<std::size_t>(t)] = draw_value_from_form(sign_quadratic_form(h, signs), m);
  }

  long double sum = 0.0L;
  for (double v : values) sum += v;
  const long double mean = sum / static_cast<long double>(trials);
  long double sq = 0.0L;
  for (double v : values) sq += (v - mean) * (v - mean);
  const long double variance = sq / static_cast<long double>(trials - 1);
  RademacherEstimate out;
  out.trials = trials;
  out.mean = static_cast<double>(mean);
  out.std_error = static_cast<double>(std::sqrt(variance / static_cast<long double>(trials)));
  return out;
}

double rademacher_jensen_bound(const KernelSpec& kx, const KernelSpec& ky, const PairedSample& s) {
  validate_points(kx, s.xs(), "xs");
  validate_points(ky, s.ys(), "ys");
  long double diag = 0.0L;
  for (std::size_t i = 0; i < s.size(); ++i) {
    diag += static_cast<long double>(eval_unchecked(kx, s.xs().row(i), s.xs().row(i))) *
            eval_unchecked(ky, s.ys().row(i), s.ys().row(i));
  }
  // (1/m) sqrt(S) written as sqrt(S/m) / sqrt(m): with unit diagonals S/m is
  // exactly 1 and the result is exactly 1/sqrt(m).
  const double m = static_cast<double>(s.size());
  return std::sqrt(static_cast<double>(diag / static_cast<long double>(s.size()))) / std::sqrt(m);
}

double rademacher_uniform_bound(const KernelSpec& kx, const KernelSpec& ky, std::size_t m) {
  if (m == 0) throw InputError("rademacher_uniform_bound: m must be >= 1");
  return std::max(kx.bound(), ky.bound()) / std::sqrt(static_cast<double>(m));
}

namespace serial {

JddValue jdd_biased(const KernelSpec& kx, const KernelSpec& ky, const PairedSample& p,
                    const PairedSample& q) {
  return jdd_biased_impl(kx, ky, p, q, /*parallel=*/false);
}

}  // namespace serial

}  // namespace jdd
