#pragma once

#include <cmath>
#include <span>

#include "jdd/kernels.hpp"

namespace jdd::detail {

inline double squared_distance(std::span<const double> a, std::span<const double> b) noexcept {
  // Direct differences; the |a|^2 + |b|^2 - 2<a,b> expansion loses the exact
  // zero at a == b.
  double acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    acc += d * d;
  }
  return acc;
}

inline double dot(std::span<const double> a, std::span<const double> b) noexcept {
  double acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) acc += a[k] * b[k];
  return acc;
}

/// k(a, b) without validation. Every evaluation path goes through here so
/// gram entries equal kernel_eval bitwise.
inline double eval_unchecked(const KernelSpec& spec, std::span<const double> a,
                             std::span<const double> b) noexcept {
  switch (spec.kind()) {
    case KernelKind::Rbf: {
      const double s = spec.bandwidth();
      return std::exp(-squared_distance(a, b) / (s * s));
    }
    case KernelKind::ExplicitLinear:
      return dot(a, b);
  }
  return 0.0;
}

}  // namespace jdd::detail
