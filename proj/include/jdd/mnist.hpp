#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "jdd/types.hpp"

namespace jdd::mnist {

inline constexpr std::size_t kSide = 28;
inline constexpr std::size_t kPixels = kSide * kSide;
inline constexpr std::uint32_t kImagesMagic = 0x00000803;
inline constexpr std::uint32_t kLabelsMagic = 0x00000801;

/// 28x28 grayscale image, row-major.
using Raster = std::array<std::uint8_t, kPixels>;

inline std::uint8_t pixel(const Raster& r, std::size_t row, std::size_t col) {
  return r[row * kSide + col];
}

struct ImageSet {
  std::vector<Raster> images;
  std::vector<std::uint8_t> labels;

  std::size_t size() const noexcept { return images.size(); }
};

/// Reads an IDX image file (magic 0x00000803, dims count x 28 x 28) and an
/// IDX label file (magic 0x00000801). All header fields are big-endian.
///
/// Throws FormatError on a wrong magic number, wrong raster size or truncated
/// payload, ConsistencyError if the two files disagree on the count, and
/// InputError if a file cannot be opened.
ImageSet load_idx(const std::filesystem::path& images_path,
                  const std::filesystem::path& labels_path);

/// Writes `set` in the same format load_idx reads.
void write_idx(const ImageSet& set, const std::filesystem::path& images_path,
               const std::filesystem::path& labels_path);

/// Integer row and column sums of a raster.
struct ProjectionCounts {
  std::array<std::uint32_t, kSide> rows{};  // rows[r] = sum over c of pixel(r, c)
  std::array<std::uint32_t, kSide> cols{};  // cols[c] = sum over r of pixel(r, c)
};

ProjectionCounts projection_counts(const Raster& image);

/// x = per-row sums, y = per-column sums.
struct ProjectionPair {
  std::array<double, kSide> x{};
  std::array<double, kSide> y{};
};

/// Projection histograms of `image`. With `normalize`, each histogram is
/// divided by its own total so it sums to one (throws InputError for a blank
/// image). Without it, the raw intensity sums are returned.
ProjectionPair project(const Raster& image, bool normalize);

/// Rotates counter-clockwise (as displayed, rows growing downward) by
/// `rho_degrees` about the pixel-grid center (13.5, 13.5). Inverse mapping
/// with bilinear interpolation; samples falling outside the source are zero.
/// Values are rounded to the nearest integer and clamped to [0, 255].
Raster rotate(const Raster& image, double rho_degrees);

/// Draws m images of class `digit` uniformly with replacement using seed,
/// rotates each by rho and projects it. Deterministic in (seed, digit, m,
/// rho, normalize). Throws InputError if the class is absent or m == 0.
PairedSample sample_class(const ImageSet& set, int digit, std::size_t m, double rho,
                          std::uint64_t seed, bool normalize);

}  // namespace jdd::mnist
