#include "jdd/mnist.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <iterator>
#include <numbers>
#include <sstream>
#include <string>

#include "jdd/random.hpp"

namespace jdd::mnist {
namespace {

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::uint32_t read_be32(const std::vector<std::uint8_t>& bytes, std::size_t offset) {
  return (std::uint32_t{bytes[offset]} << 24) | (std::uint32_t{bytes[offset + 1]} << 16) |
         (std::uint32_t{bytes[offset + 2]} << 8) | std::uint32_t{bytes[offset + 3]};
}

void write_be32(std::ostream& out, std::uint32_t v) {
  const char b[4] = {static_cast<char>(v >> 24), static_cast<char>(v >> 16),
                     static_cast<char>(v >> 8), static_cast<char>(v)};
  out.write(b, 4);
}

std::string hex32(std::uint32_t v) {
  std::ostringstream os;
  os << "0x";
  os.width(8);
  os.fill('0');
  os << std::hex << v;
  return os.str();
}

void require_size(const std::vector<std::uint8_t>& bytes, std::size_t expected,
                  const std::filesystem::path& path, const char* what) {
  if (bytes.size() < expected) {
    throw FormatError(path.string() + ": truncated " + what + ", expected " +
                      std::to_string(expected) + " bytes but found " +
                      std::to_string(bytes.size()));
  }
  if (bytes.size() > expected) {
    throw FormatError(path.string() + ": " + std::to_string(bytes.size() - expected) +
                      " unexpected trailing bytes after " + what + " (expected " +
                      std::to_string(expected) + " bytes)");
  }
}

void require_magic(const std::vector<std::uint8_t>& bytes, std::uint32_t expected,
                   const std::filesystem::path& path) {
  if (bytes.size() < 4) {
    throw FormatError(path.string() + ": truncated header, expected at least 4 bytes but found " +
                      std::to_string(bytes.size()));
  }
  const std::uint32_t magic = read_be32(bytes, 0);
  if (magic != expected) {
    throw FormatError(path.string() + ": wrong magic number " + hex32(magic) + ", expected " +
                      hex32(expected));
  }
}

}  // namespace

ImageSet load_idx(const std::filesystem::path& images_path,
                  const std::filesystem::path& labels_path) {
  const auto img = read_file(images_path);
  require_magic(img, kImagesMagic, images_path);
  if (img.size() < 16) {
    throw FormatError(images_path.string() + ": truncated header, expected 16 bytes but found " +
                      std::to_string(img.size()));
  }
  const std::uint32_t count = read_be32(img, 4);
  const std::uint32_t rows = read_be32(img, 8);
  const std::uint32_t cols = read_be32(img, 12);
  if (rows != kSide || cols != kSide) {
    throw FormatError(images_path.string() + ": rasters are " + std::to_string(rows) + "x" +
                      std::to_string(cols) + ", expected 28x28");
  }
  require_size(img, 16 + std::size_t{count} * kPixels, images_path, "pixel payload");

  const auto lab = read_file(labels_path);
  require_magic(lab, kLabelsMagic, labels_path);
  if (lab.size() < 8) {
    throw FormatError(labels_path.string() + ": truncated header, expected 8 bytes but found " +
                      std::to_string(lab.size()));
  }
  const std::uint32_t label_count = read_be32(lab, 4);
  if (label_count != count) {
    throw ConsistencyError("image file holds " + std::to_string(count) +
                           " images but label file holds " + std::to_string(label_count) +
                           " labels");
  }
  require_size(lab, 8 + std::size_t{count}, labels_path, "label payload");

  ImageSet set;
  set.images.resize(count);
  set.labels.assign(lab.begin() + 8, lab.end());
  for (std::size_t i = 0; i < count; ++i) {
    std::copy_n(img.begin() + static_cast<std::ptrdiff_t>(16 + i * kPixels), kPixels,
                set.images[i].begin());
    if (set.labels[i] > 9) {
      throw FormatError(labels_path.string() + ": label " + std::to_string(set.labels[i]) +
                        " at index " + std::to_string(i) + " is not a digit");
    }
  }
  return set;
}

void write_idx(const ImageSet& set, const std::filesystem::path& images_path,
               const std::filesystem::path& labels_path) {
  if (set.images.size() != set.labels.size()) {
    throw ConsistencyError("write_idx: " + std::to_string(set.images.size()) + " images but " +
                           std::to_string(set.labels.size()) + " labels");
  }
  const auto count = static_cast<std::uint32_t>(set.size());
  std::ofstream img(images_path, std::ios::binary);
  std::ofstream lab(labels_path, std::ios::binary);
  if (!img || !lab) throw InputError("write_idx: cannot open output files");
  write_be32(img, kImagesMagic);
  write_be32(img, count);
  write_be32(img, kSide);
  write_be32(img, kSide);
  for (const auto& r : set.images) {
    img.write(reinterpret_cast<const char*>(r.data()), static_cast<std::streamsize>(r.size()));
  }
  write_be32(lab, kLabelsMagic);
  write_be32(lab, count);
  lab.write(reinterpret_cast<const char*>(set.labels.data()),
            static_cast<std::streamsize>(set.labels.size()));
}

ProjectionCounts projection_counts(const Raster& image) {
  ProjectionCounts out;
  for (std::size_t r = 0; r < kSide; ++r) {
    for (std::size_t c = 0; c < kSide; ++c) {
      const std::uint32_t v = pixel(image, r, c);
      out.rows[r] += v;
      out.cols[c] += v;
    }
  }
  return out;
}

ProjectionPair project(const Raster& image, bool normalize) {
  const auto counts = projection_counts(image);
  std::uint64_t total = 0;
  for (auto v : counts.rows) total += v;

  if (normalize && total == 0) throw InputError("project: cannot normalize a blank image");
  const double denom = normalize ? static_cast<double>(total) : 1.0;
  ProjectionPair out;
  for (std::size_t k = 0; k < kSide; ++k) {
    out.x[k] = static_cast<double>(counts.rows[k]) / denom;
    out.y[k] = static_cast<double>(counts.cols[k]) / denom;
  }
  return out;
}

Raster rotate(const Raster& image, double rho_degrees) {
  constexpr double center = (static_cast<double>(kSide) - 1.0) / 2.0;
  const double theta = rho_degrees * std::numbers::pi / 180.0;
  const double cs = std::cos(theta);
  const double sn = std::sin(theta);
  constexpr auto side = static_cast<std::ptrdiff_t>(kSide);

  auto source = [&](std::ptrdiff_t r, std::ptrdiff_t c) -> double {
    if (r < 0 || c < 0 || r >= side || c >= side) return 0.0;
    return image[static_cast<std::size_t>(r * side + c)];
  };

  Raster out{};
  for (std::ptrdiff_t r = 0; r < side; ++r) {
    for (std::ptrdiff_t c = 0; c < side; ++c) {
      const double dx = static_cast<double>(c) - center;
      const double dy = static_cast<double>(r) - center;
      const double sx = center + dx * cs - dy * sn;
      const double sy = center + dx * sn + dy * cs;
      const double fx0 = std::floor(sx);
      const double fy0 = std::floor(sy);
      const double fx = sx - fx0;
      const double fy = sy - fy0;
      const auto x0 = static_cast<std::ptrdiff_t>(fx0);
      const auto y0 = static_cast<std::ptrdiff_t>(fy0);
      const double v = (1.0 - fx) * (1.0 - fy) * source(y0, x0) + fx * (1.0 - fy) * source(y0, x0 + 1) +
                       (1.0 - fx) * fy * source(y0 + 1, x0) + fx * fy * source(y0 + 1, x0 + 1);
      out[static_cast<std::size_t>(r * side + c)] =
          static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
    }
  }
  return out;
}

PairedSample sample_class(const ImageSet& set, int digit, std::size_t m, double rho,
                          std::uint64_t seed, bool normalize) {
  if (m == 0) throw InputError("sample_class: m must be >= 1");
  if (!std::isfinite(rho)) throw InputError("sample_class: rotation must be finite");
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (set.labels[i] == digit) members.push_back(i);
  }
  if (members.empty()) {
    throw InputError("sample_class: digit " + std::to_string(digit) + " does not occur in the set");
  }

  auto rng = substream(seed, 0);
  std::uniform_int_distribution<std::size_t> pick(0, members.size() - 1);
  std::vector<std::size_t> chosen(m);
  for (auto& c : chosen) c = members[pick(rng)];

  Matrix xs(m, kSide);
  Matrix ys(m, kSide);
  std::exception_ptr failure;
  const auto n = static_cast<std::ptrdiff_t>(m);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      const auto& src = set.images[chosen[static_cast<std::size_t>(i)]];
      const auto proj = project(rho == 0.0 ? src : rotate(src, rho), normalize);
      std::copy(proj.x.begin(), proj.x.end(), xs.row(static_cast<std::size_t>(i)).begin());
      std::copy(proj.y.begin(), proj.y.end(), ys.row(static_cast<std::size_t>(i)).begin());
    } catch (...) {
#pragma omp critical(jdd_sample_class_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return PairedSample(std::move(xs), std::move(ys));
}

}  // namespace jdd::mnist
