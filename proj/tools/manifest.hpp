#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace jdd::cli {

/// Provenance written ahead of every CSV the tool emits, as `#` comment lines.
struct RunManifest {
  std::string command;
  std::string version;
  std::string timestamp;
  std::vector<std::pair<std::string, std::string>> flags;
  std::vector<std::pair<std::string, std::uint64_t>> seeds;
  std::vector<std::pair<std::string, std::string>> inputs;  // path, sha256

  void add_flag(std::string name, std::string value) {
    flags.emplace_back(std::move(name), std::move(value));
  }
  void add_seed(std::string name, std::uint64_t value) {
    seeds.emplace_back(std::move(name), value);
  }
  /// Records the path and the SHA-256 of its contents.
  void add_input(const std::filesystem::path& path);

  void write(std::ostream& out) const;
};

/// Hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

/// UTC ISO-8601 time. Honors SOURCE_DATE_EPOCH so reruns can be made
/// byte-identical.
std::string manifest_timestamp();

}  // namespace jdd::cli
