#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "jdd/types.hpp"

namespace jdd {

/// Shortest decimal text that parses back to exactly `v`. Locale-independent.
std::string format_double(double v);

/// PairedSample CSV: header `x_0,...,x_{dx-1},y_0,...,y_{dy-1}`, one pair per
/// row, `\n` line endings. Lines starting with '#' and blank lines are
/// skipped. Throws FormatError on a malformed header or row.
PairedSample read_paired_csv(std::istream& in, const std::string& source = "<stream>");
PairedSample read_paired_csv(const std::filesystem::path& path);

void write_paired_csv(std::ostream& out, const PairedSample& sample);

}  // namespace jdd
