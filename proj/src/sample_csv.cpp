#include "jdd/sample_csv.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>
#include <vector>

namespace jdd {
namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

// Returns {dx, dy} for a header of the form x_0..x_{dx-1},y_0..y_{dy-1}.
std::pair<std::size_t, std::size_t> parse_header(std::string_view line, const std::string& source) {
  const auto fields = split(line);
  std::size_t dx = 0;
  while (dx < fields.size() && fields[dx] == "x_" + std::to_string(dx)) ++dx;
  std::size_t dy = 0;
  while (dx + dy < fields.size() && fields[dx + dy] == "y_" + std::to_string(dy)) ++dy;
  if (dx == 0 || dy == 0 || dx + dy != fields.size()) {
    throw FormatError(source + ": header must read x_0,...,x_{dx-1},y_0,...,y_{dy-1}, got '" +
                      std::string(line) + "'");
  }
  return {dx, dy};
}

double parse_number(std::string_view field, const std::string& where) {
  double v = 0.0;
  const auto* first = field.data();
  const auto* last = field.data() + field.size();
  if (!field.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || field.empty()) {
    throw FormatError(where + ": '" + std::string(field) + "' is not a number");
  }
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

PairedSample read_paired_csv(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::size_t dx = 0;
  std::size_t dy = 0;
  std::vector<double> xs;
  std::vector<double> ys;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!have_header) {
      std::tie(dx, dy) = parse_header(line, source);
      have_header = true;
      continue;
    }
    const auto fields = split(line);
    const std::string where = source + ":" + std::to_string(line_no);
    if (fields.size() != dx + dy) {
      throw FormatError(where + ": expected " + std::to_string(dx + dy) + " fields, found " +
                        std::to_string(fields.size()));
    }
    for (std::size_t k = 0; k < dx; ++k) xs.push_back(parse_number(fields[k], where));
    for (std::size_t k = 0; k < dy; ++k) ys.push_back(parse_number(fields[dx + k], where));
    ++rows;
  }
  if (!have_header) throw FormatError(source + ": missing header line");
  if (rows == 0) throw FormatError(source + ": no observation rows");
  Matrix mx(rows, dx);
  Matrix my(rows, dy);
  std::copy(xs.begin(), xs.end(), mx.values().begin());
  std::copy(ys.begin(), ys.end(), my.values().begin());
  require_finite(mx.values(), source + " x columns");
  require_finite(my.values(), source + " y columns");
  return PairedSample(std::move(mx), std::move(my));
}

PairedSample read_paired_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  return read_paired_csv(in, path.string());
}

void write_paired_csv(std::ostream& out, const PairedSample& sample) {
  for (std::size_t k = 0; k < sample.dim_x(); ++k) out << (k ? "," : "") << "x_" << k;
  for (std::size_t k = 0; k < sample.dim_y(); ++k) out << ",y_" << k;
  out << '\n';
  for (std::size_t i = 0; i < sample.size(); ++i) {
    for (std::size_t k = 0; k < sample.dim_x(); ++k) {
      out << (k ? "," : "") << format_double(sample.xs()(i, k));
    }
    for (std::size_t k = 0; k < sample.dim_y(); ++k) out << ',' << format_double(sample.ys()(i, k));
    out << '\n';
  }
}

}  // namespace jdd
