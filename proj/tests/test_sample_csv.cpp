#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "jdd/sample_csv.hpp"
#include "test_support.hpp"

namespace jdd {
namespace {

PairedSample parse(const std::string& text) {
  std::istringstream in(text);
  return read_paired_csv(in);
}

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(1.0), "1");
  EXPECT_EQ(format_double(-2.5e-300), "-2.5e-300");
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double v = u(rng) * std::pow(10.0, static_cast<int>(rng() % 40) - 20);
    EXPECT_EQ(std::stod(format_double(v)), v);
  }
}

TEST(PairedCsv, RoundTripIsExact) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 50; ++t) {
    const auto s = testing::random_sample(rng, 1 + t % 13, 1 + t % 4, 1 + t % 5, -1e3, 1e3);
    std::ostringstream out;
    write_paired_csv(out, s);
    EXPECT_EQ(parse(out.str()), s);
  }
}

TEST(PairedCsv, HeaderAndLayout) {
  const auto s = PairedSample(Matrix::from_rows({{0.5, 1.0}}), Matrix::from_rows({{0.25}}));
  std::ostringstream out;
  write_paired_csv(out, s);
  EXPECT_EQ(out.str(), "x_0,x_1,y_0\n0.5,1,0.25\n");
}

TEST(PairedCsv, SkipsCommentsBlankLinesAndCarriageReturns) {
  const auto s = parse("# jdd 0.1.0 sample\n# seed: seed=1\nx_0,y_0,y_1\r\n\n1,2,3\r\n# mid\n+4,5e-1,-6\n");
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s.dim_x(), 1u);
  EXPECT_EQ(s.dim_y(), 2u);
  EXPECT_EQ(s.xs()(1, 0), 4.0);
  EXPECT_EQ(s.ys()(1, 0), 0.5);
  EXPECT_EQ(s.ys()(1, 1), -6.0);
}

TEST(PairedCsv, MalformedInput) {
  EXPECT_THROW(parse(""), FormatError);
  EXPECT_THROW(parse("# only comments\n"), FormatError);
  EXPECT_THROW(parse("x_0,y_0\n"), FormatError);              // no rows
  EXPECT_THROW(parse("a,b\n1,2\n"), FormatError);             // unknown columns
  EXPECT_THROW(parse("x_0,x_2,y_0\n1,2,3\n"), FormatError);   // gap in x columns
  EXPECT_THROW(parse("y_0,x_0\n1,2\n"), FormatError);         // y before x
  EXPECT_THROW(parse("x_0\n1\n"), FormatError);               // no y columns
  EXPECT_THROW(parse("x_0,y_0\n1\n"), FormatError);           // too few fields
  EXPECT_THROW(parse("x_0,y_0\n1,2,3\n"), FormatError);       // too many fields
  EXPECT_THROW(parse("x_0,y_0\n1,abc\n"), FormatError);
  EXPECT_THROW(parse("x_0,y_0\n1,2x\n"), FormatError);
  EXPECT_THROW(parse("x_0,y_0\n1,\n"), FormatError);
  EXPECT_THROW(parse("x_0,y_0\n1,nan\n"), InputError);
  EXPECT_THROW(read_paired_csv(std::filesystem::path("/nonexistent/jdd.csv")), InputError);
}

}  // namespace
}  // namespace jdd
