#include <gtest/gtest.h>

#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "jdd/mnist.hpp"
#include "jdd/sample_csv.hpp"
#include "jdd/shift_test.hpp"
#include "test_support.hpp"

namespace jdd {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result jdd_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "jdd");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

// CSV body without the leading '#' manifest lines.
std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::stringstream ls(line);
    std::string f;
    while (std::getline(ls, f, ',')) fields.push_back(f);
    rows.push_back(fields);
  }
  return rows;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("jdd_cli_" + std::to_string(std::random_device{}()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
    setenv("SOURCE_DATE_EPOCH", "1700000000", 1);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write_sample(const std::string& name, const PairedSample& s) {
    const auto path = dir_ / name;
    std::ofstream out(path);
    write_paired_csv(out, s);
    return path.string();
  }

  fs::path dir_;
};

TEST_F(CliTest, TestAcceptsCopyAndRejectsShift) {
  std::mt19937_64 rng(1);
  const auto p = testing::random_sample(rng, 60, 2, 2, 0.0, 0.1);
  const auto far = PairedSample(Matrix(60, 2, 5.0), Matrix(60, 2, 5.0));
  const auto pp = write_sample("p.csv", p);

  const auto same = jdd_cli({"test", "--p", pp, "--q", pp});
  EXPECT_EQ(same.code, cli::kSuccess) << same.err;
  EXPECT_NE(same.out.find("accept"), std::string::npos);

  const auto diff = jdd_cli({"test", "--p", pp, "--q", write_sample("far.csv", far)});
  EXPECT_EQ(diff.code, cli::kReject) << diff.err;
  EXPECT_NE(diff.out.find("reject"), std::string::npos);
}

TEST_F(CliTest, TestJsonReport) {
  std::mt19937_64 rng(2);
  const auto pp = write_sample("p.csv", testing::random_sample(rng, 30, 2, 3, 0.0, 1.0));
  const auto qq = write_sample("q.csv", testing::random_sample(rng, 30, 2, 3, 0.0, 1.0));
  const auto r = jdd_cli({"test", "--p", pp, "--q", qq, "--json", "--alpha", "0.1", "--sigma-x", "0.5"});
  ASSERT_TRUE(r.code == cli::kSuccess || r.code == cli::kReject) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["critical_value"].get<double>(), critical_value(0.1, 1.0, 30));
  EXPECT_EQ(doc["config"]["m"].get<int>(), 30);
  EXPECT_EQ(doc["reject"].get<bool>(), r.code == cli::kReject);
  EXPECT_EQ(doc["kernels"]["x"]["bandwidth"].get<double>(), 0.5);
  EXPECT_EQ(doc["manifest"]["inputs"].size(), 2u);
  EXPECT_EQ(doc["manifest"]["inputs"][0]["sha256"].get<std::string>().size(), 64u);
  EXPECT_EQ(doc["manifest"]["timestamp"], "2023-11-14T22:13:20Z");
}

TEST_F(CliTest, TestRequiresEqualSizesAndValidFiles) {
  std::mt19937_64 rng(3);
  const auto pp = write_sample("p.csv", testing::random_sample(rng, 10, 1, 1));
  const auto qq = write_sample("q.csv", testing::random_sample(rng, 12, 1, 1));
  const auto r = jdd_cli({"test", "--p", pp, "--q", qq});
  EXPECT_EQ(r.code, cli::kUsage);
  EXPECT_NE(r.err.find("m = n"), std::string::npos) << r.err;

  EXPECT_EQ(jdd_cli({"test", "--p", pp, "--q", (dir_ / "missing.csv").string()}).code, cli::kUsage);
  std::ofstream(dir_ / "bad.csv") << "a,b\n1,2\n";
  EXPECT_EQ(jdd_cli({"test", "--p", pp, "--q", (dir_ / "bad.csv").string()}).code, cli::kUsage);
  EXPECT_EQ(jdd_cli({"test", "--p", pp, "--q", pp, "--alpha", "1.5"}).code, cli::kUsage);
}

TEST_F(CliTest, LinearKernelOption) {
  const auto p = PairedSample(Matrix::from_rows({{1.0, 0.0}, {0.0, 1.0}}),
                              Matrix::from_rows({{1.0}, {1.0}}));
  const auto pp = write_sample("p.csv", p);
  const auto r = jdd_cli({"test", "--p", pp, "--q", pp, "--kernel", "linear", "--json"});
  EXPECT_EQ(r.code, cli::kSuccess) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["config"]["K"].get<double>(), 1.0);
  EXPECT_EQ(jdd_cli({"test", "--p", pp, "--q", pp, "--kernel", "linear", "--k", "0.5"}).code,
            cli::kUsage);
  EXPECT_EQ(jdd_cli({"test", "--p", pp, "--q", pp, "--kernel", "poly"}).code, cli::kUsage);
}

TEST_F(CliTest, ThresholdSingleRow) {
  const auto r = jdd_cli({"threshold", "--alphas", "0.05", "--ms", "1000"});
  ASSERT_EQ(r.code, cli::kSuccess) << r.err;
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"alpha", "m", "critical_value"}));
  EXPECT_EQ(std::stod(rows[1][2]), critical_value(0.05, 1.0, 1000));
}

TEST_F(CliTest, ThresholdGridFromRanges) {
  const auto r = jdd_cli({"threshold", "--alphas", "0.01:0.2:0.01", "--ms", "50:1000:50", "--k", "2"});
  ASSERT_EQ(r.code, cli::kSuccess) << r.err;
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 401u);
  EXPECT_EQ(rows[1][0], "0.01");
  EXPECT_EQ(rows[1][1], "50");
  EXPECT_EQ(rows[400][0], "0.2");
  EXPECT_EQ(rows[400][1], "1000");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double a = std::stod(rows[i][0]);
    const auto m = static_cast<std::size_t>(std::stoul(rows[i][1]));
    EXPECT_EQ(std::stod(rows[i][2]), critical_value(a, 2.0, m));
  }
}

TEST_F(CliTest, ThresholdRejectsBadRanges) {
  EXPECT_EQ(jdd_cli({"threshold", "--alphas", "0.2:0.1:0.01"}).code, cli::kUsage);
  EXPECT_EQ(jdd_cli({"threshold", "--alphas", "0.1:0.2:0"}).code, cli::kUsage);
  EXPECT_EQ(jdd_cli({"threshold", "--alphas", "abc"}).code, cli::kUsage);
  EXPECT_EQ(jdd_cli({"threshold", "--ms", "0"}).code, cli::kUsage);
  EXPECT_EQ(jdd_cli({"threshold", "--alphas", "1.0"}).code, cli::kUsage);
}

TEST_F(CliTest, CalibrateGenerators) {
  const auto same = jdd_cli({"calibrate", "--generator", "identical", "--m", "20", "--trials", "10"});
  ASSERT_EQ(same.code, cli::kSuccess) << same.err;
  auto rows = csv_rows(same.out);
  ASSERT_EQ(rows.size(), 12u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"trial", "jdd", "critical_value", "reject"}));
  EXPECT_EQ(rows.back()[0], "all");
  EXPECT_EQ(rows.back()[3], "0");

  const auto gauss = jdd_cli({"calibrate", "--m", "100", "--trials", "50", "--seed", "4"});
  ASSERT_EQ(gauss.code, cli::kSuccess) << gauss.err;
  rows = csv_rows(gauss.out);
  EXPECT_LE(std::stod(rows.back()[3]), 0.95);
  EXPECT_EQ(std::stod(rows.back()[2]), critical_value(0.05, 1.0, 100));

  EXPECT_EQ(jdd_cli({"calibrate", "--generator", "mnist"}).code, cli::kUsage);
  EXPECT_EQ(jdd_cli({"calibrate", "--generator", "bogus"}).code, cli::kUsage);
  EXPECT_EQ(jdd_cli({"calibrate", "--trials", "0"}).code, cli::kUsage);
}

TEST_F(CliTest, CalibrateRateNonIncreasingInAlpha) {
  double previous = 1.0;
  for (const char* a : {"0.001", "0.1", "0.5", "0.9", "0.999"}) {
    const auto r = jdd_cli({"calibrate", "--m", "5", "--dim-x", "1", "--dim-y", "1", "--trials",
                            "200", "--alpha", a, "--seed", "2"});
    ASSERT_EQ(r.code, cli::kSuccess) << r.err;
    const double rate = std::stod(csv_rows(r.out).back()[3]);
    EXPECT_LE(rate, previous) << "alpha=" << a;
    previous = rate;
  }
}

TEST_F(CliTest, RademacherSingletonAndChain) {
  const auto one = write_sample("one.csv", PairedSample(Matrix::from_rows({{0.3}}), Matrix::from_rows({{0.7}})));
  auto r = jdd_cli({"rademacher", "--p", one, "--trials", "10"});
  ASSERT_EQ(r.code, cli::kSuccess) << r.err;
  auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1], (std::vector<std::string>{"1", "1", "0", "1", "1"}));

  std::mt19937_64 rng(5);
  const auto s = write_sample("s.csv", testing::random_sample(rng, 100, 2, 2));
  r = jdd_cli({"rademacher", "--p", s, "--trials", "200"});
  ASSERT_EQ(r.code, cli::kSuccess) << r.err;
  rows = csv_rows(r.out);
  EXPECT_EQ(std::stod(rows[1][3]), 0.1);
  EXPECT_EQ(std::stod(rows[1][4]), 0.1);
  EXPECT_LE(std::stod(rows[1][1]), 0.1 + 3.0 * std::stod(rows[1][2]));
  EXPECT_EQ(jdd_cli({"rademacher", "--p", s, "--trials", "1"}).code, cli::kUsage);
}

TEST_F(CliTest, HelpVersionAndUsageErrors) {
  auto r = jdd_cli({"--help"});
  EXPECT_EQ(r.code, cli::kSuccess);
  EXPECT_NE(r.out.find("threshold"), std::string::npos);
  EXPECT_EQ(jdd_cli({"--version"}).code, cli::kSuccess);
  EXPECT_EQ(jdd_cli({"test", "--help"}).code, cli::kSuccess);
  EXPECT_EQ(jdd_cli({}).code, cli::kUsage);
  EXPECT_EQ(jdd_cli({"frobnicate"}).code, cli::kUsage);
  EXPECT_EQ(jdd_cli({"threshold", "--bogus"}).code, cli::kUsage);
  EXPECT_EQ(jdd_cli({"test", "--p", "x.csv"}).code, cli::kUsage);
}

TEST_F(CliTest, OutputIsDeterministic) {
  const std::vector<std::string> args{"calibrate", "--m", "30", "--trials", "20", "--seed", "9"};
  const auto a = jdd_cli(args);
  const auto b = jdd_cli(args);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("# timestamp: 2023-11-14T22:13:20Z"), std::string::npos) << a.out;
  EXPECT_NE(a.out.find("# seed: seed=9"), std::string::npos) << a.out;
}

class CliMnistTest : public CliTest {
 protected:
  void SetUp() override {
    CliTest::SetUp();
    std::mt19937_64 rng(6);
    mnist::ImageSet set;
    std::uniform_int_distribution<int> v(0, 255);
    for (int i = 0; i < 60; ++i) {
      mnist::Raster r{};
      // A bar whose position depends on the image, on a noisy background.
      for (std::size_t row = 4; row < 24; ++row) {
        for (std::size_t col = 10 + i % 3; col < 14 + i % 3; ++col) r[row * mnist::kSide + col] = 255;
      }
      for (auto& p : r) {
        if (p == 0 && v(rng) < 20) p = static_cast<std::uint8_t>(v(rng) / 4);
      }
      set.images.push_back(r);
      set.labels.push_back(static_cast<std::uint8_t>(i % 2 == 0 ? 3 : 5));
    }
    images_ = (dir_ / "img").string();
    labels_ = (dir_ / "lab").string();
    mnist::write_idx(set, images_, labels_);
  }
  std::string images_;
  std::string labels_;
};

TEST_F(CliMnistTest, SweepColumnsAndShape) {
  const auto r = jdd_cli({"mnist-sweep", "--images", images_, "--labels", labels_, "--m", "60",
                          "--rho-min", "0", "--rho-max", "90", "--rho-step", "15"});
  ASSERT_EQ(r.code, cli::kSuccess) << r.err;
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 8u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"rho", "jdd", "critical_value", "reject"}));
  EXPECT_EQ(rows[1][0], "0");
  EXPECT_EQ(rows[7][0], "90");
  EXPECT_GT(std::stod(rows[7][1]), std::stod(rows[1][1]));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_EQ(std::stod(rows[i][2]), critical_value(0.05, 1.0, 60));
    EXPECT_EQ(rows[i][3] == "1", std::stod(rows[i][1]) > std::stod(rows[i][2]));
  }
  EXPECT_NE(r.out.find("# input: " + images_ + " sha256="), std::string::npos);
}

TEST_F(CliMnistTest, SweepTrialsAddsSummaryColumns) {
  const auto r = jdd_cli({"mnist-sweep", "--images", images_, "--labels", labels_, "--m", "20",
                          "--rho-min", "-10", "--rho-max", "10", "--rho-step", "10", "--trials", "4"});
  ASSERT_EQ(r.code, cli::kSuccess) << r.err;
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].size(), 7u);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double lo = std::stod(rows[i][5]), mean = std::stod(rows[i][4]), hi = std::stod(rows[i][6]);
    EXPECT_LE(lo, mean);
    EXPECT_LE(mean, hi);
    const double first = std::stod(rows[i][1]);
    EXPECT_LE(lo, first);
    EXPECT_LE(first, hi);
  }
}

TEST_F(CliMnistTest, SweepAndSampleErrors) {
  EXPECT_EQ(jdd_cli({"mnist-sweep", "--images", images_, "--labels", (dir_ / "nope").string()}).code,
            cli::kUsage);
  EXPECT_EQ(jdd_cli({"mnist-sweep", "--images", images_, "--labels", labels_, "--digit", "7"}).code,
            cli::kUsage);
  EXPECT_EQ(jdd_cli({"mnist-sweep", "--images", images_, "--labels", labels_, "--rho-step", "0"}).code,
            cli::kUsage);
  EXPECT_EQ(jdd_cli({"mnist-sweep", "--images", labels_, "--labels", labels_}).code, cli::kUsage);
}

TEST_F(CliMnistTest, SampleWritesReadableCsv) {
  const auto r = jdd_cli({"sample", "--images", images_, "--labels", labels_, "--digit", "5", "--m",
                          "12", "--rho", "20"});
  ASSERT_EQ(r.code, cli::kSuccess) << r.err;
  std::istringstream in(r.out);
  const auto s = read_paired_csv(in);
  EXPECT_EQ(s.size(), 12u);
  EXPECT_EQ(s.dim_x(), mnist::kSide);
  const auto set = mnist::load_idx(images_, labels_);
  EXPECT_EQ(s, mnist::sample_class(set, 5, 12, 20.0, 1, true));

  const auto calib = jdd_cli({"calibrate", "--generator", "mnist", "--images", images_, "--labels",
                              labels_, "--m", "10", "--trials", "5"});
  EXPECT_EQ(calib.code, cli::kSuccess) << calib.err;
}

}  // namespace
}  // namespace jdd
