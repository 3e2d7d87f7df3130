#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "jdd/discrepancy.hpp"
#include "jdd/kernels.hpp"
#include "jdd/mnist.hpp"
#include "jdd/random.hpp"
#include "jdd/sample_csv.hpp"
#include "jdd/shift_test.hpp"
#include "manifest.hpp"

namespace jdd::cli {
namespace {

struct KernelOptions {
  double sigma_x = 0.25;
  double sigma_y = 0.25;
  std::string kind = "rbf";
  std::optional<double> bound;
};

void add_kernel_options(CLI::App* cmd, KernelOptions& k) {
  cmd->add_option("--sigma-x", k.sigma_x, "RBF bandwidth for the x kernel")->capture_default_str();
  cmd->add_option("--sigma-y", k.sigma_y, "RBF bandwidth for the y kernel")->capture_default_str();
  cmd->add_option("--kernel", k.kind, "Kernel family")
      ->check(CLI::IsMember({"rbf", "linear"}))
      ->capture_default_str();
  cmd->add_option("--k", k.bound,
                  "Kernel bound K for --kernel linear (default: largest self-similarity in the "
                  "data)");
}

void record_kernel_options(RunManifest& manifest, const KernelOptions& k) {
  manifest.add_flag("kernel", k.kind);
  if (k.kind == "rbf") {
    manifest.add_flag("sigma-x", format_double(k.sigma_x));
    manifest.add_flag("sigma-y", format_double(k.sigma_y));
  } else if (k.bound) {
    manifest.add_flag("k", format_double(*k.bound));
  }
}

double max_self_similarity(const Matrix& m) {
  double best = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double s = 0.0;
    for (double v : m.row(i)) s += v * v;
    best = std::max(best, s);
  }
  return best;
}

std::pair<KernelSpec, KernelSpec> make_kernels(const KernelOptions& k,
                                               const std::vector<const PairedSample*>& samples) {
  if (k.kind == "rbf") return {KernelSpec::rbf(k.sigma_x), KernelSpec::rbf(k.sigma_y)};
  const PairedSample& first = *samples.front();
  auto bound_for = [&](bool use_x) {
    if (k.bound) return *k.bound;
    double best = 0.0;
    for (const auto* s : samples) best = std::max(best, max_self_similarity(use_x ? s->xs() : s->ys()));
    return best > 0.0 ? best : 1.0;
  };
  return {KernelSpec::linear(first.dim_x(), bound_for(true)),
          KernelSpec::linear(first.dim_y(), bound_for(false))};
}

nlohmann::json kernel_json(const KernelSpec& k) {
  if (k.kind() == KernelKind::Rbf) {
    return {{"kind", "rbf"}, {"bandwidth", k.bandwidth()}, {"bound", k.bound()}};
  }
  return {{"kind", "linear"}, {"feature_dim", k.feature_dim()}, {"bound", k.bound()}};
}

// 12 significant digits, so ranges like 0.01:0.1:0.01 print as typed.
double tidy(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
  double out = v;
  std::from_chars(buf, ptr, out);
  return out;
}

double parse_real(const std::string& text, const std::string& what) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (text.empty() || ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw InputError(what + ": '" + text + "' is not a number");
  }
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, sep)) out.push_back(item);
  if (!text.empty() && text.back() == sep) out.emplace_back();
  return out;
}

/// "a,b,c" or "start:stop:step" (stop inclusive).
std::vector<double> parse_real_list(const std::string& text, const std::string& what) {
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw InputError(what + ": range must be start:stop:step, got '" + text + "'");
    const double start = parse_real(parts[0], what);
    const double stop = parse_real(parts[1], what);
    const double step = parse_real(parts[2], what);
    if (!(step > 0.0) || stop < start) {
      throw InputError(what + ": range needs step > 0 and start <= stop, got '" + text + "'");
    }
    std::vector<double> out;
    const double slack = 1e-9 * step;
    for (std::size_t i = 0;; ++i) {
      const double v = start + static_cast<double>(i) * step;
      if (v > stop + slack) break;
      out.push_back(tidy(v));
    }
    return out;
  }
  std::vector<double> out;
  for (const auto& item : split(text, ',')) out.push_back(parse_real(item, what));
  if (out.empty()) throw InputError(what + ": empty list");
  return out;
}

std::vector<std::size_t> parse_size_list(const std::string& text, const std::string& what) {
  std::vector<std::size_t> out;
  for (double v : parse_real_list(text, what)) {
    if (v < 1.0 || v != std::floor(v) || v > 1e15) {
      throw InputError(what + ": sample sizes must be positive integers, got " + format_double(v));
    }
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

RunManifest make_manifest(const std::string& command) {
  RunManifest m;
  m.command = command;
  m.version = JDD_VERSION;
  m.timestamp = manifest_timestamp();
  return m;
}

// ---------------------------------------------------------------------------
// test

struct TestArgs {
  std::string p;
  std::string q;
  double alpha = 0.05;
  KernelOptions kernel;
  bool json = false;
};

int cmd_test(const TestArgs& a, std::ostream& out) {
  const PairedSample p = read_paired_csv(a.p);
  const PairedSample q = read_paired_csv(a.q);
  if (p.size() != q.size()) {
    throw InputError("the test requires equal sample sizes (m = n); p has " +
                     std::to_string(p.size()) + " rows and q has " + std::to_string(q.size()));
  }
  const auto [kx, ky] = make_kernels(a.kernel, {&p, &q});
  const TestReport r = run_test(kx, ky, p, q, a.alpha);

  RunManifest manifest = make_manifest("test");
  manifest.add_flag("alpha", format_double(a.alpha));
  record_kernel_options(manifest, a.kernel);
  manifest.add_input(a.p);
  manifest.add_input(a.q);

  if (a.json) {
    nlohmann::json inputs = nlohmann::json::array();
    for (const auto& [path, digest] : manifest.inputs) inputs.push_back({{"path", path}, {"sha256", digest}});
    nlohmann::json doc = {
        {"jdd", r.jdd.value},
        {"squared_sum", r.jdd.squared_sum},
        {"negative_radicand", r.jdd.negative_radicand},
        {"critical_value", r.critical_value},
        {"reject", r.reject},
        {"decision", r.reject ? "reject" : "accept"},
        {"config", {{"alpha", r.config.alpha}, {"K", r.config.bound}, {"m", r.config.m}, {"n", r.jdd.n}}},
        {"kernels", {{"x", kernel_json(r.kx)}, {"y", kernel_json(r.ky)}}},
        {"manifest",
         {{"command", manifest.command},
          {"version", manifest.version},
          {"timestamp", manifest.timestamp},
          {"inputs", inputs}}}};
    out << doc.dump(2) << '\n';
  } else {
    out << "jdd:            " << format_double(r.jdd.value) << '\n'
        << "critical value: " << format_double(r.critical_value) << '\n'
        << "decision:       "
        << (r.reject ? "reject p = q (jdd > critical value)" : "accept p = q (jdd <= critical value)")
        << '\n'
        << "m = n:          " << r.config.m << '\n'
        << "alpha:          " << format_double(r.config.alpha) << '\n'
        << "K:              " << format_double(r.config.bound) << '\n';
    if (r.jdd.negative_radicand) {
      out << "warning:        radicand " << format_double(r.jdd.squared_sum)
          << " was clamped to zero\n";
    }
  }
  return r.reject ? kReject : kSuccess;
}

// ---------------------------------------------------------------------------
// threshold

struct ThresholdArgs {
  std::string alphas = "0.05";
  std::string ms = "10:1000:10";
  double k = 1.0;
};

int cmd_threshold(const ThresholdArgs& a, std::ostream& out) {
  const auto alphas = parse_real_list(a.alphas, "--alphas");
  const auto ms = parse_size_list(a.ms, "--ms");
  const ThresholdTable table = threshold_grid(alphas, ms, a.k);

  RunManifest manifest = make_manifest("threshold");
  manifest.add_flag("alphas", a.alphas);
  manifest.add_flag("ms", a.ms);
  manifest.add_flag("k", format_double(a.k));
  manifest.write(out);
  out << "alpha,m,critical_value\n";
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    for (std::size_t j = 0; j < ms.size(); ++j) {
      out << format_double(alphas[i]) << ',' << ms[j] << ',' << format_double(table.at(i, j)) << '\n';
    }
  }
  return kSuccess;
}

// ---------------------------------------------------------------------------
// mnist-sweep

struct SweepArgs {
  std::string images;
  std::string labels;
  int digit = 3;
  std::size_t m = 1000;
  double alpha = 0.05;
  double rho_min = -45.0;
  double rho_max = 45.0;
  double rho_step = 5.0;
  std::uint64_t seed = 1;
  std::optional<std::size_t> trials;
  double sigma_x = 0.25;
  double sigma_y = 0.25;
  bool no_normalize = false;
};

std::uint64_t rho_key(double rho) { return std::bit_cast<std::uint64_t>(rho == 0.0 ? 0.0 : rho); }

int cmd_mnist_sweep(const SweepArgs& a, std::ostream& out) {
  if (!(a.rho_step > 0.0) || a.rho_max < a.rho_min) {
    throw InputError("--rho-step must be positive and --rho-min <= --rho-max");
  }
  if (a.trials && *a.trials < 1) throw InputError("--trials must be >= 1");
  if (a.digit < 0 || a.digit > 9) throw InputError("--digit must be 0..9");
  const auto set = mnist::load_idx(a.images, a.labels);
  const bool normalize = !a.no_normalize;
  const auto kx = KernelSpec::rbf(a.sigma_x);
  const auto ky = KernelSpec::rbf(a.sigma_y);
  const double cv = critical_value(a.alpha, std::max(kx.bound(), ky.bound()), a.m);

  std::vector<double> rhos;
  for (std::size_t i = 0;; ++i) {
    const double rho = a.rho_min + static_cast<double>(i) * a.rho_step;
    if (rho > a.rho_max + 1e-9 * a.rho_step) break;
    rhos.push_back(tidy(rho));
  }
  const std::size_t trials = a.trials.value_or(1);

  // jdd[t][r]; trial t's reference sample is shared by every rotation.
  std::vector<std::vector<double>> jdd(trials, std::vector<double>(rhos.size()));
  for (std::size_t t = 0; t < trials; ++t) {
    const std::uint64_t trial_seed = derive_seed(a.seed, t);
    const auto reference = mnist::sample_class(set, a.digit, a.m, 0.0, derive_seed(trial_seed, 0), normalize);
    const std::uint64_t shifted_base = derive_seed(trial_seed, 1);
    for (std::size_t r = 0; r < rhos.size(); ++r) {
      const auto shifted = mnist::sample_class(set, a.digit, a.m, rhos[r],
                                               derive_seed(shifted_base, rho_key(rhos[r])), normalize);
      jdd[t][r] = jdd_biased(kx, ky, reference, shifted).value;
    }
  }

  RunManifest manifest = make_manifest("mnist-sweep");
  manifest.add_flag("digit", std::to_string(a.digit));
  manifest.add_flag("m", std::to_string(a.m));
  manifest.add_flag("alpha", format_double(a.alpha));
  manifest.add_flag("rho-min", format_double(a.rho_min));
  manifest.add_flag("rho-max", format_double(a.rho_max));
  manifest.add_flag("rho-step", format_double(a.rho_step));
  if (a.trials) manifest.add_flag("trials", std::to_string(*a.trials));
  manifest.add_flag("sigma-x", format_double(a.sigma_x));
  manifest.add_flag("sigma-y", format_double(a.sigma_y));
  manifest.add_flag("normalize", normalize ? "true" : "false");
  manifest.add_seed("seed", a.seed);
  manifest.add_input(a.images);
  manifest.add_input(a.labels);
  manifest.write(out);

  out << "rho,jdd,critical_value,reject";
  if (a.trials) out << ",jdd_mean,jdd_min,jdd_max";
  out << '\n';
  for (std::size_t r = 0; r < rhos.size(); ++r) {
    const double first = jdd[0][r];
    out << format_double(rhos[r]) << ',' << format_double(first) << ',' << format_double(cv) << ','
        << (rejects(first, cv) ? 1 : 0);
    if (a.trials) {
      long double sum = 0.0L;
      double lo = first;
      double hi = first;
      for (std::size_t t = 0; t < trials; ++t) {
        sum += jdd[t][r];
        lo = std::min(lo, jdd[t][r]);
        hi = std::max(hi, jdd[t][r]);
      }
      out << ',' << format_double(static_cast<double>(sum / static_cast<long double>(trials))) << ','
          << format_double(lo) << ',' << format_double(hi);
    }
    out << '\n';
  }
  return kSuccess;
}

// ---------------------------------------------------------------------------
// calibrate

struct CalibrateArgs {
  std::string generator = "gaussian";
  std::size_t m = 100;
  double alpha = 0.05;
  std::size_t trials = 200;
  std::uint64_t seed = 1;
  double sigma_x = 0.25;
  double sigma_y = 0.25;
  std::size_t dim_x = 2;
  std::size_t dim_y = 2;
  std::string images;
  std::string labels;
  int digit = 3;
  bool no_normalize = false;
};

int cmd_calibrate(const CalibrateArgs& a, std::ostream& out) {
  if (a.trials < 1) throw InputError("--trials must be >= 1");
  if (a.m < 1) throw InputError("--m must be >= 1");
  RunManifest manifest = make_manifest("calibrate");
  manifest.add_flag("generator", a.generator);
  manifest.add_flag("m", std::to_string(a.m));
  manifest.add_flag("alpha", format_double(a.alpha));
  manifest.add_flag("trials", std::to_string(a.trials));
  manifest.add_flag("sigma-x", format_double(a.sigma_x));
  manifest.add_flag("sigma-y", format_double(a.sigma_y));
  manifest.add_seed("seed", a.seed);

  NullGenerator generator;
  if (a.generator == "gaussian") {
    manifest.add_flag("dim-x", std::to_string(a.dim_x));
    manifest.add_flag("dim-y", std::to_string(a.dim_y));
    generator = gaussian_null_generator(a.m, a.dim_x, a.dim_y);
  } else if (a.generator == "identical") {
    manifest.add_flag("dim-x", std::to_string(a.dim_x));
    manifest.add_flag("dim-y", std::to_string(a.dim_y));
    auto base = gaussian_null_generator(a.m, a.dim_x, a.dim_y)(a.seed);
    generator = identical_null_generator(std::move(base.p));
  } else {
    if (a.images.empty() || a.labels.empty()) {
      throw InputError("--generator mnist needs --images and --labels");
    }
    if (a.digit < 0 || a.digit > 9) throw InputError("--digit must be 0..9");
    manifest.add_flag("digit", std::to_string(a.digit));
    manifest.add_flag("normalize", a.no_normalize ? "false" : "true");
    manifest.add_input(a.images);
    manifest.add_input(a.labels);
    auto set = std::make_shared<const mnist::ImageSet>(mnist::load_idx(a.images, a.labels));
    generator = [set, digit = a.digit, m = a.m, normalize = !a.no_normalize](std::uint64_t seed) {
      return SamplePair{mnist::sample_class(*set, digit, m, 0.0, derive_seed(seed, 0), normalize),
                        mnist::sample_class(*set, digit, m, 0.0, derive_seed(seed, 1), normalize)};
    };
  }

  const auto result = calibrate_null(generator, KernelSpec::rbf(a.sigma_x), KernelSpec::rbf(a.sigma_y),
                                     a.alpha, a.trials, a.seed);
  manifest.write(out);
  out << "trial,jdd,critical_value,reject\n";
  long double sum = 0.0L;
  for (std::size_t t = 0; t < result.trials.size(); ++t) {
    const auto& tr = result.trials[t];
    sum += tr.jdd;
    out << t << ',' << format_double(tr.jdd) << ',' << format_double(result.critical_value) << ','
        << (tr.reject ? 1 : 0) << '\n';
  }
  out << "all," << format_double(static_cast<double>(sum / static_cast<long double>(a.trials))) << ','
      << format_double(result.critical_value) << ',' << format_double(result.rejection_rate) << '\n';
  return kSuccess;
}

// ---------------------------------------------------------------------------
// rademacher

struct RademacherArgs {
  std::string p;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  KernelOptions kernel;
};

int cmd_rademacher(const RademacherArgs& a, std::ostream& out, std::ostream& err) {
  if (a.trials < 2) throw InputError("--trials must be >= 2");
  const PairedSample s = read_paired_csv(a.p);
  const auto [kx, ky] = make_kernels(a.kernel, {&s});
  const auto est = rademacher_mc_estimate(kx, ky, s, a.trials, a.seed);
  const double jensen = rademacher_jensen_bound(kx, ky, s);
  const double uniform = rademacher_uniform_bound(kx, ky, s.size());

  RunManifest manifest = make_manifest("rademacher");
  manifest.add_flag("trials", std::to_string(a.trials));
  record_kernel_options(manifest, a.kernel);
  manifest.add_seed("seed", a.seed);
  manifest.add_input(a.p);
  manifest.write(out);
  out << "m,mc_mean,mc_std_error,jensen_bound,k_over_sqrt_m\n";
  out << s.size() << ',' << format_double(est.mean) << ',' << format_double(est.std_error) << ','
      << format_double(jensen) << ',' << format_double(uniform) << '\n';

  bool ok = true;
  if (est.mean > jensen + 3.0 * est.std_error) {
    err << "bound violation: Monte Carlo mean " << format_double(est.mean)
        << " exceeds Jensen bound + 3 standard errors " << format_double(jensen + 3.0 * est.std_error)
        << '\n';
    ok = false;
  }
  if (jensen > uniform + 1e-12) {
    err << "bound violation: Jensen bound " << format_double(jensen) << " exceeds K/sqrt(m) "
        << format_double(uniform) << '\n';
    ok = false;
  }
  return ok ? kSuccess : kBoundViolation;
}

// ---------------------------------------------------------------------------
// sample

struct SampleArgs {
  std::string images;
  std::string labels;
  int digit = 3;
  std::size_t m = 1000;
  double rho = 0.0;
  std::uint64_t seed = 1;
  bool no_normalize = false;
};

int cmd_sample(const SampleArgs& a, std::ostream& out) {
  if (a.digit < 0 || a.digit > 9) throw InputError("--digit must be 0..9");
  const auto set = mnist::load_idx(a.images, a.labels);
  const auto s = mnist::sample_class(set, a.digit, a.m, a.rho, a.seed, !a.no_normalize);
  RunManifest manifest = make_manifest("sample");
  manifest.add_flag("digit", std::to_string(a.digit));
  manifest.add_flag("m", std::to_string(a.m));
  manifest.add_flag("rho", format_double(a.rho));
  manifest.add_flag("normalize", a.no_normalize ? "false" : "true");
  manifest.add_seed("seed", a.seed);
  manifest.add_input(a.images);
  manifest.add_input(a.labels);
  manifest.write(out);
  write_paired_csv(out, s);
  return kSuccess;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kernel two-sample test for joint distributions"};
  app.name("jdd");
  app.set_version_flag("--version", std::string(JDD_VERSION));
  app.require_subcommand(1);

  TestArgs test;
  auto* test_cmd = app.add_subcommand("test", "Test whether two paired samples share a joint distribution");
  test_cmd->add_option("--p", test.p, "CSV of the first paired sample")->required();
  test_cmd->add_option("--q", test.q, "CSV of the second paired sample")->required();
  test_cmd->add_option("--alpha", test.alpha, "Level plugged into the critical value")->capture_default_str();
  add_kernel_options(test_cmd, test.kernel);
  test_cmd->add_flag("--json", test.json, "Print the report as JSON");

  ThresholdArgs threshold;
  auto* threshold_cmd = app.add_subcommand("threshold", "Tabulate critical values over alpha x m");
  threshold_cmd->add_option("--alphas", threshold.alphas, "List a,b,c or range start:stop:step")
      ->capture_default_str();
  threshold_cmd->add_option("--ms", threshold.ms, "List or range of sample sizes")->capture_default_str();
  threshold_cmd->add_option("--k", threshold.k, "Kernel bound K")->capture_default_str();

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("mnist-sweep", "JDD between unrotated and rotated MNIST samples");
  sweep_cmd->add_option("--images", sweep.images, "IDX image file")->required();
  sweep_cmd->add_option("--labels", sweep.labels, "IDX label file")->required();
  sweep_cmd->add_option("--digit", sweep.digit)->capture_default_str();
  sweep_cmd->add_option("--m", sweep.m)->capture_default_str();
  sweep_cmd->add_option("--alpha", sweep.alpha)->capture_default_str();
  sweep_cmd->add_option("--rho-min", sweep.rho_min)->capture_default_str();
  sweep_cmd->add_option("--rho-max", sweep.rho_max)->capture_default_str();
  sweep_cmd->add_option("--rho-step", sweep.rho_step)->capture_default_str();
  sweep_cmd->add_option("--seed", sweep.seed)->capture_default_str();
  sweep_cmd->add_option("--trials", sweep.trials, "Repeat each rotation and add mean/min/max columns");
  sweep_cmd->add_option("--sigma-x", sweep.sigma_x)->capture_default_str();
  sweep_cmd->add_option("--sigma-y", sweep.sigma_y)->capture_default_str();
  sweep_cmd->add_flag("--no-normalize", sweep.no_normalize, "Use raw intensity sums instead of normalized histograms");

  CalibrateArgs calib;
  auto* calib_cmd = app.add_subcommand("calibrate", "Rejection rate under the null hypothesis");
  calib_cmd->add_option("--generator", calib.generator)
      ->check(CLI::IsMember({"gaussian", "mnist", "identical"}))
      ->capture_default_str();
  calib_cmd->add_option("--m", calib.m)->capture_default_str();
  calib_cmd->add_option("--alpha", calib.alpha)->capture_default_str();
  calib_cmd->add_option("--trials", calib.trials)->capture_default_str();
  calib_cmd->add_option("--seed", calib.seed)->capture_default_str();
  calib_cmd->add_option("--sigma-x", calib.sigma_x)->capture_default_str();
  calib_cmd->add_option("--sigma-y", calib.sigma_y)->capture_default_str();
  calib_cmd->add_option("--dim-x", calib.dim_x, "gaussian/identical: x dimension")->capture_default_str();
  calib_cmd->add_option("--dim-y", calib.dim_y, "gaussian/identical: y dimension")->capture_default_str();
  calib_cmd->add_option("--images", calib.images, "mnist: IDX image file");
  calib_cmd->add_option("--labels", calib.labels, "mnist: IDX label file");
  calib_cmd->add_option("--digit", calib.digit, "mnist: digit class")->capture_default_str();
  calib_cmd->add_flag("--no-normalize", calib.no_normalize, "mnist: raw intensity sums instead of normalized histograms");

  RademacherArgs rad;
  auto* rad_cmd = app.add_subcommand("rademacher", "Monte Carlo joint Rademacher average and its bounds");
  rad_cmd->add_option("--p", rad.p, "CSV paired sample")->required();
  rad_cmd->add_option("--trials", rad.trials)->capture_default_str();
  rad_cmd->add_option("--seed", rad.seed)->capture_default_str();
  add_kernel_options(rad_cmd, rad.kernel);

  SampleArgs sample;
  auto* sample_cmd = app.add_subcommand("sample", "Write an MNIST projection-histogram sample as CSV");
  sample_cmd->add_option("--images", sample.images, "IDX image file")->required();
  sample_cmd->add_option("--labels", sample.labels, "IDX label file")->required();
  sample_cmd->add_option("--digit", sample.digit)->capture_default_str();
  sample_cmd->add_option("--m", sample.m)->capture_default_str();
  sample_cmd->add_option("--rho", sample.rho)->capture_default_str();
  sample_cmd->add_option("--seed", sample.seed)->capture_default_str();
  sample_cmd->add_flag("--no-normalize", sample.no_normalize);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::CallForVersion&) {
    out << JDD_VERSION << '\n';
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "jdd: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (test_cmd->parsed()) return cmd_test(test, out);
    if (threshold_cmd->parsed()) return cmd_threshold(threshold, out);
    if (sweep_cmd->parsed()) return cmd_mnist_sweep(sweep, out);
    if (calib_cmd->parsed()) return cmd_calibrate(calib, out);
    if (rad_cmd->parsed()) return cmd_rademacher(rad, out, err);
    if (sample_cmd->parsed()) return cmd_sample(sample, out);
  } catch (const std::logic_error& e) {
    if (dynamic_cast<const std::invalid_argument*>(&e) != nullptr) {
      err << "jdd: " << e.what() << '\n';
      return kUsage;
    }
    err << "jdd: internal error: " << e.what() << '\n';
    return kBoundViolation;
  } catch (const std::exception& e) {
    err << "jdd: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace jdd::cli
