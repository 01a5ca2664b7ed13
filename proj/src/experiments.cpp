#include "itocx/experiments.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>

#include "itocx/integrate.hpp"
#include "itocx/paths.hpp"
#include "itocx/specfun.hpp"
#include "itocx/stats.hpp"
#include "itocx/transform.hpp"

namespace itocx {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Root for one experiment; folds in the configured stream so that distinct
// (root, stream) pairs give unrelated ensembles.
std::uint64_t experiment_root(const ExperimentConfig& c, ExperimentKind kind) {
  const SeedSpec folded{splitmix64(c.seed.root ^ splitmix64(c.seed.stream)), 0};
  return folded.derive(static_cast<std::uint64_t>(kind) + 1).root;
}

std::uint64_t sub_root(std::uint64_t root, std::uint64_t tag) {
  return SeedSpec{root, 0}.derive(tag).root;
}

std::int64_t as_int(std::size_t n) { return static_cast<std::int64_t>(n); }

ExperimentReport start_report(ExperimentKind kind, const ExperimentConfig& c) {
  ExperimentReport r;
  r.name = std::string(experiment_name(kind));
  r.set_config("seed_root", static_cast<std::int64_t>(c.seed.root));
  r.set_config("seed_stream", static_cast<std::int64_t>(c.seed.stream));
  switch (kind) {
    case ExperimentKind::dist_check:
    case ExperimentKind::survival_check:
    case ExperimentKind::tail_index:
      r.set_config("n_samples", as_int(c.n_samples));
      break;
    case ExperimentKind::divergence:
    case ExperimentKind::ito_check:
    case ExperimentKind::martingale_check:
      r.set_config("n_paths", as_int(c.n_paths));
      r.set_config("steps", as_int(c.steps));
      r.set_config("horizon", c.horizon);
      break;
    case ExperimentKind::gsigma:
      break;
  }
  if (kind == ExperimentKind::survival_check || kind == ExperimentKind::tail_index ||
      kind == ExperimentKind::gsigma) {
    r.set_config("sigmas", c.sigmas);
  }
  if (kind == ExperimentKind::tail_index || kind == ExperimentKind::divergence) {
    r.set_config("k", c.hill_k ? as_int(*c.hill_k) : std::int64_t{0});
  }
  r.set_config("batch", as_int(c.batch));
  r.set_config("format", c.format == ReportFormat::json ? "json" : "csv");
  return r;
}

template <class Body>
void in_batches(std::size_t n, std::size_t batch, Body&& body) {
  for (std::size_t lo = 0; lo < n; lo += batch) body(lo, std::min(n, lo + batch));
}

// transform(Z_i) for i < n, batched. Range errors become NaN.
std::vector<double> transformed_sample(const ExperimentConfig& c, SeedSpec seed, std::size_t n,
                                       const std::function<double(double)>& transform) {
  std::vector<double> out(n);
  const std::function<double(double)> guarded = [&transform](double z) {
    try {
      return transform(z);
    } catch (const std::range_error&) {
      return kNaN;
    }
  };
  in_batches(n, c.batch, [&](std::size_t lo, std::size_t hi) {
    kernels::transform_normals(seed, lo, std::span<double>(out).subspan(lo, hi - lo), guarded,
                               c.policy);
  });
  return out;
}

std::vector<double> finite_only(const std::vector<double>& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (double x : v) {
    if (std::isfinite(x)) out.push_back(x);
  }
  return out;
}

double median(std::vector<double> v) {
  const std::size_t n = v.size();
  std::nth_element(v.begin(), v.begin() + n / 2, v.end());
  const double upper = v[n / 2];
  if (n % 2) return upper;
  return 0.5 * (upper + *std::max_element(v.begin(), v.begin() + n / 2));
}

std::string sigma_key(double sigma) { return "sigma=" + format_number(sigma); }

std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

double mean_of(std::span<const double> v) {
  CompensatedSum acc;
  for (double x : v) acc.add(x);
  return acc.value() / static_cast<double>(v.size());
}

double sample_sd(std::span<const double> v) {
  const double m = mean_of(v);
  CompensatedSum acc;
  for (double x : v) acc.add((x - m) * (x - m));
  return std::sqrt(acc.value() / static_cast<double>(v.size() - 1));
}

}  // namespace

std::string_view experiment_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::dist_check: return "dist-check";
    case ExperimentKind::survival_check: return "survival-check";
    case ExperimentKind::tail_index: return "tail-index";
    case ExperimentKind::divergence: return "divergence";
    case ExperimentKind::ito_check: return "ito-check";
    case ExperimentKind::martingale_check: return "martingale-check";
    case ExperimentKind::gsigma: return "gsigma";
  }
  return "unknown";
}

std::optional<ExperimentKind> parse_experiment(std::string_view name) {
  for (ExperimentKind k : kAllExperiments) {
    if (experiment_name(k) == name) return k;
  }
  return std::nullopt;
}

ExperimentConfig default_config(ExperimentKind kind) {
  ExperimentConfig c;
  switch (kind) {
    case ExperimentKind::dist_check:
      c.n_samples = 100000;
      c.batch = 100000;
      break;
    case ExperimentKind::survival_check:
      c.n_samples = 1000000;
      c.batch = 100000;
      c.sigmas = {1.0, 2.0};
      break;
    case ExperimentKind::tail_index:
      c.n_samples = 1000000;
      c.batch = 100000;
      c.sigmas = {0.7, 1.0, 1.2};
      break;
    case ExperimentKind::divergence:
      c.n_paths = 100000;
      c.steps = 1024;
      c.horizon = 2.0;
      c.batch = 10000;
      break;
    case ExperimentKind::ito_check:
      c.n_paths = 200;
      c.steps = 16384;
      c.horizon = 1.0;
      c.batch = 200;
      break;
    case ExperimentKind::martingale_check:
      c.n_paths = 100000;
      c.steps = 256;
      c.horizon = 1.0;
      c.batch = 10000;
      break;
    case ExperimentKind::gsigma:
      c.sigmas = {1.0, 2.0, 4.0, 8.0, 100.0};
      c.batch = 1;
      break;
  }
  return c;
}

void validate(ExperimentKind kind, const ExperimentConfig& c) {
  require(c.batch > 0, "batch must be positive");
  const auto positive_sigmas = [&] {
    require(!c.sigmas.empty(), "at least one sigma is required");
    for (double s : c.sigmas) require(s > 0.0 && std::isfinite(s), "sigma must be positive");
  };
  switch (kind) {
    case ExperimentKind::dist_check:
      require(c.n_samples >= 10000, "dist-check needs n >= 10000");
      break;
    case ExperimentKind::survival_check:
      require(c.n_samples >= 100000, "survival-check needs n >= 100000");
      positive_sigmas();
      break;
    case ExperimentKind::tail_index:
      positive_sigmas();
      require(c.n_samples >= 1000, "tail-index needs n >= 1000");
      if (c.hill_k) require(*c.hill_k >= 10 && *c.hill_k < c.n_samples, "k must lie in [10, n)");
      break;
    case ExperimentKind::divergence:
      require(c.horizon >= 2.0 && std::isfinite(c.horizon), "divergence needs horizon >= 2");
      require(c.steps >= 1024, "divergence needs steps >= 1024");
      require(c.n_paths >= 100, "divergence needs at least 100 paths");
      break;
    case ExperimentKind::ito_check:
      require(c.horizon > 0.0 && std::isfinite(c.horizon), "horizon must be positive");
      require(c.steps >= 2 * kItoCoarsestSteps && std::has_single_bit(c.steps),
              "ito-check needs steps a power of two >= 512");
      require(c.n_paths >= 3, "ito-check needs at least 3 paths");
      break;
    case ExperimentKind::martingale_check:
      require(c.horizon > 0.0 && std::isfinite(c.horizon), "horizon must be positive");
      require(c.n_paths >= 100000, "martingale-check needs at least 100000 paths");
      break;
    case ExperimentKind::gsigma:
      positive_sigmas();
      break;
  }
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw std::invalid_argument("log_log_slope: need two or more (x, y) pairs");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

ExperimentReport run_dist_check(const ExperimentConfig& c) {
  validate(ExperimentKind::dist_check, c);
  const Stopwatch clock;
  ExperimentReport r = start_report(ExperimentKind::dist_check, c);
  const SeedSpec seed{experiment_root(c, ExperimentKind::dist_check), 0};
  const std::size_t n = c.n_samples;

  const auto t2_lower = [](double x) { return t2_cdf(x).lower_value(); };
  const EmpiricalSample transformed(transformed_sample(c, seed, n, [](double z) { return h(z); }));
  const EmpiricalSample untouched(transformed_sample(c, seed, n, [](double z) { return z; }));

  const double d = ks_statistic(transformed, t2_lower);
  const double d_control = ks_statistic(untouched, t2_lower);
  const double threshold = kKsCritical01 / std::sqrt(static_cast<double>(n));

  r.set_scalar("D", d);
  r.set_scalar("threshold", threshold);
  r.set_scalar("critical_constant", kKsCritical01);
  r.set_scalar("accepts_t2", d < threshold);
  r.set_scalar("control_D", d_control);
  r.set_scalar("control_rejected", d_control >= threshold);
  r.pass = d < threshold && d_control >= threshold;
  r.duration_seconds = clock.seconds();
  return r;
}

ExperimentReport run_survival_check(const ExperimentConfig& c) {
  validate(ExperimentKind::survival_check, c);
  const Stopwatch clock;
  ExperimentReport r = start_report(ExperimentKind::survival_check, c);
  const SeedSpec seed{experiment_root(c, ExperimentKind::survival_check), 0};
  static constexpr std::array<double, 5> kLevels{1e-6, 0.5, 2.0, 10.0, 100.0};

  const std::vector<double> sigmas = sorted_unique(c.sigmas);
  bool all_within = true;
  std::vector<std::vector<double>> empirical(sigmas.size());
  for (std::size_t s = 0; s < sigmas.size(); ++s) {
    const double sigma = sigmas[s];
    const std::vector<double> raw = transformed_sample(c, seed, c.n_samples, [sigma](double z) {
      const double v = h(sigma * z);
      return v * v;
    });
    const EmpiricalSample sample(finite_only(raw));
    r.add_exclusions("range_error_samples[" + sigma_key(sigma) + "]",
                     as_int(raw.size() - sample.size()));
    const double n = static_cast<double>(sample.size());
    std::vector<double> theory_series;
    for (double y : kLevels) {
      const double emp = sample.survival_fraction(y);
      const double theory = 1.0 - gsigma_cdf(y, sigma);
      const double se = std::sqrt(theory * (1.0 - theory) / n);
      const bool within = std::fabs(emp - theory) <= 3.0 * se;
      all_within = all_within && within;
      const std::string key = sigma_key(sigma) + ",y=" + format_number(y);
      r.set_scalar(key + ".empirical", emp);
      r.set_scalar(key + ".theory", theory);
      r.set_scalar(key + ".se", se);
      r.set_scalar(key + ".within_3se", within);
      empirical[s].push_back(emp);
      theory_series.push_back(theory);
    }
    r.set_series("empirical[" + sigma_key(sigma) + "]", empirical[s]);
    r.set_series("theory[" + sigma_key(sigma) + "]", theory_series);
  }
  r.set_series("levels", std::vector<double>(kLevels.begin(), kLevels.end()));

  bool increasing = true;
  for (std::size_t s = 1; s < sigmas.size(); ++s) {
    for (std::size_t j = 0; j < kLevels.size(); ++j) {
      increasing = increasing && empirical[s][j] > empirical[s - 1][j];
    }
  }
  r.set_scalar("all_within_3se", all_within);
  r.set_scalar("survival_increases_with_sigma", increasing);
  r.pass = all_within && increasing;
  r.duration_seconds = clock.seconds();
  return r;
}

ExperimentReport run_tail_index(const ExperimentConfig& c) {
  validate(ExperimentKind::tail_index, c);
  const Stopwatch clock;
  ExperimentReport r = start_report(ExperimentKind::tail_index, c);
  const SeedSpec seed{experiment_root(c, ExperimentKind::tail_index), 0};

  std::vector<double> sigma_series, alpha_series, se_series;
  bool infinite_mean_where_claimed = true;
  for (double sigma : c.sigmas) {
    const std::vector<double> raw = transformed_sample(c, seed, c.n_samples, [sigma](double z) {
      const double v = h(sigma * z);
      return v * v;
    });
    const EmpiricalSample sample(finite_only(raw));
    r.add_exclusions("range_error_samples[" + sigma_key(sigma) + "]",
                     as_int(raw.size() - sample.size()));
    const std::size_t k = c.hill_k.value_or(default_hill_k(sample.size()));
    const TailIndexEstimate est = hill_estimator(sample, k);
    const bool finite_mean = est.alpha_hat - 3.0 * est.standard_error > 1.0;
    const std::string key = sigma_key(sigma);
    r.set_scalar(key + ".alpha_hat", est.alpha_hat);
    r.set_scalar(key + ".se", est.standard_error);
    r.set_scalar(key + ".k", as_int(est.k));
    r.set_scalar(key + ".verdict", finite_mean ? "finite mean" : "infinite mean");
    if (sigma >= 1.0) infinite_mean_where_claimed = infinite_mean_where_claimed && !finite_mean;
    sigma_series.push_back(sigma);
    alpha_series.push_back(est.alpha_hat);
    se_series.push_back(est.standard_error);
  }
  r.set_series("sigma", sigma_series);
  r.set_series("alpha_hat", alpha_series);
  r.set_series("se", se_series);
  r.set_scalar("infinite_mean_for_sigma_ge_1", infinite_mean_where_claimed);
  r.pass = infinite_mean_where_claimed;
  r.duration_seconds = clock.seconds();
  return r;
}

ExperimentReport run_divergence(const ExperimentConfig& c) {
  validate(ExperimentKind::divergence, c);
  const Stopwatch clock;
  ExperimentReport r = start_report(ExperimentKind::divergence, c);
  const std::uint64_t root = experiment_root(c, ExperimentKind::divergence);
  const TimeGrid grid = TimeGrid::uniform(c.horizon, c.steps);
  const std::size_t n = c.n_paths;
  constexpr double kRatioThreshold = 1.05;
  constexpr double kRequiredFraction = 0.8;
  constexpr double kControlLow = 0.99;
  constexpr double kControlHigh = 1.01;

  enum : std::uint8_t { kRetained, kEscaped, kNonFinite };
  std::vector<double> ratio_h, ratio_cos, pooled;
  std::vector<double> first_profile, first_checkpoints;
  std::size_t retained_total = 0, finite_total = 0, escaped_total = 0, nonfinite_total = 0;

  std::vector<double> l2h(n), l2cos(n);
  std::vector<std::uint8_t> status(n);
  for (std::size_t rep = 0; rep < kDivergenceReplicates; ++rep) {
    const std::uint64_t rep_root = sub_root(root, rep);
    in_batches(n, c.batch, [&](std::size_t lo, std::size_t hi) {
      kernels::for_each_path(grid, rep_root, lo, hi, c.policy,
                             [&](std::size_t i, const SamplePath& path) {
        l2cos[i] = pathwise_l2_functional(path, [](double, double w) { return std::cos(w); }).value;
        if (path.max_abs() > kPathEscapeLevel) {
          status[i] = kEscaped;
          l2h[i] = kNaN;
          return;
        }
        const PathIntegralResult res = pathwise_l2_functional(path, kTransformIntegrand);
        status[i] = res.overflow ? kNonFinite : kRetained;
        l2h[i] = res.overflow ? kNaN : res.value;
      });
    });

    std::vector<double> kept;
    kept.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (status[i] == kEscaped) {
        ++escaped_total;
        continue;
      }
      ++retained_total;
      if (status[i] == kNonFinite) {
        ++nonfinite_total;
        continue;
      }
      ++finite_total;
      kept.push_back(l2h[i]);
    }
    pooled.insert(pooled.end(), kept.begin(), kept.end());

    const EmpiricalSample h_sample(std::move(kept));
    const std::size_t m = h_sample.size();
    const std::array<std::size_t, 2> halves{m / 2, m};
    const auto h_profile = running_mean_profile(h_sample, halves);
    ratio_h.push_back(h_profile[1] / h_profile[0]);

    const EmpiricalSample cos_sample(l2cos);
    const std::array<std::size_t, 2> cos_halves{n / 2, n};
    const auto cos_profile = running_mean_profile(cos_sample, cos_halves);
    ratio_cos.push_back(cos_profile[1] / cos_profile[0]);

    if (rep == 0) {
      std::vector<std::size_t> checkpoints;
      for (std::size_t p = 1; p < m; p *= 2) checkpoints.push_back(p);
      checkpoints.push_back(m);
      first_profile = running_mean_profile(h_sample, checkpoints);
      for (std::size_t p : checkpoints) first_checkpoints.push_back(static_cast<double>(p));
    }
  }

  const auto nonstabilizing = static_cast<double>(
      std::count_if(ratio_h.begin(), ratio_h.end(), [](double x) { return x > kRatioThreshold; }));
  const double nonstabilizing_fraction = nonstabilizing / static_cast<double>(ratio_h.size());
  const auto [cos_min, cos_max] = std::minmax_element(ratio_cos.begin(), ratio_cos.end());
  const bool control_stable = *cos_min >= kControlLow && *cos_max <= kControlHigh;
  const double finite_fraction =
      retained_total ? static_cast<double>(finite_total) / static_cast<double>(retained_total) : 0.0;

  const EmpiricalSample pooled_sample(std::move(pooled));
  const std::size_t k = c.hill_k.value_or(default_hill_k(pooled_sample.size()));
  const TailIndexEstimate est = hill_estimator(pooled_sample, k);

  r.set_scalar("replicates", as_int(kDivergenceReplicates));
  r.set_scalar("finite_fraction", finite_fraction);
  r.set_scalar("l2_witness", finite_fraction == 1.0);
  r.set_scalar("ratio_threshold", kRatioThreshold);
  r.set_scalar("nonstabilizing_fraction", nonstabilizing_fraction);
  r.set_scalar("required_fraction", kRequiredFraction);
  r.set_scalar("running_mean_diverges", nonstabilizing_fraction >= kRequiredFraction);
  r.set_scalar("control_ratio_min", *cos_min);
  r.set_scalar("control_ratio_max", *cos_max);
  r.set_scalar("control_band_low", kControlLow);
  r.set_scalar("control_band_high", kControlHigh);
  r.set_scalar("control_stabilizes", control_stable);
  r.set_scalar("hill_alpha_hat", est.alpha_hat);
  r.set_scalar("hill_se", est.standard_error);
  r.set_scalar("hill_k", as_int(est.k));
  r.set_series("ratio_h", ratio_h);
  r.set_series("ratio_cos", ratio_cos);
  r.set_series("running_mean_checkpoints", first_checkpoints);
  r.set_series("running_mean_h", first_profile);
  r.add_exclusions("escaped_paths", as_int(escaped_total));
  r.add_exclusions("nonfinite_integrals", as_int(nonfinite_total));
  r.pass = finite_fraction == 1.0 && nonstabilizing_fraction >= kRequiredFraction && control_stable;
  r.duration_seconds = clock.seconds();
  return r;
}

ExperimentReport run_ito_check(const ExperimentConfig& c) {
  validate(ExperimentKind::ito_check, c);
  const Stopwatch clock;
  ExperimentReport r = start_report(ExperimentKind::ito_check, c);
  const std::uint64_t root = experiment_root(c, ExperimentKind::ito_check);
  const AntiderivativeTable table;
  constexpr double kSlopeLow = -0.7;
  constexpr double kSlopeHigh = -0.3;

  std::vector<std::size_t> ladder;
  for (std::size_t s = kItoCoarsestSteps; s <= c.steps; s *= 2) ladder.push_back(s);
  const std::size_t levels = ladder.size();
  const TimeGrid coarse = TimeGrid::uniform(c.horizon, kItoCoarsestSteps);

  // residual[i * levels + l]; NaN marks an excluded path.
  std::vector<double> residual(c.n_paths * levels, kNaN);
  in_batches(c.n_paths, c.batch, [&](std::size_t lo, std::size_t hi) {
    kernels::for_each_path(coarse, root, lo, hi, c.policy, [&](std::size_t i, const SamplePath& p) {
      SamplePath path = p;
      std::vector<double> row(levels);
      for (std::size_t l = 0; l < levels; ++l) {
        if (path.max_abs() > kPathEscapeLevel) return;
        row[l] = ito_lemma_residual(path, table);
        if (l + 1 < levels) path = bridge_refine(path, SeedSpec{sub_root(root, l + 1), i});
      }
      std::copy(row.begin(), row.end(), residual.begin() + static_cast<std::ptrdiff_t>(i * levels));
    });
  });

  std::size_t retained = 0;
  std::vector<std::vector<double>> by_level(levels);
  for (std::size_t i = 0; i < c.n_paths; ++i) {
    if (std::isnan(residual[i * levels])) continue;
    ++retained;
    for (std::size_t l = 0; l < levels; ++l) by_level[l].push_back(std::fabs(residual[i * levels + l]));
  }
  if (retained == 0) throw std::runtime_error("ito-check: every path escaped");

  std::vector<double> steps_series, medians;
  for (std::size_t l = 0; l < levels; ++l) {
    steps_series.push_back(static_cast<double>(ladder[l]));
    medians.push_back(median(by_level[l]));
  }
  const double slope = log_log_slope(steps_series, medians);
  bool monotone = true;
  for (std::size_t l = 1; l < levels; ++l) monotone = monotone && medians[l] < medians[l - 1];

  // A constant path has zero quadratic variation, so its residual is the
  // whole correction term: -(1/2) h'(0) T.
  std::vector<double> constant_residuals;
  for (std::size_t s : ladder) {
    const TimeGrid grid = TimeGrid::uniform(c.horizon, s);
    const SamplePath flat(grid, std::vector<double>(grid.size(), 0.0), SeedSpec{});
    constant_residuals.push_back(ito_lemma_residual(flat, table));
  }
  double constant_max = 0.0;
  for (double v : constant_residuals) constant_max = std::max(constant_max, std::fabs(v));

  r.set_scalar("slope", slope);
  r.set_scalar("slope_low", kSlopeLow);
  r.set_scalar("slope_high", kSlopeHigh);
  r.set_scalar("slope_in_band", slope >= kSlopeLow && slope <= kSlopeHigh);
  r.set_scalar("median_first", medians.front());
  r.set_scalar("median_last", medians.back());
  r.set_scalar("last_below_first", medians.back() < medians.front());
  r.set_scalar("monotone_decrease", monotone);
  r.set_scalar("constant_path_max_abs_residual", constant_max);
  r.set_scalar("constant_path_expected", -0.5 * h_prime(0.0) * c.horizon);
  r.set_series("steps", steps_series);
  r.set_series("median_abs_residual", medians);
  r.set_series("constant_path_residual", constant_residuals);
  r.add_exclusions("escaped_paths", as_int(c.n_paths - retained));
  r.pass = slope >= kSlopeLow && slope <= kSlopeHigh && medians.back() < medians.front();
  r.duration_seconds = clock.seconds();
  return r;
}

ExperimentReport run_martingale_check(const ExperimentConfig& c) {
  validate(ExperimentKind::martingale_check, c);
  const Stopwatch clock;
  ExperimentReport r = start_report(ExperimentKind::martingale_check, c);
  const std::uint64_t root = experiment_root(c, ExperimentKind::martingale_check);
  const TimeGrid grid = TimeGrid::uniform(c.horizon, c.steps);
  const std::size_t n = c.n_paths;

  std::vector<double> cos_sums(n), h_sums(n);
  in_batches(n, c.batch, [&](std::size_t lo, std::size_t hi) {
    kernels::for_each_path(grid, root, lo, hi, c.policy, [&](std::size_t i, const SamplePath& path) {
      cos_sums[i] = ito_left_sum(path, [](double, double w) { return std::cos(w); }).value;
      if (path.max_abs() > kPathEscapeLevel) {
        h_sums[i] = kNaN;
        return;
      }
      const PathIntegralResult res = ito_left_sum(path, kTransformIntegrand);
      h_sums[i] = res.overflow ? kNaN : res.value;
    });
  });

  const double mean = mean_of(cos_sums);
  const double sd = sample_sd(cos_sums);
  const double se = sd / std::sqrt(static_cast<double>(n));
  const std::span<const double> half(cos_sums.data(), n / 2);
  const double se_half = sample_sd(half) / std::sqrt(static_cast<double>(half.size()));

  const std::vector<double> h_kept = finite_only(h_sums);
  const double h_mean = mean_of(h_kept);
  const double h_se = sample_sd(h_kept) / std::sqrt(static_cast<double>(h_kept.size()));

  r.set_scalar("mean", mean);
  r.set_scalar("sd", sd);
  r.set_scalar("se", se);
  r.set_scalar("z", mean / se);
  r.set_scalar("within_3se", std::fabs(mean) < 3.0 * se);
  r.set_scalar("se_half", se_half);
  r.set_scalar("se_ratio_half_to_full", se_half / se);
  r.set_scalar("h_mean", h_mean);
  r.set_scalar("h_se", h_se);
  r.set_scalar("h_caveat", "not in H2 - mean unreliable");
  r.add_exclusions("escaped_paths_h", as_int(n - h_kept.size()));
  r.pass = std::fabs(mean) < 3.0 * se;
  r.duration_seconds = clock.seconds();
  return r;
}

ExperimentReport run_gsigma_monotonicity(const ExperimentConfig& c) {
  validate(ExperimentKind::gsigma, c);
  const Stopwatch clock;
  ExperimentReport r = start_report(ExperimentKind::gsigma, c);
  static constexpr std::array<double, 3> kLevels{0.1, 1.0, 10.0};
  constexpr double kFarSigma = 100.0;
  constexpr double kFarBound = 0.01;
  constexpr double kConsistencyTolerance = 1e-10;

  const std::vector<double> sigmas = sorted_unique(c.sigmas);
  bool decreasing = true;
  for (double y : kLevels) {
    std::vector<double> column;
    for (double sigma : sigmas) column.push_back(gsigma_cdf(y, sigma));
    for (std::size_t j = 1; j < column.size(); ++j) decreasing = decreasing && column[j] < column[j - 1];
    r.set_series("G[y=" + format_number(y) + "]", column);
  }
  r.set_series("sigma", sigmas);

  const double far = gsigma_cdf(1.0, kFarSigma);
  double worst = 0.0;
  for (double y : kLevels) {
    worst = std::max(worst, std::fabs(gsigma_cdf(y, 1.0) - (1.0 - t2_squared_survival(y))));
  }
  r.set_scalar("strictly_decreasing", decreasing);
  r.set_scalar("G_far", far);
  r.set_scalar("G_far_sigma", kFarSigma);
  r.set_scalar("G_far_bound", kFarBound);
  r.set_scalar("G_far_below_bound", far < kFarBound);
  r.set_scalar("sigma1_max_abs_error", worst);
  r.set_scalar("sigma1_tolerance", kConsistencyTolerance);
  r.set_scalar("sigma1_consistent", worst <= kConsistencyTolerance);
  r.pass = decreasing && far < kFarBound && worst <= kConsistencyTolerance;
  r.duration_seconds = clock.seconds();
  return r;
}

ExperimentReport run_experiment(ExperimentKind kind, const ExperimentConfig& config) {
  switch (kind) {
    case ExperimentKind::dist_check: return run_dist_check(config);
    case ExperimentKind::survival_check: return run_survival_check(config);
    case ExperimentKind::tail_index: return run_tail_index(config);
    case ExperimentKind::divergence: return run_divergence(config);
    case ExperimentKind::ito_check: return run_ito_check(config);
    case ExperimentKind::martingale_check: return run_martingale_check(config);
    case ExperimentKind::gsigma: return run_gsigma_monotonicity(config);
  }
  throw std::invalid_argument("unknown experiment");
}

}  // namespace itocx
