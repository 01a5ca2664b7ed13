// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "itocx/experiments.hpp"
#include "itocx/rng.hpp"
#include "itocx/specfun.hpp"
#include "itocx/stats.hpp"
#include "itocx/transform.hpp"

using namespace itocx;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

struct Criterion {
  std::string id;
  std::string title;
  double budget_seconds;  // 0 means no runtime bound
  std::function<Outcome()> check;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

Outcome special_functions() {
  double worst_mass = 0.0, worst_x = 0.0;
  for (const DistributionSpec& law : {kStandardNormal, kStudentT2}) {
    for (double e = -300.0; e <= std::log10(0.5) + 1e-12; e += 0.1) {
      const double p = std::min(0.5, std::pow(10.0, e));
      const double x = law.quantile(TailProbability::lower(p));
      const auto back = law.cdf(x);
      worst_mass = std::max(worst_mass, std::fabs(back.lower_value() - p) / p);
      worst_x = std::max(worst_x, std::fabs(law.quantile(back) - x) / std::max(1.0, std::fabs(x)));
    }
  }
  double worst_pdf = 0.0;
  const double eps = 1e-4;
  for (double x = -20.0; x <= 20.0; x += 0.01) {
    const double fd = (t2_cdf(x + eps).lower_value() - t2_cdf(x - eps).lower_value()) / (2 * eps);
    worst_pdf = std::max(worst_pdf, std::fabs(fd - t2_pdf(x)));
  }
  const bool pass = worst_mass <= 1e-11 && worst_x <= 1e-11 && worst_pdf <= 1e-6;
  return {pass, fmt("mass rel err %.2e, quantile err %.2e, pdf vs FD %.2e", worst_mass, worst_x, worst_pdf)};
}

Outcome transform_identities() {
  const AntiderivativeTable table;
  bool ok = h(0.0) == 0.0 && f_eval(0.0, table) == 0.0;
  double odd = 0.0, inv1 = 0.0, inv2 = 0.0, dh = 0.0, df = 0.0, even = 0.0;
  const double eps = 1e-5;
  for (double x = -8.0; x <= 8.0; x += 0.01) {
    odd = std::max(odd, std::fabs(h(x) + h(-x)));
    inv2 = std::max(inv2, std::fabs(h_inv(h(x)) - x));
    const double fd = (h(x + eps) - h(x - eps)) / (2 * eps);
    dh = std::max(dh, std::fabs(fd - h_prime(x)) / h_prime(x));
    even = std::max(even, std::fabs(f_eval(x, table) - f_eval(-x, table)));
    if (std::fabs(x) > 1e-3) {
      const double fdf = (f_eval(x + eps, table) - f_eval(x - eps, table)) / (2 * eps);
      df = std::max(df, std::fabs(fdf - h(x)) / std::fabs(h(x)));
    }
  }
  for (double e = -6.0; e <= 6.0; e += 0.01) {
    for (double s : {-1.0, 1.0}) {
      const double y = s * std::pow(10.0, e);
      inv1 = std::max(inv1, std::fabs(h(h_inv(y)) - y) / std::max(1.0, std::fabs(y)));
    }
  }
  ok = ok && odd <= 1e-12 && inv1 <= 1e-9 && inv2 <= 1e-9 && dh <= 1e-6 && even == 0.0 && df <= 1e-6;
  return {ok, fmt("odd %.1e, h.h^-1 %.1e, h^-1.h %.1e, h' rel %.1e, f' rel %.1e", odd, inv1, inv2, dh, df)};
}

Outcome distributional_identity() {
  const auto r = run_dist_check(default_config(ExperimentKind::dist_check));
  return {r.flag("accepts_t2") && r.flag("control_rejected"),
          fmt("D %.5f < %.5f; identity control D %.5f", r.number("D"), r.number("threshold"),
              r.number("control_D"))};
}

Outcome survival_law() {
  auto c = default_config(ExperimentKind::survival_check);
  c.sigmas = {1.0};
  const auto r = run_survival_check(c);
  bool ok = true;
  std::string detail;
  for (const char* y : {"0.5", "2", "10", "100"}) {
    const std::string key = std::string("sigma=1,y=") + y;
    const double z = (r.number(key + ".empirical") - r.number(key + ".theory")) / r.number(key + ".se");
    ok = ok && std::fabs(z) <= 3.0;
    detail += fmt("y=%s z=%+.2f ", y, z);
  }
  return {ok, detail};
}

Outcome tail_signature() {
  auto c = default_config(ExperimentKind::tail_index);
  c.hill_k = 10000;
  const auto r = run_tail_index(c);
  const double a07 = r.number("sigma=0.7.alpha_hat");
  const double a1 = r.number("sigma=1.alpha_hat");
  const double a12 = r.number("sigma=1.2.alpha_hat");
  const bool ok = a1 >= 0.9 && a1 <= 1.1 && r.text("sigma=0.7.verdict") == "finite mean" && a07 >= 1.7 &&
                  a07 <= 2.4 && a12 >= 0.55 && a12 <= 0.85;
  return {ok, fmt("alpha(0.7) %.3f, alpha(1) %.4f, alpha(1.2) %.3f", a07, a1, a12)};
}

// One divergence run feeds the three parts of the L2 / H2 contrast.
const ExperimentReport& divergence_report() {
  static const ExperimentReport r = run_divergence(default_config(ExperimentKind::divergence));
  return r;
}

Outcome l2_witness() {
  const auto& r = divergence_report();
  return {r.number("finite_fraction") == 1.0,
          fmt("finite fraction %.6f (%lld paths excluded as escaped)", r.number("finite_fraction"),
              static_cast<long long>(r.excluded("escaped_paths")))};
}

Outcome running_mean_divergence() {
  const auto& r = divergence_report();
  const double frac = r.number("nonstabilizing_fraction");
  return {frac >= 0.8, fmt("ratio > 1.05 in %.0f%% of replicates (need >= 80%%)", 100 * frac)};
}

Outcome cos_control() {
  const auto& r = divergence_report();
  const double lo = r.number("control_ratio_min"), hi = r.number("control_ratio_max");
  return {lo >= 0.99 && hi <= 1.01, fmt("cos ratios in [%.4f, %.4f]", lo, hi)};
}

const ExperimentReport& ito_report() {
  static const ExperimentReport r = run_ito_check(default_config(ExperimentKind::ito_check));
  return r;
}

Outcome ito_convergence() {
  const auto& r = ito_report();
  const double slope = r.number("slope");
  const bool ok = r.flag("monotone_decrease") && slope >= -0.7 && slope <= -0.3;
  return {ok, fmt("slope %.3f, monotone %s", slope, r.flag("monotone_decrease") ? "yes" : "no")};
}

Outcome ito_constant_path() {
  const double worst = ito_report().number("constant_path_max_abs_residual");
  return {worst <= 1e-9, fmt("|R| on w = 0 is %.10f (need <= 1e-9)", worst)};
}

Outcome martingale() {
  const auto r = run_martingale_check(default_config(ExperimentKind::martingale_check));
  return {r.flag("within_3se"), fmt("mean %.5f, se %.5f", r.number("mean"), r.number("se"))};
}

Outcome gsigma_monotone() {
  const auto r = run_gsigma_monotonicity(default_config(ExperimentKind::gsigma));
  const bool ok = r.flag("strictly_decreasing") && r.number("G_far") < 0.01 &&
                  r.number("sigma1_max_abs_error") <= 1e-10;
  return {ok, fmt("G_100(1) %.6f, sigma=1 max err %.1e", r.number("G_far"), r.number("sigma1_max_abs_error"))};
}

Outcome tail_expectation_identity() {
  const NormalStream stream(SeedSpec{42, 0}.derive(10));
  std::vector<double> v(100000);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = -std::log(stream.uniform(i));
  const EmpiricalSample s(v);
  const double rel = std::fabs(tail_expectation(s) - s.mean()) / s.mean();
  return {rel <= 1e-12, fmt("relative difference %.2e", rel)};
}

ExperimentConfig determinism_config(ExperimentKind kind) {
  ExperimentConfig c = default_config(kind);
  switch (kind) {
    case ExperimentKind::survival_check: c.n_samples = 100000; break;
    case ExperimentKind::tail_index: c.n_samples = 100000; break;
    case ExperimentKind::divergence: c.n_paths = 2000; break;
    case ExperimentKind::ito_check: c.n_paths = 20; c.steps = 2048; break;
    default: break;
  }
  return c;
}

Outcome determinism() {
  std::string detail;
  bool ok = true;
  for (ExperimentKind kind : kAllExperiments) {
    auto c = determinism_config(kind);
    c.policy = {kernels::Execution::parallel, 1};
    const std::string a = to_json(run_experiment(kind, c), DurationMask::mask);
    const std::string b = to_json(run_experiment(kind, c), DurationMask::mask);
    c.policy = {kernels::Execution::parallel, 4};
    const std::string d = to_json(run_experiment(kind, c), DurationMask::mask);
    const bool same = a == b && a == d;
    ok = ok && same;
    if (!same) detail += std::string(experiment_name(kind)) + " differs; ";
  }
  return {ok, ok ? "7 experiments identical across 2 runs and workers {1, 4}" : detail};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"1", "special-function precision", 1.0, special_functions},
      {"2", "transform identities", 5.0, transform_identities},
      {"3", "distributional identity (KS)", 5.0, distributional_identity},
      {"4", "exact survival law", 30.0, survival_law},
      {"5", "infinite-variance signature (Hill)", 120.0, tail_signature},
      {"6a", "pathwise L2 witness", 300.0, l2_witness},
      {"6b", "running mean fails to stabilize", 0.0, running_mean_divergence},
      {"6c", "cos control stabilizes", 0.0, cos_control},
      {"7a", "Ito residual convergence", 120.0, ito_convergence},
      {"7b", "constant-path residual", 0.0, ito_constant_path},
      {"8", "martingale mean for cos(W)", 60.0, martingale},
      {"9", "G_sigma monotonicity", 1.0, gsigma_monotone},
      {"10", "tail-expectation identity", 1.0, tail_expectation_identity},
      {"11", "determinism", 0.0, determinism},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.budget_seconds == 0.0 || seconds < c.budget_seconds;
    const bool pass = o.pass && in_time;
    if (!pass) ++failed;
    std::string timing = fmt("%.2fs", seconds);
    if (c.budget_seconds > 0.0) timing += fmt(" / %.0fs", c.budget_seconds);
    std::printf("%s  %-3s %-36s %s [%s]\n", pass ? "PASS" : "FAIL", c.id.c_str(), c.title.c_str(),
                o.detail.c_str(), timing.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
