#pragma once

// Seeded Monte Carlo drivers. Each run_* function is a deterministic
// function of its config: worker count and batch size never change the
// report (apart from the duration field).

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "itocx/kernels.hpp"
#include "itocx/report.hpp"
#include "itocx/rng.hpp"

namespace itocx {

enum class ExperimentKind {
  dist_check,
  survival_check,
  tail_index,
  divergence,
  ito_check,
  martingale_check,
  gsigma,
};

inline constexpr ExperimentKind kAllExperiments[] = {
    ExperimentKind::dist_check,  ExperimentKind::survival_check,   ExperimentKind::tail_index,
    ExperimentKind::divergence,  ExperimentKind::ito_check,        ExperimentKind::martingale_check,
    ExperimentKind::gsigma,
};

std::string_view experiment_name(ExperimentKind kind);
std::optional<ExperimentKind> parse_experiment(std::string_view name);

enum class ReportFormat { json, csv };

struct ExperimentConfig {
  SeedSpec seed{42, 0};
  std::size_t n_samples = 100000;
  std::size_t n_paths = 100000;
  std::size_t steps = 1024;
  double horizon = 1.0;
  std::vector<double> sigmas;
  std::optional<std::size_t> hill_k;
  /// Indices handled per kernel launch; bounds peak memory only.
  std::size_t batch = 10000;
  ReportFormat format = ReportFormat::json;
  /// Not echoed into reports.
  kernels::Policy policy;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Desk-scale defaults; `all` runs every experiment with these.
ExperimentConfig default_config(ExperimentKind kind);

/// Throws ConfigError when the config violates the experiment's
/// preconditions.
void validate(ExperimentKind kind, const ExperimentConfig& config);

/// Paths whose |w| exceeds this are excluded from h-based ensembles.
inline constexpr double kPathEscapeLevel = 8.0;
inline constexpr std::size_t kDivergenceReplicates = 20;
inline constexpr std::size_t kItoCoarsestSteps = 256;

ExperimentReport run_dist_check(const ExperimentConfig& config);
ExperimentReport run_survival_check(const ExperimentConfig& config);
ExperimentReport run_tail_index(const ExperimentConfig& config);
ExperimentReport run_divergence(const ExperimentConfig& config);
ExperimentReport run_ito_check(const ExperimentConfig& config);
ExperimentReport run_martingale_check(const ExperimentConfig& config);
ExperimentReport run_gsigma_monotonicity(const ExperimentConfig& config);

ExperimentReport run_experiment(ExperimentKind kind, const ExperimentConfig& config);

/// Least-squares slope of log(y) against log(x).
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace itocx
