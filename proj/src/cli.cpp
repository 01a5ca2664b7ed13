#include "itocx/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "itocx/experiments.hpp"

namespace itocx {
namespace {

struct Flags {
  std::optional<double> n;
  std::optional<double> paths;
  std::optional<double> steps;
  std::optional<double> horizon;
  std::optional<double> k;
  std::optional<double> batch;
  std::vector<double> sigma;
  std::optional<std::uint64_t> seed;
  std::string format = "json";
  std::string out;
};

std::size_t count_flag(const char* name, double v) {
  if (!(v > 0.0) || v != std::floor(v) || v > 9007199254740992.0) {
    throw ConfigError(std::string("--") + name + " must be a positive integer");
  }
  return static_cast<std::size_t>(v);
}

ExperimentConfig effective_config(ExperimentKind kind, const Flags& f) {
  ExperimentConfig c = default_config(kind);
  if (f.seed) c.seed = SeedSpec{*f.seed, 0};
  if (f.n) c.n_samples = count_flag("n", *f.n);
  if (f.paths) c.n_paths = count_flag("paths", *f.paths);
  if (f.steps) c.steps = count_flag("steps", *f.steps);
  if (f.k) c.hill_k = count_flag("k", *f.k);
  if (f.batch) c.batch = count_flag("batch", *f.batch);
  if (f.horizon) {
    if (!(*f.horizon > 0.0) || !std::isfinite(*f.horizon)) {
      throw ConfigError("--horizon must be positive");
    }
    c.horizon = *f.horizon;
  }
  if (!f.sigma.empty()) c.sigmas = f.sigma;
  c.format = f.format == "csv" ? ReportFormat::csv : ReportFormat::json;
  validate(kind, c);
  return c;
}

// report.csv + dist-check -> report.dist-check.csv
std::filesystem::path per_experiment_path(const std::filesystem::path& base, std::string_view name) {
  std::filesystem::path p = base;
  const std::string ext = base.extension().string();
  p.replace_extension();
  p += "." + std::string(name) + (ext.empty() ? ".csv" : ext);
  return p;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::ios_base::failure("cannot open output file: " + path.string());
  file << text;
  if (!file) throw std::ios_base::failure("cannot write output file: " + path.string());
}

std::string describe(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::dist_check: return "KS test of h(Z) against Student t2";
    case ExperimentKind::survival_check: return "Survival of h(sigma Z)^2 against its closed form";
    case ExperimentKind::tail_index: return "Hill tail index of h(sigma Z)^2";
    case ExperimentKind::divergence: return "Pathwise finiteness vs running mean of int h(W)^2 ds";
    case ExperimentKind::ito_check: return "Ito residual of f(W) under bridge refinement";
    case ExperimentKind::martingale_check: return "Mean of the Ito sum of cos(W)";
    case ExperimentKind::gsigma: return "P(h(sigma Z)^2 <= y) decreasing in sigma";
  }
  return {};
}

void add_shared_options(CLI::App& sub, Flags& f) {
  sub.add_option("--n", f.n, "Number of direct W(1) samples");
  sub.add_option("--paths", f.paths, "Number of simulated paths");
  sub.add_option("--steps", f.steps, "Grid steps (finest resolution for ito-check)");
  sub.add_option("--horizon", f.horizon, "Path horizon T");
  sub.add_option("--sigma", f.sigma, "Scale factor; repeat for a sweep");
  sub.add_option("--seed", f.seed, "Root seed");
  sub.add_option("--k", f.k, "Upper order statistics for the Hill estimator");
  sub.add_option("--batch", f.batch, "Indices per kernel batch");
  sub.add_option("--format", f.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  sub.add_option("--out", f.out, "Output path (default: standard output)");
}

}  // namespace

int parse_and_dispatch(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical checks of a quantile-transform counterexample in Ito integration"};
  app.require_subcommand(1);
  Flags flags;
  std::vector<std::pair<CLI::App*, std::optional<ExperimentKind>>> subcommands;
  for (ExperimentKind kind : kAllExperiments) {
    auto* sub = app.add_subcommand(std::string(experiment_name(kind)), describe(kind));
    add_shared_options(*sub, flags);
    subcommands.emplace_back(sub, kind);
  }
  auto* all = app.add_subcommand("all", "Run every experiment with desk-scale defaults");
  add_shared_options(*all, flags);
  subcommands.emplace_back(all, std::nullopt);

  std::vector<const char*> raw;
  raw.reserve(argv.size());
  for (const auto& a : argv) raw.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(raw.size()), raw.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "itocx: " << e.what() << '\n';
    return kExitUsage;
  }

  std::vector<ExperimentKind> kinds;
  for (const auto& [sub, kind] : subcommands) {
    if (!sub->parsed()) continue;
    if (kind) {
      kinds.push_back(*kind);
    } else {
      kinds.assign(std::begin(kAllExperiments), std::end(kAllExperiments));
    }
  }

  std::vector<ExperimentConfig> configs;
  try {
    for (ExperimentKind kind : kinds) configs.push_back(effective_config(kind, flags));
  } catch (const ConfigError& e) {
    err << "itocx: " << e.what() << '\n';
    return kExitUsage;
  }

  const bool csv = flags.format == "csv";
  const bool many = kinds.size() > 1;
  std::vector<std::filesystem::path> targets;
  if (!flags.out.empty()) {
    if (csv && many) {
      for (ExperimentKind kind : kinds) targets.push_back(per_experiment_path(flags.out, experiment_name(kind)));
    } else {
      targets.emplace_back(flags.out);
    }
    // Fail on an unwritable destination before spending any compute.
    for (const auto& t : targets) {
      std::ofstream probe(t, std::ios::binary | std::ios::app);
      if (!probe) {
        err << "itocx: cannot write output file: " << t.string() << '\n';
        return kExitUsage;
      }
    }
  }

  std::vector<ExperimentReport> reports;
  bool all_pass = true;
  for (std::size_t i = 0; i < kinds.size(); ++i) {
    reports.push_back(run_experiment(kinds[i], configs[i]));
    all_pass = all_pass && reports.back().pass;
  }

  try {
    if (csv) {
      for (std::size_t i = 0; i < reports.size(); ++i) {
        const std::string text = to_csv(reports[i]);
        if (targets.empty()) {
          out << (i ? "\n" : "") << text;
        } else {
          write_file(targets[i], text);
        }
      }
    } else {
      const std::string text = many ? to_json(reports) : to_json(reports.front());
      if (targets.empty()) {
        out << text;
      } else {
        write_file(targets.front(), text);
      }
    }
  } catch (const std::ios_base::failure& e) {
    err << "itocx: " << e.what() << '\n';
    return kExitUsage;
  }
  return all_pass ? kExitPass : kExitCheckFailed;
}

}  // namespace itocx
