#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace itocx {

using Value = std::variant<bool, std::int64_t, double, std::string, std::vector<double>>;

struct NamedValue {
  std::string name;
  Value value;
};

struct NamedSeries {
  std::string name;
  std::vector<double> values;
};

/// Audit record of one experiment. Entries keep insertion order so that the
/// serialized bytes depend only on the configuration.
struct ExperimentReport {
  std::string name;
  std::string version = ITOCX_VERSION;
  bool pass = false;
  std::vector<NamedValue> config;
  std::vector<NamedValue> scalars;
  std::vector<NamedSeries> series;
  std::vector<std::pair<std::string, std::int64_t>> exclusions;
  double duration_seconds = 0.0;

  void set_config(std::string key, Value v);
  void set_scalar(std::string key, Value v);
  void set_series(std::string key, std::vector<double> v);
  void add_exclusions(std::string key, std::int64_t count);

  /// std::out_of_range when absent or of another type.
  double number(std::string_view key) const;
  bool flag(std::string_view key) const;
  const std::string& text(std::string_view key) const;
  const std::vector<double>& series_values(std::string_view key) const;
  std::int64_t excluded(std::string_view key) const;
};

/// The only field that varies between identical runs. Masked serializers
/// write it as 0 so reports can be compared byte for byte.
inline constexpr std::string_view kDurationField = "duration_seconds";

enum class DurationMask { keep, mask };

/// Flat object: name, version, pass, config, scalars, series, exclusions,
/// duration_seconds. Non-finite numbers are written as null.
std::string to_json(const ExperimentReport& report, DurationMask mask = DurationMask::keep);
/// Same, for several reports, as a JSON array.
std::string to_json(const std::vector<ExperimentReport>& reports,
                    DurationMask mask = DurationMask::keep);

/// Long-form CSV with header "section,name,index,value". Series rows carry
/// their element index; vector-valued config entries are space separated.
std::string to_csv(const ExperimentReport& report, DurationMask mask = DurationMask::keep);

/// Shortest round-trip decimal text.
std::string format_number(double x);

}  // namespace itocx
