#include "itocx/report.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace itocx {
namespace {

using json = nlohmann::ordered_json;

template <class Entry>
auto find_entry(std::vector<Entry>& entries, const std::string& key) {
  for (auto it = entries.begin(); it != entries.end(); ++it) {
    if (it->name == key) return it;
  }
  return entries.end();
}

template <class Entry>
const Entry& lookup(const std::vector<Entry>& entries, std::string_view key) {
  for (const auto& e : entries) {
    if (e.name == key) return e;
  }
  throw std::out_of_range("report entry not found: " + std::string(key));
}

json number_json(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json value_json(const Value& v) {
  return std::visit(
      [](const auto& x) -> json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, double>) {
          return number_json(x);
        } else if constexpr (std::is_same_v<T, std::vector<double>>) {
          json arr = json::array();
          for (double d : x) arr.push_back(number_json(d));
          return arr;
        } else {
          return json(x);
        }
      },
      v);
}

json report_json(const ExperimentReport& r, DurationMask mask) {
  json j;
  j["name"] = r.name;
  j["version"] = r.version;
  j["pass"] = r.pass;
  json config = json::object();
  for (const auto& c : r.config) config[c.name] = value_json(c.value);
  j["config"] = std::move(config);
  json scalars = json::object();
  for (const auto& s : r.scalars) scalars[s.name] = value_json(s.value);
  j["scalars"] = std::move(scalars);
  json series = json::object();
  for (const auto& s : r.series) series[s.name] = value_json(s.values);
  j["series"] = std::move(series);
  json exclusions = json::object();
  for (const auto& [k, n] : r.exclusions) exclusions[k] = n;
  j["exclusions"] = std::move(exclusions);
  j[std::string(kDurationField)] = mask == DurationMask::mask ? 0.0 : r.duration_seconds;
  return j;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string value_text(const Value& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, bool>) {
          return x ? "true" : "false";
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return std::to_string(x);
        } else if constexpr (std::is_same_v<T, double>) {
          return format_number(x);
        } else if constexpr (std::is_same_v<T, std::string>) {
          return x;
        } else {
          std::string out;
          for (std::size_t i = 0; i < x.size(); ++i) {
            if (i) out += ' ';
            out += format_number(x[i]);
          }
          return out;
        }
      },
      v);
}

}  // namespace

void ExperimentReport::set_config(std::string key, Value v) {
  if (auto it = find_entry(config, key); it != config.end()) {
    it->value = std::move(v);
  } else {
    config.push_back({std::move(key), std::move(v)});
  }
}

void ExperimentReport::set_scalar(std::string key, Value v) {
  if (auto it = find_entry(scalars, key); it != scalars.end()) {
    it->value = std::move(v);
  } else {
    scalars.push_back({std::move(key), std::move(v)});
  }
}

void ExperimentReport::set_series(std::string key, std::vector<double> v) {
  if (auto it = find_entry(series, key); it != series.end()) {
    it->values = std::move(v);
  } else {
    series.push_back({std::move(key), std::move(v)});
  }
}

void ExperimentReport::add_exclusions(std::string key, std::int64_t count) {
  for (auto& [k, n] : exclusions) {
    if (k == key) {
      n += count;
      return;
    }
  }
  exclusions.emplace_back(std::move(key), count);
}

double ExperimentReport::number(std::string_view key) const {
  const Value& v = lookup(scalars, key).value;
  if (const auto* d = std::get_if<double>(&v)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
  throw std::out_of_range("report scalar is not numeric: " + std::string(key));
}

bool ExperimentReport::flag(std::string_view key) const {
  const Value& v = lookup(scalars, key).value;
  if (const auto* b = std::get_if<bool>(&v)) return *b;
  throw std::out_of_range("report scalar is not a flag: " + std::string(key));
}

const std::string& ExperimentReport::text(std::string_view key) const {
  const Value& v = lookup(scalars, key).value;
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  throw std::out_of_range("report scalar is not text: " + std::string(key));
}

const std::vector<double>& ExperimentReport::series_values(std::string_view key) const {
  return lookup(series, key).values;
}

std::int64_t ExperimentReport::excluded(std::string_view key) const {
  for (const auto& [k, n] : exclusions) {
    if (k == key) return n;
  }
  throw std::out_of_range("report exclusion not found: " + std::string(key));
}

std::string to_json(const ExperimentReport& report, DurationMask mask) {
  return report_json(report, mask).dump(2) + "\n";
}

std::string to_json(const std::vector<ExperimentReport>& reports, DurationMask mask) {
  json arr = json::array();
  for (const auto& r : reports) arr.push_back(report_json(r, mask));
  return arr.dump(2) + "\n";
}

std::string to_csv(const ExperimentReport& r, DurationMask mask) {
  std::ostringstream out;
  out << "section,name,index,value\n";
  out << "meta,name,," << csv_field(r.name) << '\n';
  out << "meta,version,," << csv_field(r.version) << '\n';
  out << "meta,pass,," << (r.pass ? "true" : "false") << '\n';
  for (const auto& c : r.config) {
    out << "config," << csv_field(c.name) << ",," << csv_field(value_text(c.value)) << '\n';
  }
  for (const auto& s : r.scalars) {
    out << "scalar," << csv_field(s.name) << ",," << csv_field(value_text(s.value)) << '\n';
  }
  for (const auto& s : r.series) {
    for (std::size_t i = 0; i < s.values.size(); ++i) {
      out << "series," << csv_field(s.name) << ',' << i << ',' << format_number(s.values[i])
          << '\n';
    }
  }
  for (const auto& [k, n] : r.exclusions) out << "exclusion," << csv_field(k) << ",," << n << '\n';
  out << "meta," << kDurationField << ",,"
      << format_number(mask == DurationMask::mask ? 0.0 : r.duration_seconds) << '\n';
  return out.str();
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace itocx
