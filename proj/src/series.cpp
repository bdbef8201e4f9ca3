#include "irrevis/series.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <set>
#include <string_view>
#include <utility>

#include "irrevis/errors.hpp"

namespace irrevis {

namespace {

// Splits one CSV record. Quoted fields may contain the delimiter and
// doubled quotes ("" -> ").
std::vector<std::string> split_record(std::string_view line, char delimiter) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        current.push_back(c);
      }
    } else if (c == '"' && current.empty()) {
      quoted = true;
    } else if (c == delimiter) {
      fields.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  fields.push_back(std::move(current));
  return fields;
}

bool needs_quoting(std::string_view field, char delimiter) {
  return field.find(delimiter) != std::string_view::npos ||
         field.find('"') != std::string_view::npos ||
         field.find('\n') != std::string_view::npos;
}

void write_field(std::ostream& out, std::string_view field, char delimiter) {
  if (!needs_quoting(field, delimiter)) {
    out << field;
    return;
  }
  out << '"';
  for (const char c : field) {
    if (c == '"') out << '"';
    out << c;
  }
  out << '"';
}

std::optional<long> parse_int_component(std::string_view text) {
  long value = 0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

// Accepts integer epoch seconds or ISO-8601 `YYYY-MM-DD[THH:MM:SS[Z]]`
// (space allowed instead of 'T').
std::optional<std::int64_t> parse_timestamp(std::string_view text) {
  if (text.empty()) return std::nullopt;

  std::int64_t epoch = 0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), epoch);
  if (ec == std::errc{} && ptr == text.data() + text.size()) return epoch;

  if (text.size() < 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  const auto y = parse_int_component(text.substr(0, 4));
  const auto mo = parse_int_component(text.substr(5, 2));
  const auto d = parse_int_component(text.substr(8, 2));
  if (!y || !mo || !d) return std::nullopt;

  long hh = 0, mi = 0, ss = 0;
  if (text.size() > 10) {
    if (text[10] != 'T' && text[10] != ' ') return std::nullopt;
    std::string_view clock = text.substr(11);
    if (!clock.empty() && clock.back() == 'Z') clock.remove_suffix(1);
    if (clock.size() != 8 || clock[2] != ':' || clock[5] != ':')
      return std::nullopt;
    const auto h = parse_int_component(clock.substr(0, 2));
    const auto m = parse_int_component(clock.substr(3, 2));
    const auto s = parse_int_component(clock.substr(6, 2));
    if (!h || !m || !s) return std::nullopt;
    hh = *h;
    mi = *m;
    ss = *s;
  }
  if (hh > 23 || mi > 59 || ss > 60) return std::nullopt;

  using namespace std::chrono;
  const year_month_day ymd{year{static_cast<int>(*y)},
                           month{static_cast<unsigned>(*mo)},
                           day{static_cast<unsigned>(*d)}};
  if (!ymd.ok()) return std::nullopt;
  const sys_days date{ymd};
  return duration_cast<seconds>(date.time_since_epoch()).count() +
         hh * 3600 + mi * 60 + ss;
}

std::optional<double> parse_price(std::string_view text) {
  if (text.empty()) return std::nullopt;
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

std::string format_double(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

}  // namespace

ParseResult parse_price_csv(std::istream& in, const CsvOptions& options) {
  std::string line;
  if (!std::getline(in, line)) throw parse_error("empty input: no header row");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line.size() >= 3 && line.compare(0, 3, "\xef\xbb\xbf") == 0)
    line.erase(0, 3);

  const auto header = split_record(line, options.delimiter);
  const auto column_of = [&](const std::string& name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end())
      throw parse_error("header is missing column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t entity_col = column_of(options.entity_column);
  const std::size_t timestamp_col = column_of(options.timestamp_column);
  const std::size_t price_col = column_of(options.price_column);
  const std::size_t min_fields =
      std::max({entity_col, timestamp_col, price_col}) + 1;

  ParseResult result;
  std::set<std::string> seen;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    const auto fields = split_record(line, options.delimiter);
    if (fields.size() < min_fields) {
      ++result.dropped_rows;
      continue;
    }
    const std::string& entity = fields[entity_col];
    if (entity.empty()) {
      ++result.dropped_rows;
      continue;
    }
    seen.insert(entity);

    const auto timestamp = parse_timestamp(fields[timestamp_col]);
    const auto price = parse_price(fields[price_col]);
    if (!timestamp || !price || !std::isfinite(*price) || *price <= 0.0) {
      ++result.dropped_rows;
      continue;
    }

    TimeSeries& series = result.series[entity];
    if (series.entity_id.empty()) series.entity_id = entity;
    // Keep the per-entity timestamp sequence strictly increasing.
    if (!series.timestamps.empty() && *timestamp <= series.timestamps.back()) {
      ++result.dropped_rows;
      continue;
    }
    series.values.push_back(*price);
    series.timestamps.push_back(*timestamp);
  }

  for (const auto& entity : seen) {
    if (!result.series.count(entity))
      throw insufficient_data_error("entity '" + entity +
                                    "' has no valid rows");
  }
  return result;
}

void write_price_csv(std::ostream& out, const TimeSeries& series,
                     const CsvOptions& options) {
  const char d = options.delimiter;
  write_field(out, options.entity_column, d);
  out << d;
  write_field(out, options.timestamp_column, d);
  out << d;
  write_field(out, options.price_column, d);
  out << '\n';
  for (std::size_t i = 0; i < series.size(); ++i) {
    write_field(out, series.entity_id, d);
    out << d;
    out << (series.has_timestamps() ? series.timestamps[i]
                                    : static_cast<std::int64_t>(i));
    out << d << format_double(series.values[i]) << '\n';
  }
}

ReturnSeries log_returns(const TimeSeries& s) {
  if (s.size() < 2)
    throw size_error("log_returns requires at least 2 observations");
  ReturnSeries out;
  out.entity_id = s.entity_id;
  out.values.reserve(s.size() - 1);
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    if (!(s.values[i] > 0.0) || !(s.values[i + 1] > 0.0))
      throw domain_error("log_returns requires strictly positive values");
    out.values.push_back(std::log(s.values[i + 1] / s.values[i]));
  }
  return out;
}

double annualized_volatility(const TimeSeries& s, int year) {
  if (!s.has_timestamps())
    throw config_error("annualized_volatility requires timestamps");
  TimeSeries in_year;
  in_year.entity_id = s.entity_id;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (year_of(s.timestamps[i]) == year) {
      in_year.values.push_back(s.values[i]);
      in_year.timestamps.push_back(s.timestamps[i]);
    }
  }
  if (in_year.size() < 3)
    throw insufficient_data_error(
        "annualized_volatility requires at least 3 observations in the year");

  const ReturnSeries returns = log_returns(in_year);
  const std::size_t n = returns.size();
  double mean = 0.0;
  for (const double r : returns.values) mean += r;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (const double r : returns.values) ss += (r - mean) * (r - mean);
  return std::sqrt(ss / static_cast<double>(n - 1));
}

std::vector<Window> partition_windows(std::span<const double> values,
                                      std::size_t n) {
  if (n < 2) throw size_error("window size must be at least 2");
  std::vector<Window> windows;
  windows.reserve(values.size() / n);
  for (std::size_t start = 0; start + n <= values.size(); start += n)
    windows.push_back(Window{values.subspan(start, n), start, start + n});
  return windows;
}

std::vector<Window> partition_windows(const TimeSeries& s, std::size_t n) {
  return partition_windows(std::span<const double>(s.values), n);
}

std::map<int, TimeSeries> partition_years(const TimeSeries& s) {
  if (!s.has_timestamps())
    throw config_error("partition_years requires timestamps");
  std::map<int, TimeSeries> years;
  for (std::size_t i = 0; i < s.size(); ++i) {
    TimeSeries& year_series = years[year_of(s.timestamps[i])];
    if (year_series.entity_id.empty()) year_series.entity_id = s.entity_id;
    year_series.values.push_back(s.values[i]);
    year_series.timestamps.push_back(s.timestamps[i]);
  }
  return years;
}

int year_of(std::int64_t epoch_seconds) {
  using namespace std::chrono;
  const sys_seconds instant{seconds{epoch_seconds}};
  const year_month_day ymd{floor<days>(instant)};
  return static_cast<int>(ymd.year());
}

TimeSeries reverse(const TimeSeries& s) {
  TimeSeries out;
  out.entity_id = s.entity_id;
  out.values.assign(s.values.rbegin(), s.values.rend());
  return out;
}

}  // namespace irrevis
