#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace irrevis {

/// Ordered real-valued observations for one entity.
///
/// Timestamps are epoch seconds (UTC) and optional; when present they are
/// parallel to `values` and strictly increasing. Positivity of the values is
/// not an invariant of the carrier itself -- operations that take logarithms
/// validate it at the point of use.
struct TimeSeries {
  std::vector<double> values;
  std::vector<std::int64_t> timestamps;  ///< empty when absent
  std::string entity_id;

  bool has_timestamps() const noexcept { return !timestamps.empty(); }
  std::size_t size() const noexcept { return values.size(); }
};

/// Log-returns derived from a price series; length = source length - 1.
struct ReturnSeries {
  std::vector<double> values;
  std::string entity_id;

  std::size_t size() const noexcept { return values.size(); }
};

/// Contiguous view into a parent series covering indices [start, end).
/// The parent must outlive the window.
struct Window {
  std::span<const double> values;
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t size() const noexcept { return values.size(); }
};

/// Column names and delimiter for long-format price CSV.
struct CsvOptions {
  char delimiter = ',';
  std::string entity_column = "entity";
  std::string timestamp_column = "timestamp";
  std::string price_column = "price";
};

/// Result of CSV ingestion: one series per entity (keyed by entity id) plus
/// the number of rows dropped along the way. Rows are dropped -- never
/// interpolated -- when the price is missing, non-positive or unreadable,
/// when the timestamp is unreadable, or when the timestamp does not extend
/// the entity's strictly increasing sequence.
struct ParseResult {
  std::map<std::string, TimeSeries> series;
  std::size_t dropped_rows = 0;
};

/// Parses long-format `entity,timestamp,price` CSV.
///
/// Timestamps may be integer epoch seconds or ISO-8601
/// (`YYYY-MM-DD[THH:MM:SS[Z]]`, a space also accepted as date/time
/// separator). Input row order is preserved per entity.
///
/// Throws parse_error when the header lacks a configured column and
/// insufficient_data_error when an entity appears in the file but ends up
/// with zero valid rows.
ParseResult parse_price_csv(std::istream& in, const CsvOptions& options = {});

/// Writes one series in the ingestion format with round-trip precision.
void write_price_csv(std::ostream& out, const TimeSeries& series,
                     const CsvOptions& options = {});

/// Natural log of the ratio of consecutive values: out[t] = ln(s[t+1]/s[t]).
/// Requires length >= 2 (size_error) and strictly positive values
/// (domain_error).
ReturnSeries log_returns(const TimeSeries& s);

/// Sample standard deviation (N-1 denominator) of the log-returns of the
/// observations falling in the given UTC calendar year. No annualization
/// factor is applied. Requires timestamps (config_error) and at least three
/// observations in the year (insufficient_data_error).
double annualized_volatility(const TimeSeries& s, int year);

/// Splits the series into floor(N/n) consecutive non-overlapping windows of
/// exactly n points; a trailing remainder shorter than n is discarded.
/// Requires n >= 2 (size_error). Windows view the input values.
std::vector<Window> partition_windows(std::span<const double> values,
                                      std::size_t n);
std::vector<Window> partition_windows(const TimeSeries& s, std::size_t n);

/// Groups observations by UTC calendar year, preserving order and
/// timestamps. Requires timestamps (config_error).
std::map<int, TimeSeries> partition_years(const TimeSeries& s);

/// UTC calendar year of an epoch-seconds instant.
int year_of(std::int64_t epoch_seconds);

/// Returns the series with values in reverse order. Timestamps are dropped:
/// a reversed series has no meaningful clock.
TimeSeries reverse(const TimeSeries& s);

}  // namespace irrevis
