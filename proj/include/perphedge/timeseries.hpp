#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "perphedge/errors.hpp"

namespace perphedge::ts {

using Timestamp = std::int64_t; // UTC epoch milliseconds

enum class ReturnConvention {
    nominal, // (X_{t+n} - X_t) / X_t, spot and direct contracts
    inverse, // 1 - X_t / X_{t+n}, nominal-value return of an inverse contract
};

enum class Tail { right, left };

// Uniformly spaced, strictly positive price observations for one instrument.
// Immutable after construction; gaps are repaired or rejected at ingestion and
// never stored.
class PriceSeries {
public:
    PriceSeries(std::string instrument_id, Timestamp start_ts, std::int64_t step_ms,
                std::vector<double> prices)
        : instrument_id_(std::move(instrument_id)), start_ts_(start_ts), step_ms_(step_ms),
          prices_(std::move(prices)) {
        detail::require(step_ms_ > 0, Errc::bad_config, "step_ms must be positive");
        detail::require(prices_.size() >= 2, Errc::series_too_short,
                        "a price series needs at least 2 observations");
        for (double p : prices_)
            detail::require(p > 0.0, Errc::non_positive_price, "price must be > 0");
    }

    const std::string& instrument_id() const { return instrument_id_; }
    Timestamp start_ts() const { return start_ts_; }
    std::int64_t step_ms() const { return step_ms_; }
    Timestamp end_ts() const { return start_ts_ + step_ms_ * static_cast<Timestamp>(size() - 1); }
    Timestamp ts_at(std::size_t i) const { return start_ts_ + step_ms_ * static_cast<Timestamp>(i); }

    std::size_t size() const { return prices_.size(); }
    double operator[](std::size_t i) const { return prices_[i]; }
    const std::vector<double>& prices() const { return prices_; }

    PriceSeries slice(std::size_t first, std::size_t count) const {
        detail::require(first + count <= size(), Errc::series_too_short, "slice out of range");
        std::vector<double> p(prices_.begin() + static_cast<std::ptrdiff_t>(first),
                              prices_.begin() + static_cast<std::ptrdiff_t>(first + count));
        return PriceSeries(instrument_id_, ts_at(first), step_ms_, std::move(p));
    }

private:
    std::string instrument_id_;
    Timestamp start_ts_;
    std::int64_t step_ms_;
    std::vector<double> prices_;
};

// n-period simple returns under a fixed convention, one value per admissible
// anchor index of the source series.
struct ReturnSeries {
    Timestamp base_ts = 0;
    std::int64_t step_ms = 0;
    int horizon_steps = 0;
    ReturnConvention convention = ReturnConvention::nominal;
    std::vector<double> values;
};

// Extreme return of one non-overlapping block: max over n in {1..N} of the
// n-period return anchored at the block start (sign-flipped for the left tail).
struct ExtremeReturnSample {
    Timestamp block_start_ts = 0;
    int block_len_steps = 0;
    double value = 0.0;
};

enum class CsvSchema { close_only, ohlc };

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        const std::size_t comma = line.find(',', pos);
        if (comma == std::string_view::npos) {
            out.push_back(trim(line.substr(pos)));
            break;
        }
        out.push_back(trim(line.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    return out;
}

inline double parse_double(std::string_view s, std::size_t line_no) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    perphedge::detail::require(ec == std::errc() && ptr == s.data() + s.size(), Errc::malformed_row,
                               "bad number '" + std::string(s) + "' on line " + std::to_string(line_no));
    return v;
}

// Days since 1970-01-01 for a proleptic Gregorian date (Howard Hinnant's
// days_from_civil).
inline std::int64_t days_from_civil(int y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

// Accepts integer epoch milliseconds or ISO-8601 UTC
// (YYYY-MM-DD[{T| }HH:MM[:SS[.fff]]][Z]).
inline Timestamp parse_timestamp(std::string_view s, std::size_t line_no) {
    perphedge::detail::require(!s.empty(), Errc::malformed_row,
                               "empty timestamp on line " + std::to_string(line_no));
    const bool iso = s.size() > 4 && (s[4] == '-');
    if (!iso) {
        Timestamp v = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        perphedge::detail::require(ec == std::errc() && ptr == s.data() + s.size(), Errc::malformed_row,
                                   "bad timestamp '" + std::string(s) + "' on line " + std::to_string(line_no));
        return v;
    }
    if (!s.empty() && (s.back() == 'Z' || s.back() == 'z')) s.remove_suffix(1);
    const auto bad = [&]() -> Timestamp {
        perphedge::detail::fail(Errc::malformed_row,
                                "bad ISO-8601 timestamp '" + std::string(s) + "' on line " +
                                    std::to_string(line_no));
    };
    const auto num = [&](std::size_t pos, std::size_t len) -> int {
        if (pos + len > s.size()) return static_cast<int>(bad());
        int v = 0;
        const auto [ptr, ec] = std::from_chars(s.data() + pos, s.data() + pos + len, v);
        if (ec != std::errc() || ptr != s.data() + pos + len) bad();
        return v;
    };
    const int year = num(0, 4);
    if (s.size() < 10 || s[4] != '-' || s[7] != '-') bad();
    const int month = num(5, 2);
    const int day = num(8, 2);
    if (month < 1 || month > 12 || day < 1 || day > 31) bad();
    int hh = 0, mm = 0, ss = 0, ms = 0;
    if (s.size() > 10) {
        if ((s[10] != 'T' && s[10] != ' ') || s.size() < 16 || s[13] != ':') bad();
        hh = num(11, 2);
        mm = num(14, 2);
        if (s.size() > 16) {
            if (s[16] != ':' || s.size() < 19) bad();
            ss = num(17, 2);
            if (s.size() > 19) {
                if (s[19] != '.' || s.size() != 23) bad();
                ms = num(20, 3);
            }
        }
        if (hh > 23 || mm > 59 || ss > 60) bad();
    }
    const std::int64_t days = days_from_civil(year, static_cast<unsigned>(month), static_cast<unsigned>(day));
    return ((days * 24 + hh) * 60 + mm) * 60000 + ss * 1000 + ms;
}

struct CsvRow {
    Timestamp ts;
    double price;
};

inline std::vector<CsvRow> read_price_rows(const std::string& path, CsvSchema schema) {
    std::ifstream in(path);
    perphedge::detail::require(in.good(), Errc::io_error, "cannot open '" + path + "'");
    std::vector<CsvRow> rows;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    const std::size_t want_cols = schema == CsvSchema::close_only ? 2 : 5;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view sv = trim(line);
        if (sv.empty() || sv.front() == '#') continue;
        const auto cols = split_csv(sv);
        if (!header_seen) {
            header_seen = true;
            // Header row is mandated by the schema; tolerate its absence only
            // when the first field already parses as a timestamp.
            if (!cols.empty() && !cols[0].empty() &&
                !(std::isdigit(static_cast<unsigned char>(cols[0][0])) || cols[0][0] == '-')) {
                perphedge::detail::require(cols.size() == want_cols, Errc::malformed_row,
                                           "expected " + std::to_string(want_cols) +
                                               " header columns on line " + std::to_string(line_no));
                continue;
            }
        }
        perphedge::detail::require(cols.size() == want_cols, Errc::malformed_row,
                                   "expected " + std::to_string(want_cols) + " columns on line " +
                                       std::to_string(line_no));
        const Timestamp ts = parse_timestamp(cols[0], line_no);
        // OHLC rows contribute their close; open/high/low stay in the 4h
        // bucket pipeline (speculation.hpp) where they are actually used.
        const double price = parse_double(cols[want_cols - 1], line_no);
        rows.push_back({ts, price});
    }
    perphedge::detail::require(rows.size() >= 2, Errc::series_too_short,
                               "'" + path + "' holds fewer than 2 data rows");
    return rows;
}

} // namespace detail

// Maximum gap (in multiples of step_ms) that ingestion repairs by forward
// filling. Anything wider aborts: silently filling long outages would fake
// extreme returns downstream.
inline constexpr int kMaxFillGapSteps = 5;

inline PriceSeries ingest_csv(const std::string& path, CsvSchema schema, std::int64_t step_ms,
                              std::string instrument_id = {}) {
    detail::require(step_ms > 0, Errc::bad_config, "step_ms must be positive");
    const auto rows = detail::read_price_rows(path, schema);
    std::vector<double> prices;
    prices.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        detail::require(rows[i].price > 0.0, Errc::non_positive_price,
                        "price " + std::to_string(rows[i].price) + " at ts " +
                            std::to_string(rows[i].ts));
        if (i > 0) {
            const std::int64_t diff = rows[i].ts - rows[i - 1].ts;
            detail::require(diff > 0, Errc::malformed_row,
                            "timestamps not strictly increasing at ts " + std::to_string(rows[i].ts));
            detail::require(diff % step_ms == 0, Errc::malformed_row,
                            "timestamp " + std::to_string(rows[i].ts) + " is off the " +
                                std::to_string(step_ms) + "ms grid");
            const std::int64_t gap = diff / step_ms;
            detail::require(gap <= kMaxFillGapSteps, Errc::gap_too_large,
                            "gap of " + std::to_string(gap) + " steps at ts " +
                                std::to_string(rows[i].ts) + " exceeds " +
                                std::to_string(kMaxFillGapSteps));
            for (std::int64_t k = 1; k < gap; ++k) prices.push_back(rows[i - 1].price);
        }
        prices.push_back(rows[i].price);
    }
    if (instrument_id.empty()) instrument_id = path;
    return PriceSeries(std::move(instrument_id), rows.front().ts, step_ms, std::move(prices));
}

// Restricts both series to the intersection of their covered time ranges.
inline std::pair<PriceSeries, PriceSeries> align(const PriceSeries& a, const PriceSeries& b) {
    detail::require(a.step_ms() == b.step_ms(), Errc::step_mismatch,
                    "step " + std::to_string(a.step_ms()) + "ms vs " + std::to_string(b.step_ms()) + "ms");
    const std::int64_t step = a.step_ms();
    detail::require((b.start_ts() - a.start_ts()) % step == 0, Errc::no_overlap,
                    "series grids are phase-shifted and never coincide");
    const Timestamp lo = std::max(a.start_ts(), b.start_ts());
    const Timestamp hi = std::min(a.end_ts(), b.end_ts());
    detail::require(hi >= lo + step, Errc::no_overlap, "overlap shorter than 2 observations");
    const auto count = static_cast<std::size_t>((hi - lo) / step) + 1;
    const auto ia = static_cast<std::size_t>((lo - a.start_ts()) / step);
    const auto ib = static_cast<std::size_t>((lo - b.start_ts()) / step);
    return {a.slice(ia, count), b.slice(ib, count)};
}

inline double period_return(double x0, double x1, ReturnConvention convention) {
    return convention == ReturnConvention::nominal ? (x1 - x0) / x0 : 1.0 - x0 / x1;
}

inline ReturnSeries n_period_returns(const PriceSeries& series, int n, ReturnConvention convention) {
    detail::require(n >= 1 && static_cast<std::size_t>(n) < series.size(), Errc::horizon_too_long,
                    "horizon " + std::to_string(n) + " on a series of length " +
                        std::to_string(series.size()));
    ReturnSeries out;
    out.base_ts = series.start_ts();
    out.step_ms = series.step_ms();
    out.horizon_steps = n;
    out.convention = convention;
    out.values.resize(series.size() - static_cast<std::size_t>(n));
    for (std::size_t t = 0; t < out.values.size(); ++t)
        out.values[t] = period_return(series[t], series[t + static_cast<std::size_t>(n)], convention);
    return out;
}

// One sample per non-overlapping block anchored every N steps. A block
// anchored at s spans returns R_{s,n}, n = 1..N; the final block is truncated
// to the data if the series length is an exact multiple of N.
inline std::vector<ExtremeReturnSample> block_maxima(const PriceSeries& series, int block_steps,
                                                     ReturnConvention convention, Tail tail) {
    const auto n_steps = static_cast<std::size_t>(block_steps);
    detail::require(block_steps >= 1 && series.size() >= n_steps + 1, Errc::series_too_short,
                    "series of length " + std::to_string(series.size()) +
                        " cannot host a block of " + std::to_string(block_steps) + " steps");
    std::vector<ExtremeReturnSample> out;
    for (std::size_t s = 0; s + n_steps <= series.size(); s += n_steps) {
        const std::size_t max_n = std::min(n_steps, series.size() - 1 - s);
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t n = 1; n <= max_n; ++n) {
            double r = period_return(series[s], series[s + n], convention);
            if (tail == Tail::left) r = -r;
            best = std::max(best, r);
        }
        out.push_back({series.ts_at(s), block_steps, best});
    }
    return out;
}

inline std::vector<double> sample_values(const std::vector<ExtremeReturnSample>& samples) {
    std::vector<double> out;
    out.reserve(samples.size());
    for (const auto& s : samples) out.push_back(s.value);
    return out;
}

} // namespace perphedge::ts
