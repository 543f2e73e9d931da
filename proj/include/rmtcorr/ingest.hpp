#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rmtcorr/calendar.hpp"
#include "rmtcorr/grid.hpp"

namespace rmtcorr {

enum class Region {
    NorthAmerica,
    CentralAmericaCaribbean,
    SouthAmerica,
    Europe,
    Eurasia,
    Asia,
    Oceania,
    Africa,
};

// Trading-week convention of the venue. FriSat venues trade Sunday.
enum class WeekendConvention { SatSun, FriSat };

[[nodiscard]] std::optional<Region> parse_region(std::string_view text);
[[nodiscard]] std::string_view region_name(Region r);

struct MarketMeta {
    std::string symbol;
    std::string name;
    std::string country;
    Region region = Region::NorthAmerica;
    WeekendConvention weekend = WeekendConvention::SatSun;
    // Markets whose session closes before the American afternoon; candidates
    // for the one-day phase shift.
    bool eastern = false;
};

struct Observation {
    Date date;
    double close = 0.0;
};

// One market's close series, strictly increasing in date.
struct PriceSeries {
    MarketMeta meta;
    std::vector<Observation> observations;
};

struct PricePanel {
    std::vector<PriceSeries> markets;
};

// Dates-by-markets close panel on a common calendar. fill_mask marks cells
// that carry a forward- or back-filled value instead of an observation.
struct AlignedPanel {
    std::vector<Date> dates;
    std::vector<MarketMeta> markets;
    Grid<double> values;
    Grid<std::uint8_t> fill_mask;
    std::vector<Date> dropped_dates;
    bool phased = false;
};

// Metadata CSV: header symbol,name,country,region,weekend,eastern.
// When enforce_eastern_region is set, eastern=true outside
// {Eurasia, Asia, Oceania} is rejected.
[[nodiscard]] std::vector<MarketMeta> parse_metadata(std::istream& in,
                                                     bool enforce_eastern_region = true);

// Prices CSV: header date,symbol,close. Every symbol must be declared in
// meta; duplicate (symbol, date) rows and non-positive closes are rejected
// with the offending line numbers. Rows may arrive in any order.
[[nodiscard]] PricePanel parse_prices(std::istream& in, const std::vector<MarketMeta>& meta);

// Relabels Sunday observations of FriSat markets to the following Monday so
// that venue weekends coincide before calendar union. If the Monday already
// holds an observation, the Monday value wins and a warning is recorded.
[[nodiscard]] PricePanel shift_weekend(const PricePanel& panel,
                                       std::vector<std::string>* warnings = nullptr);

// Builds the union calendar, drops dates whose missing fraction exceeds
// drop_threshold (strictly), forward-fills retained gaps from the last
// observed close, and back-fills cells before a market's first observation.
[[nodiscard]] AlignedPanel align(const PricePanel& panel, double drop_threshold = 0.30);

// Advances eastern columns by one row so that row t pairs western day-t
// closes with eastern day-(t+1) closes; the final row is dropped. Refuses
// to run twice.
[[nodiscard]] AlignedPanel phase_east(const AlignedPanel& panel);

// Reinterprets an aligned grid as observation series (used to re-align).
[[nodiscard]] PricePanel to_price_panel(const AlignedPanel& panel);

}  // namespace rmtcorr
