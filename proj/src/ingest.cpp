#include "rmtcorr/ingest.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include "rmtcorr/errors.hpp"
#include "rmtcorr/io.hpp"

namespace rmtcorr {
namespace {

constexpr std::string_view kRegionNames[] = {
    "NorthAmerica", "CentralAmericaCaribbean", "SouthAmerica", "Europe",
    "Eurasia",      "Asia",                    "Oceania",      "Africa",
};

std::string location(const std::string& what, std::size_t line) {
    std::ostringstream os;
    os << what << " (line " << line << ")";
    return os.str();
}

bool parse_bool(const std::string& text, bool& out) {
    if (text == "true" || text == "1") {
        out = true;
        return true;
    }
    if (text == "false" || text == "0") {
        out = false;
        return true;
    }
    return false;
}

}  // namespace

std::optional<Region> parse_region(std::string_view text) {
    for (std::size_t i = 0; i < std::size(kRegionNames); ++i) {
        if (text == kRegionNames[i]) return static_cast<Region>(i);
    }
    return std::nullopt;
}

std::string_view region_name(Region r) { return kRegionNames[static_cast<std::size_t>(r)]; }

std::vector<MarketMeta> parse_metadata(std::istream& in, bool enforce_eastern_region) {
    std::string line;
    if (!std::getline(in, line)) throw InputError("metadata: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "symbol,name,country,region,weekend,eastern") {
        throw InputError("metadata: expected header symbol,name,country,region,weekend,eastern");
    }

    std::vector<MarketMeta> out;
    std::set<std::string> seen;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = io::split_csv_line(line);
        if (fields.size() != 6) {
            throw InputError(location("metadata: expected 6 fields, got " +
                                          std::to_string(fields.size()),
                                      lineno));
        }
        MarketMeta m;
        m.symbol = fields[0];
        m.name = fields[1];
        m.country = fields[2];
        if (m.symbol.empty()) throw InputError(location("metadata: empty symbol", lineno));
        if (!seen.insert(m.symbol).second) {
            throw InputError(location("metadata: duplicate symbol '" + m.symbol + "'", lineno));
        }
        const auto region = parse_region(fields[3]);
        if (!region) throw InputError(location("metadata: unknown region '" + fields[3] + "'", lineno));
        m.region = *region;
        if (fields[4] == "SatSun") {
            m.weekend = WeekendConvention::SatSun;
        } else if (fields[4] == "FriSat") {
            m.weekend = WeekendConvention::FriSat;
        } else {
            throw InputError(location("metadata: unknown weekend convention '" + fields[4] + "'", lineno));
        }
        if (!parse_bool(fields[5], m.eastern)) {
            throw InputError(location("metadata: eastern must be true/false/1/0", lineno));
        }
        if (enforce_eastern_region && m.eastern && m.region != Region::Eurasia &&
            m.region != Region::Asia && m.region != Region::Oceania) {
            throw InputError(location("metadata: eastern market '" + m.symbol +
                                          "' has region " + std::string(region_name(m.region)) +
                                          "; expected Eurasia, Asia or Oceania",
                                      lineno));
        }
        out.push_back(std::move(m));
    }
    if (out.empty()) throw InputError("metadata: no markets declared");
    return out;
}

PricePanel parse_prices(std::istream& in, const std::vector<MarketMeta>& meta) {
    if (meta.empty()) throw InputError("parse_prices: no markets declared");
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < meta.size(); ++i) index.emplace(meta[i].symbol, i);

    std::string line;
    if (!std::getline(in, line)) throw InputError("prices: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "date,symbol,close") {
        throw InputError("prices: expected header date,symbol,close");
    }

    PricePanel panel;
    panel.markets.resize(meta.size());
    for (std::size_t i = 0; i < meta.size(); ++i) panel.markets[i].meta = meta[i];

    // (market, date) -> first line number, for duplicate diagnostics.
    std::map<std::pair<std::size_t, std::int64_t>, std::size_t> first_line;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = io::split_csv_line(line);
        if (fields.size() != 3) {
            throw InputError(location("prices: expected 3 fields, got " +
                                          std::to_string(fields.size()),
                                      lineno));
        }
        const auto date = Date::parse(fields[0]);
        if (!date) throw InputError(location("prices: bad date '" + fields[0] + "'", lineno));
        const auto it = index.find(fields[1]);
        if (it == index.end()) {
            throw InputError(location("prices: symbol '" + fields[1] + "' not in metadata", lineno));
        }
        double close = 0.0;
        try {
            std::size_t pos = 0;
            close = std::stod(fields[2], &pos);
            if (pos != fields[2].size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw InputError(location("prices: non-numeric close '" + fields[2] + "'", lineno));
        }
        if (!(close > 0.0)) {
            throw InputError(location("prices: non-positive close " + fields[2] + " for " +
                                          fields[1] + " on " + date->to_string(),
                                      lineno));
        }
        const auto key = std::make_pair(it->second, date->serial());
        const auto [dup, inserted] = first_line.emplace(key, lineno);
        if (!inserted) {
            throw InputError("prices: duplicate row for " + fields[1] + " on " +
                             date->to_string() + " (lines " + std::to_string(dup->second) +
                             " and " + std::to_string(lineno) + ")");
        }
        panel.markets[it->second].observations.push_back({*date, close});
    }

    for (auto& market : panel.markets) {
        std::sort(market.observations.begin(), market.observations.end(),
                  [](const Observation& a, const Observation& b) { return a.date < b.date; });
    }
    return panel;
}

PricePanel shift_weekend(const PricePanel& panel, std::vector<std::string>* warnings) {
    PricePanel out;
    out.markets.reserve(panel.markets.size());
    for (const auto& market : panel.markets) {
        PriceSeries shifted;
        shifted.meta = market.meta;
        if (market.meta.weekend != WeekendConvention::FriSat) {
            shifted.observations = market.observations;
            out.markets.push_back(std::move(shifted));
            continue;
        }
        // target date -> (close, original date); on collision the later
        // original date wins, so a true Monday close beats a shifted Sunday.
        std::map<Date, std::pair<double, Date>> by_date;
        for (const auto& obs : market.observations) {
            const Date target =
                obs.date.weekday() == Weekday::Sunday ? obs.date.add_days(1) : obs.date;
            auto it = by_date.find(target);
            if (it == by_date.end()) {
                by_date.emplace(target, std::make_pair(obs.close, obs.date));
                continue;
            }
            auto& [close, origin] = it->second;
            if (warnings) {
                warnings->push_back("shift_weekend: " + market.meta.symbol + ": Sunday close of " +
                                    (origin < obs.date ? obs.date : origin).to_string() +
                                    " collides on " + target.to_string() +
                                    "; kept the Monday observation");
            }
            if (obs.date > origin) {
                close = obs.close;
                origin = obs.date;
            }
        }
        shifted.observations.reserve(by_date.size());
        for (const auto& [date, entry] : by_date) {
            shifted.observations.push_back({date, entry.first});
        }
        out.markets.push_back(std::move(shifted));
    }
    return out;
}

AlignedPanel align(const PricePanel& panel, double drop_threshold) {
    if (!(drop_threshold > 0.0 && drop_threshold < 1.0)) {
        throw InputError("align: drop threshold must lie in (0, 1)");
    }
    if (panel.markets.empty()) throw InputError("align: no markets");
    for (const auto& market : panel.markets) {
        if (market.observations.empty()) {
            throw InputError("align: market '" + market.meta.symbol + "' has no observations");
        }
    }

    std::set<Date> calendar;
    for (const auto& market : panel.markets) {
        for (const auto& obs : market.observations) calendar.insert(obs.date);
    }

    const std::size_t n = panel.markets.size();
    AlignedPanel out;
    for (const Date& date : calendar) {
        std::size_t missing = 0;
        for (const auto& market : panel.markets) {
            const auto& obs = market.observations;
            const auto it = std::lower_bound(
                obs.begin(), obs.end(), date,
                [](const Observation& o, const Date& d) { return o.date < d; });
            if (it == obs.end() || it->date != date) ++missing;
        }
        const double missing_fraction = static_cast<double>(missing) / static_cast<double>(n);
        if (missing_fraction > drop_threshold) {
            out.dropped_dates.push_back(date);
        } else {
            out.dates.push_back(date);
        }
    }
    if (out.dates.empty()) {
        throw InputError("align: every candidate date exceeds the missing-data threshold");
    }

    out.markets.reserve(n);
    for (const auto& market : panel.markets) out.markets.push_back(market.meta);
    out.values = Grid<double>(out.dates.size(), n);
    out.fill_mask = Grid<std::uint8_t>(out.dates.size(), n, 0);

    for (std::size_t c = 0; c < n; ++c) {
        const auto& obs = panel.markets[c].observations;
        std::size_t next = 0;  // first observation with date > current row
        for (std::size_t r = 0; r < out.dates.size(); ++r) {
            const Date date = out.dates[r];
            while (next < obs.size() && obs[next].date <= date) ++next;
            if (next == 0) {
                // Before the first observation: back-fill and flag.
                out.values(r, c) = obs.front().close;
                out.fill_mask(r, c) = 1;
            } else {
                const Observation& last = obs[next - 1];
                out.values(r, c) = last.close;
                out.fill_mask(r, c) = last.date != date;
            }
        }
    }
    return out;
}

AlignedPanel phase_east(const AlignedPanel& panel) {
    if (panel.phased) throw InputError("phase_east: panel is already phased");
    if (panel.dates.size() < 2) {
        throw InputError("phase_east: need at least 2 rows, got " +
                         std::to_string(panel.dates.size()));
    }
    const std::size_t rows = panel.dates.size() - 1;
    const std::size_t n = panel.markets.size();

    AlignedPanel out;
    out.dates.assign(panel.dates.begin(), panel.dates.end() - 1);
    out.markets = panel.markets;
    out.dropped_dates = panel.dropped_dates;
    out.phased = true;
    out.values = Grid<double>(rows, n);
    out.fill_mask = Grid<std::uint8_t>(rows, n, 0);
    for (std::size_t c = 0; c < n; ++c) {
        const std::size_t shift = panel.markets[c].eastern ? 1 : 0;
        for (std::size_t r = 0; r < rows; ++r) {
            out.values(r, c) = panel.values(r + shift, c);
            out.fill_mask(r, c) = panel.fill_mask(r + shift, c);
        }
    }
    return out;
}

PricePanel to_price_panel(const AlignedPanel& panel) {
    PricePanel out;
    out.markets.resize(panel.markets.size());
    for (std::size_t c = 0; c < panel.markets.size(); ++c) {
        out.markets[c].meta = panel.markets[c];
        out.markets[c].observations.reserve(panel.dates.size());
        for (std::size_t r = 0; r < panel.dates.size(); ++r) {
            out.markets[c].observations.push_back({panel.dates[r], panel.values(r, c)});
        }
    }
    return out;
}

}  // namespace rmtcorr
