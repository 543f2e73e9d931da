#include "rmtcorr/returns.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "rmtcorr/errors.hpp"

namespace rmtcorr {

ReturnPanel log_returns(const AlignedPanel& panel) {
    if (panel.dates.size() < 2) {
        throw InputError("log_returns: need at least 2 aligned dates, got " +
                         std::to_string(panel.dates.size()));
    }
    const std::size_t rows = panel.dates.size() - 1;
    const std::size_t n = panel.markets.size();

    ReturnPanel out;
    out.dates.assign(panel.dates.begin() + 1, panel.dates.end());
    out.markets = panel.markets;
    out.raw = Grid<double>(rows, n);
    out.standardized = Grid<double>(rows, n);
    out.fill_spanning = Grid<std::uint8_t>(rows, n, 0);
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t r = 0; r < rows; ++r) {
            out.raw(r, c) = std::log(panel.values(r + 1, c) / panel.values(r, c));
            out.fill_spanning(r, c) = panel.fill_mask(r + 1, c);
        }
    }
    return out;
}

void standardize(ReturnPanel& panel, bool exclude_fill_spanning) {
    const std::size_t rows = panel.raw.rows();
    const std::size_t n = panel.raw.cols();
    if (rows < 2) throw InputError("standardize: need at least 2 return rows");
    panel.zero_variance_columns.clear();
    panel.standardized = Grid<double>(rows, n);

    std::vector<double> sample;
    sample.reserve(rows);
    for (std::size_t c = 0; c < n; ++c) {
        sample.clear();
        for (std::size_t r = 0; r < rows; ++r) {
            if (exclude_fill_spanning && panel.fill_spanning(r, c)) continue;
            sample.push_back(panel.raw(r, c));
        }
        if (sample.size() < 2) {
            throw InputError("standardize: column " + panel.markets[c].symbol +
                             " has fewer than 2 usable returns");
        }
        double m = 0.0;
        for (double v : sample) m += v;
        m /= static_cast<double>(sample.size());
        double ss = 0.0;
        for (double v : sample) ss += (v - m) * (v - m);
        const double s = std::sqrt(ss / static_cast<double>(sample.size() - 1));

        if (s <= 1e-12 * std::max(1.0, std::fabs(m))) {
            panel.zero_variance_columns.push_back(c);
            continue;  // column stays zero; downstream drops it
        }
        for (std::size_t r = 0; r < rows; ++r) {
            panel.standardized(r, c) = (panel.raw(r, c) - m) / s;
        }
    }
}

std::vector<double> renormalize(std::span<const double> values,
                                double target_mean,
                                double target_std) {
    if (values.size() < 2) throw InputError("renormalize: need at least 2 values");
    if (!(target_std > 0.0)) throw InputError("renormalize: target std must be positive");
    double m = 0.0;
    for (double v : values) m += v;
    m /= static_cast<double>(values.size());
    double ss = 0.0;
    for (double v : values) ss += (v - m) * (v - m);
    const double s = std::sqrt(ss / static_cast<double>(values.size() - 1));
    if (s == 0.0) throw InputError("renormalize: zero-variance input");
    std::vector<double> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        out[i] = (values[i] - m) / s * target_std + target_mean;
    }
    return out;
}

std::vector<DensityBin> log_density(std::span<const double> values, double bin_width) {
    if (values.empty()) throw InputError("log_density: empty sample");
    if (!(bin_width > 0.0)) throw InputError("log_density: bin width must be positive");
    // Bins anchored at zero: value v lands in [k*w, (k+1)*w).
    std::map<long long, std::size_t> counts;
    for (double v : values) {
        const long long k = static_cast<long long>(std::floor(v / bin_width));
        ++counts[k];
    }
    const double total = static_cast<double>(values.size());
    std::vector<DensityBin> out;
    out.reserve(counts.size());
    for (const auto& [k, count] : counts) {
        const double density = static_cast<double>(count) / (total * bin_width);
        out.push_back({(static_cast<double>(k) + 0.5) * bin_width, std::log(1.0 + density)});
    }
    return out;
}

CrashReport scan_crashes(const ReturnPanel& panel, int k) {
    if (k < 1) throw InputError("scan_crashes: k must be at least 1");
    const std::size_t rows = panel.raw.rows();
    CrashReport report;
    report.per_market.reserve(panel.markets.size());
    for (std::size_t c = 0; c < panel.markets.size(); ++c) {
        std::vector<CrashEvent> events;
        events.reserve(rows);
        for (std::size_t r = 0; r < rows; ++r) {
            events.push_back({panel.markets[c].symbol, panel.dates[r], panel.raw(r, c)});
        }
        std::sort(events.begin(), events.end(), [](const CrashEvent& a, const CrashEvent& b) {
            if (a.log_return != b.log_return) return a.log_return < b.log_return;
            return a.date < b.date;
        });
        const std::size_t keep = std::min<std::size_t>(static_cast<std::size_t>(k), events.size());
        events.resize(keep);
        for (const auto& e : events) ++report.yearly_counts[e.date.year()];
        report.per_market.push_back({panel.markets[c].symbol, std::move(events)});
    }
    return report;
}

}  // namespace rmtcorr
