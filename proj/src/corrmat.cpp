#include "rmtcorr/corrmat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "rmtcorr/errors.hpp"
#include "rmtcorr/stats.hpp"

namespace rmtcorr {
namespace {

RowRange resolve_window(const Grid<double>& panel, std::optional<RowRange> window) {
    RowRange w = window.value_or(RowRange{0, panel.rows()});
    if (w.end > panel.rows() || w.begin >= w.end) {
        std::ostringstream os;
        os << "correlation: window [" << w.begin << ", " << w.end << ") does not fit a panel of "
           << panel.rows() << " rows";
        throw InputError(os.str());
    }
    if (w.length() < 3) {
        throw InputError("correlation: window of " + std::to_string(w.length()) +
                         " rows is too short; need at least 3");
    }
    return w;
}

// Correlation of pre-extracted window columns; zero-variance columns are
// dropped so the remaining matrix stays well defined.
CorrelationMatrix correlate_columns(std::vector<std::vector<double>> cols,
                                    const std::vector<std::string>& symbols,
                                    CorrelationMethod method,
                                    RowRange window,
                                    bool windowed) {
    const std::size_t total = cols.size();
    const std::size_t rows = cols.empty() ? 0 : cols[0].size();

    CorrelationMatrix out;
    out.method = method;
    if (windowed) out.window = window;

    std::vector<std::vector<double>> centered;
    std::vector<double> norms;
    for (std::size_t c = 0; c < total; ++c) {
        double m = 0.0;
        for (double v : cols[c]) m += v;
        m /= static_cast<double>(rows);
        double ss = 0.0;
        for (double& v : cols[c]) {
            v -= m;
            ss += v * v;
        }
        if (ss == 0.0) {
            out.excluded_columns.push_back(c);
            continue;
        }
        out.kept_columns.push_back(c);
        out.symbols.push_back(symbols[c]);
        centered.push_back(std::move(cols[c]));
        norms.push_back(std::sqrt(ss));
    }
    if (centered.size() < 2) {
        throw InputError("correlation: fewer than 2 columns have variance inside the window");
    }

    const std::size_t n = centered.size();
    out.n = n;
    out.entries.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) out.entries[i * n + i] = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double dot = 0.0;
            for (std::size_t r = 0; r < rows; ++r) dot += centered[i][r] * centered[j][r];
            const double c = dot / (norms[i] * norms[j]);
            out.entries[i * n + j] = c;
            out.entries[j * n + i] = c;
        }
    }
    return out;
}

std::vector<std::vector<double>> window_columns(const Grid<double>& panel, RowRange w) {
    std::vector<std::vector<double>> cols(panel.cols());
    for (std::size_t c = 0; c < panel.cols(); ++c) {
        cols[c].resize(w.length());
        for (std::size_t r = 0; r < w.length(); ++r) cols[c][r] = panel(w.begin + r, c);
    }
    return cols;
}

}  // namespace

std::string_view method_name(CorrelationMethod m) {
    return m == CorrelationMethod::Pearson ? "pearson" : "spearman";
}

std::vector<double> CorrelationMatrix::offdiag() const {
    std::vector<double> out;
    out.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) out.push_back(entries[i * n + j]);
    }
    return out;
}

CorrelationMatrix pearson(const Grid<double>& panel,
                          const std::vector<std::string>& symbols,
                          std::optional<RowRange> window) {
    if (symbols.size() != panel.cols()) throw InputError("pearson: symbol count mismatch");
    const RowRange w = resolve_window(panel, window);
    return correlate_columns(window_columns(panel, w), symbols, CorrelationMethod::Pearson, w,
                             window.has_value());
}

CorrelationMatrix spearman(const Grid<double>& panel,
                           const std::vector<std::string>& symbols,
                           std::optional<RowRange> window) {
    if (symbols.size() != panel.cols()) throw InputError("spearman: symbol count mismatch");
    const RowRange w = resolve_window(panel, window);
    auto cols = window_columns(panel, w);
    for (auto& col : cols) col = stats::average_ranks(col);
    return correlate_columns(std::move(cols), symbols, CorrelationMethod::Spearman, w,
                             window.has_value());
}

CorrelationMatrix correlation(const Grid<double>& panel,
                              const std::vector<std::string>& symbols,
                              CorrelationMethod method,
                              std::optional<RowRange> window) {
    return method == CorrelationMethod::Pearson ? pearson(panel, symbols, window)
                                                : spearman(panel, symbols, window);
}

OffdiagStats offdiag_stats(const CorrelationMatrix& m) {
    const std::vector<double> c = m.offdiag();
    if (c.empty()) throw InputError("offdiag_stats: matrix has no off-diagonal entries");
    OffdiagStats out;
    out.count = c.size();
    out.mean = stats::mean(c);
    out.stddev = c.size() > 1 ? stats::sample_stddev(c) : 0.0;
    out.skewness = stats::skewness(c);
    out.kurtosis = stats::kurtosis(c);
    return out;
}

RollingSeries rolling_mean_correlation(const Grid<double>& panel,
                                       const std::vector<Date>& dates,
                                       const std::vector<std::string>& symbols,
                                       std::size_t window_length,
                                       CorrelationMethod method) {
    if (dates.size() != panel.rows()) throw InputError("rolling_mean_correlation: date count mismatch");
    if (window_length < 3) throw InputError("rolling_mean_correlation: window must be at least 3");
    if (window_length > panel.rows()) {
        throw InputError("rolling_mean_correlation: window of " + std::to_string(window_length) +
                         " rows exceeds panel of " + std::to_string(panel.rows()) + " rows");
    }
    RollingSeries out;
    out.kind = SeriesKind::MeanCorrelation;
    out.window_length = window_length;
    const std::size_t count = panel.rows() - window_length + 1;
    out.dates.reserve(count);
    out.values.reserve(count);
    for (std::size_t start = 0; start < count; ++start) {
        const RowRange w{start, start + window_length};
        const CorrelationMatrix m = correlation(panel, symbols, method, w);
        out.dates.push_back(dates[w.end - 1]);
        out.values.push_back(offdiag_stats(m).mean);
    }
    return out;
}

std::vector<PeriodDistribution> periodized_coefficient_distribution(
    const Grid<double>& panel,
    const std::vector<Date>& dates,
    const std::vector<std::string>& symbols,
    Period period,
    double bin_width,
    CorrelationMethod method,
    std::vector<std::string>* skipped) {
    if (dates.size() != panel.rows()) {
        throw InputError("periodized_coefficient_distribution: date count mismatch");
    }
    if (!(bin_width > 0.0)) {
        throw InputError("periodized_coefficient_distribution: bin width must be positive");
    }
    if (panel.rows() < 3) {
        throw InputError("periodized_coefficient_distribution: need at least 3 rows");
    }

    const auto histogram = [&](RowRange w, std::string label) -> PeriodDistribution {
        const CorrelationMatrix m = correlation(panel, symbols, method, w);
        const std::vector<double> c = m.offdiag();
        std::map<long long, std::size_t> counts;
        for (double v : c) ++counts[static_cast<long long>(std::floor(v / bin_width))];
        PeriodDistribution dist;
        dist.label = std::move(label);
        dist.first_date = dates[w.begin];
        dist.last_date = dates[w.end - 1];
        dist.rows = w.length();
        dist.bin_width = bin_width;
        for (const auto& [k, count] : counts) {
            dist.bins.push_back({(static_cast<double>(k) + 0.5) * bin_width,
                                 static_cast<double>(count) /
                                     (static_cast<double>(c.size()) * bin_width),
                                 count});
        }
        return dist;
    };

    std::vector<PeriodDistribution> out;
    if (period == Period::BiMonthly) {
        // Two-month calendar blocks: (Jan,Feb), (Mar,Apr), ... per year.
        std::size_t start = 0;
        while (start < dates.size()) {
            const int year = dates[start].year();
            const int block = (dates[start].month() - 1) / 2;
            std::size_t end = start + 1;
            while (end < dates.size() && dates[end].year() == year &&
                   (dates[end].month() - 1) / 2 == block) {
                ++end;
            }
            char label[48];
            std::snprintf(label, sizeof(label), "%04d-%02d/%04d-%02d", year, 2 * block + 1, year,
                          2 * block + 2);
            if (end - start >= 3) {
                out.push_back(histogram(RowRange{start, end}, label));
            } else if (skipped) {
                skipped->push_back(std::string(label) + ": only " + std::to_string(end - start) +
                                   " rows");
            }
            start = end;
        }
    }
    out.push_back(histogram(RowRange{0, dates.size()}, "full"));
    return out;
}

}  // namespace rmtcorr
