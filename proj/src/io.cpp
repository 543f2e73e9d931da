#include "rmtcorr/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>

#include "rmtcorr/errors.hpp"

namespace rmtcorr::io {

std::string format_g9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

double sig9(double v) {
    if (!std::isfinite(v)) return v;
    return std::strtod(format_g9(v).c_str(), nullptr);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(ch);
            }
        } else if (ch == '"' && field.empty()) {
            quoted = true;
        } else if (ch == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else {
            field.push_back(ch);
        }
    }
    fields.push_back(std::move(field));
    return fields;
}

ReturnsTable read_panel_csv(std::istream& in, const std::string& name) {
    std::string line;
    if (!std::getline(in, line)) throw InputError(name + ": empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto header = split_csv_line(line);
    if (header.size() < 2 || header[0] != "date") {
        throw InputError(name + ": expected header date,<symbol>,...");
    }
    ReturnsTable out;
    out.symbols.assign(header.begin() + 1, header.end());

    std::vector<std::vector<double>> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != header.size()) {
            throw InputError(name + ": line " + std::to_string(lineno) + " has " +
                             std::to_string(fields.size()) + " fields, expected " +
                             std::to_string(header.size()));
        }
        const auto date = Date::parse(fields[0]);
        if (!date) {
            throw InputError(name + ": bad date '" + fields[0] + "' on line " +
                             std::to_string(lineno));
        }
        if (!out.dates.empty() && !(out.dates.back() < *date)) {
            throw InputError(name + ": dates must be strictly increasing (line " +
                             std::to_string(lineno) + ")");
        }
        out.dates.push_back(*date);
        std::vector<double> row(out.symbols.size());
        for (std::size_t c = 0; c < out.symbols.size(); ++c) {
            try {
                std::size_t pos = 0;
                row[c] = std::stod(fields[c + 1], &pos);
                if (pos != fields[c + 1].size()) throw std::invalid_argument("trailing");
            } catch (const std::exception&) {
                throw InputError(name + ": non-numeric value '" + fields[c + 1] + "' on line " +
                                 std::to_string(lineno));
            }
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw InputError(name + ": no data rows");
    out.values = Grid<double>(rows.size(), out.symbols.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < out.symbols.size(); ++c) out.values(r, c) = rows[r][c];
    }
    return out;
}

namespace {

void write_header(std::ostream& out, const std::vector<MarketMeta>& markets) {
    out << "date";
    for (const auto& m : markets) out << ',' << m.symbol;
    out << '\n';
}

}  // namespace

void write_aligned_csv(std::ostream& out, const AlignedPanel& panel) {
    write_header(out, panel.markets);
    for (std::size_t r = 0; r < panel.dates.size(); ++r) {
        out << panel.dates[r].to_string();
        for (std::size_t c = 0; c < panel.markets.size(); ++c) {
            out << ',' << format_g9(panel.values(r, c));
        }
        out << '\n';
    }
}

void write_mask_csv(std::ostream& out, const AlignedPanel& panel) {
    write_header(out, panel.markets);
    for (std::size_t r = 0; r < panel.dates.size(); ++r) {
        out << panel.dates[r].to_string();
        for (std::size_t c = 0; c < panel.markets.size(); ++c) {
            out << ',' << (panel.fill_mask(r, c) ? '1' : '0');
        }
        out << '\n';
    }
}

void write_panel_csv(std::ostream& out,
                     const std::vector<Date>& dates,
                     const std::vector<std::string>& symbols,
                     const Grid<double>& values) {
    out << "date";
    for (const auto& s : symbols) out << ',' << s;
    out << '\n';
    for (std::size_t r = 0; r < dates.size(); ++r) {
        out << dates[r].to_string();
        for (std::size_t c = 0; c < symbols.size(); ++c) out << ',' << format_g9(values(r, c));
        out << '\n';
    }
}

void write_matrix_csv(std::ostream& out, const CorrelationMatrix& m) {
    out << "symbol";
    for (const auto& s : m.symbols) out << ',' << s;
    out << '\n';
    for (std::size_t i = 0; i < m.n; ++i) {
        out << m.symbols[i];
        for (std::size_t j = 0; j < m.n; ++j) out << ',' << format_g9(m.at(i, j));
        out << '\n';
    }
}

void write_rolling_csv(std::ostream& out, const RollingSeries& series) {
    out << "end_date,value\n";
    for (std::size_t i = 0; i < series.dates.size(); ++i) {
        out << series.dates[i].to_string() << ',' << format_g9(series.values[i]) << '\n';
    }
}

void write_eigenvectors_csv(std::ostream& out,
                            const std::vector<std::string>& symbols,
                            const SpectralDecomposition& d) {
    out << "symbol";
    for (std::size_t k = 0; k < d.eigenvalues.size(); ++k) out << ",e" << (k + 1);
    out << '\n';
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        out << symbols[i];
        for (std::size_t k = 0; k < d.eigenvalues.size(); ++k) {
            out << ',' << format_g9(d.eigenvectors(i, k));
        }
        out << '\n';
    }
}

nlohmann::json crash_report_json(const CrashReport& report) {
    nlohmann::json events = nlohmann::json::array();
    for (const auto& market : report.per_market) {
        for (const auto& e : market.events) {
            events.push_back({{"symbol", e.symbol},
                              {"date", e.date.to_string()},
                              {"return", sig9(e.log_return)}});
        }
    }
    nlohmann::json yearly = nlohmann::json::object();
    for (const auto& [year, count] : report.yearly_counts) {
        yearly[std::to_string(year)] = count;
    }
    return {{"events", std::move(events)}, {"yearly_counts", std::move(yearly)}};
}

nlohmann::json spectrum_json(const SpectralDecomposition& d,
                             const MpParams& mp,
                             const BulkCounts& bulk) {
    nlohmann::json eigenvalues = nlohmann::json::array();
    for (double v : d.eigenvalues) eigenvalues.push_back(sig9(v));
    nlohmann::json ipr = nlohmann::json::array();
    nlohmann::json pr = nlohmann::json::array();
    for (double v : inverse_participation_ratio(d)) {
        ipr.push_back(sig9(v));
        pr.push_back(sig9(1.0 / v));
    }
    return {{"eigenvalues", std::move(eigenvalues)},
            {"mp",
             {{"q", sig9(mp.q)},
              {"sigma", sig9(mp.sigma)},
              {"lambda_minus", sig9(mp.lambda_minus)},
              {"lambda_plus", sig9(mp.lambda_plus)}}},
            {"bulk",
             {{"below", bulk.below},
              {"inside", bulk.inside},
              {"above", bulk.above},
              {"fraction_inside", sig9(bulk.fraction_inside)}}},
            {"ipr", std::move(ipr)},
            {"pr", std::move(pr)},
            {"explained_fraction", sig9(explained_fraction(d))}};
}

nlohmann::json normality_json(const NormalityReport& r) {
    return {{"n", r.n},
            {"skewness", sig9(r.skewness)},
            {"kurtosis", sig9(r.kurtosis)},
            {"jb",
             {{"stat", sig9(r.jb.statistic)},
              {"critical", sig9(r.jb.critical_5pct)},
              {"reject", r.jb.reject_5pct}}},
            {"lilliefors",
             {{"stat", sig9(r.lilliefors.statistic)},
              {"critical", sig9(r.lilliefors.critical_5pct)},
              {"reject", r.lilliefors.reject_5pct}}}};
}

nlohmann::json histogram_json(const PeriodDistribution& dist) {
    nlohmann::json bins = nlohmann::json::array();
    for (const auto& b : dist.bins) {
        bins.push_back({{"center", sig9(b.center)}, {"density", sig9(b.density)}});
    }
    return {{"period", dist.label},
            {"first_date", dist.first_date.to_string()},
            {"last_date", dist.last_date.to_string()},
            {"rows", dist.rows},
            {"bin_width", sig9(dist.bin_width)},
            {"bins", std::move(bins)}};
}

nlohmann::json log_density_json(const std::vector<DensityBin>& bins, double bin_width) {
    nlohmann::json out_bins = nlohmann::json::array();
    for (const auto& b : bins) {
        out_bins.push_back({{"center", sig9(b.center)}, {"log_density", sig9(b.value)}});
    }
    return {{"bin_width", sig9(bin_width)}, {"bins", std::move(out_bins)}};
}

void write_json_file(const std::filesystem::path& path, const nlohmann::json& doc) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot open '" + path.string() + "' for writing");
    out << doc.dump(2) << '\n';
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot open '" + path.string() + "' for writing");
    out << text;
}

}  // namespace rmtcorr::io
