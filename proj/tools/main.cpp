#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rmtcorr/corrmat.hpp"
#include "rmtcorr/errors.hpp"
#include "rmtcorr/ingest.hpp"
#include "rmtcorr/io.hpp"
#include "rmtcorr/marketmode.hpp"
#include "rmtcorr/normality.hpp"
#include "rmtcorr/returns.hpp"
#include "rmtcorr/spectral.hpp"
#include "rmtcorr/stats.hpp"
#include "rmtcorr/synth.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace rmtcorr;

namespace {

struct Options {
    std::string prices;
    std::string meta;
    std::string returns_csv;
    std::string out;
    std::string method = "pearson";
    std::size_t window = 30;
    std::size_t cov_window = 30;
    bool phase = false;
    bool exclude_filled = false;
    bool allow_any_eastern = false;
    double drop_threshold = 0.30;
    double norm_mean = 2.0;
    double norm_std = 1.0;
    double eigen_bin_width = 0.2;
    double coeff_bin_width = 0.1;
    double density_bin_width = 0.004;
    std::uint64_t seed = 42;
    int k = 10;
    // synth / mp-sim shapes
    std::size_t n = 23;
    std::size_t rows = 250;
    std::size_t l = 100;
    std::size_t replicates = 1;
    double rho = 0.3;
    std::vector<std::string> regimes;
};

CorrelationMethod parse_method(const std::string& name) {
    if (name == "pearson") return CorrelationMethod::Pearson;
    if (name == "spearman") return CorrelationMethod::Spearman;
    throw InputError("unknown method '" + name + "'; expected pearson or spearman");
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot open '" + path.string() + "' for writing");
    return out;
}

fs::path prepare_out_dir(const std::string& out) {
    if (out.empty()) throw InputError("--out is required");
    fs::path dir(out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw InputError("cannot create output directory '" + out + "': " + ec.message());
    return dir;
}

// Resolved analysis input: a standardized return panel plus whatever
// upstream artifacts were produced along the way.
struct PanelData {
    std::vector<Date> dates;
    std::vector<std::string> symbols;
    Grid<double> standardized;
    std::optional<AlignedPanel> aligned;
    std::optional<ReturnPanel> returns;
    std::vector<std::string> warnings;
};

PanelData load_from_prices(const Options& opt) {
    PanelData data;
    std::ifstream meta_in(opt.meta);
    if (!meta_in) throw InputError("cannot open metadata file '" + opt.meta + "'");
    const auto meta = parse_metadata(meta_in, !opt.allow_any_eastern);
    std::ifstream prices_in(opt.prices);
    if (!prices_in) throw InputError("cannot open prices file '" + opt.prices + "'");
    const auto raw_panel = parse_prices(prices_in, meta);
    const auto shifted = shift_weekend(raw_panel, &data.warnings);
    AlignedPanel aligned = align(shifted, opt.drop_threshold);
    if (opt.phase) aligned = phase_east(aligned);

    ReturnPanel returns = log_returns(aligned);
    standardize(returns, opt.exclude_filled);

    // Zero-variance columns leave the analysis panel entirely.
    std::vector<std::size_t> keep;
    for (std::size_t c = 0; c < returns.markets.size(); ++c) {
        const auto& zv = returns.zero_variance_columns;
        if (std::find(zv.begin(), zv.end(), c) == zv.end()) {
            keep.push_back(c);
        } else {
            data.warnings.push_back("standardize: column " + returns.markets[c].symbol +
                                    " has zero variance; excluded from analysis");
        }
    }
    if (keep.size() < 2) throw InputError("fewer than 2 markets with usable returns");

    data.dates = returns.dates;
    data.standardized = Grid<double>(returns.standardized.rows(), keep.size());
    data.symbols.reserve(keep.size());
    for (std::size_t idx = 0; idx < keep.size(); ++idx) {
        data.symbols.push_back(returns.markets[keep[idx]].symbol);
        for (std::size_t r = 0; r < returns.standardized.rows(); ++r) {
            data.standardized(r, idx) = returns.standardized(r, keep[idx]);
        }
    }
    data.aligned = std::move(aligned);
    data.returns = std::move(returns);
    return data;
}

PanelData load_panel(const Options& opt) {
    const bool have_prices = !opt.prices.empty() || !opt.meta.empty();
    const bool have_returns = !opt.returns_csv.empty();
    if (have_prices && have_returns) {
        throw InputError("give either --prices/--meta or --returns, not both");
    }
    if (have_prices) {
        if (opt.prices.empty() || opt.meta.empty()) {
            throw InputError("--prices and --meta must be given together");
        }
        return load_from_prices(opt);
    }
    if (!have_returns) throw InputError("no input: give --prices/--meta or --returns");
    std::ifstream in(opt.returns_csv);
    if (!in) throw InputError("cannot open returns file '" + opt.returns_csv + "'");
    auto table = io::read_panel_csv(in, opt.returns_csv);
    PanelData data;
    data.dates = std::move(table.dates);
    data.symbols = std::move(table.symbols);
    data.standardized = std::move(table.values);
    return data;
}

void report_warnings(const PanelData& data) {
    for (const auto& w : data.warnings) std::cerr << "warning: " << w << '\n';
}

RowRange trailing_window(const PanelData& data, std::size_t window, bool use_window) {
    if (!use_window) return RowRange{0, data.standardized.rows()};
    if (window > data.standardized.rows()) {
        throw InputError("window of " + std::to_string(window) + " rows exceeds panel of " +
                         std::to_string(data.standardized.rows()) + " rows");
    }
    return RowRange{data.standardized.rows() - window, data.standardized.rows()};
}

json config_json(const Options& opt, const std::string& command) {
    return {{"command", command},
            {"method", opt.method},
            {"window", opt.window},
            {"cov_window", opt.cov_window},
            {"phase_east", opt.phase},
            {"drop_threshold", io::sig9(opt.drop_threshold)},
            {"norm_mean", io::sig9(opt.norm_mean)},
            {"norm_std", io::sig9(opt.norm_std)},
            {"seed", opt.seed},
            {"k", opt.k}};
}

json alignment_json(const PanelData& data) {
    if (!data.aligned) {
        return {{"source", "standardized_returns"},
                {"rows", data.standardized.rows()},
                {"markets", data.symbols.size()}};
    }
    const auto& aligned = *data.aligned;
    json dropped = json::array();
    for (const auto& d : aligned.dropped_dates) dropped.push_back(d.to_string());
    std::size_t filled = 0;
    for (std::size_t r = 0; r < aligned.fill_mask.rows(); ++r) {
        for (std::size_t c = 0; c < aligned.fill_mask.cols(); ++c) {
            filled += aligned.fill_mask(r, c);
        }
    }
    return {{"dates", aligned.dates.size()},
            {"markets", aligned.markets.size()},
            {"dropped_dates", std::move(dropped)},
            {"filled_cells", filled},
            {"phased", aligned.phased}};
}

json correlation_summary_json(const CorrelationMatrix& m) {
    const OffdiagStats stats = offdiag_stats(m);
    json excluded = json::array();
    for (std::size_t c : m.excluded_columns) excluded.push_back(c);
    return {{"method", std::string(method_name(m.method))},
            {"n", m.n},
            {"coefficients", stats.count},
            {"mean", io::sig9(stats.mean)},
            {"stddev", io::sig9(stats.stddev)},
            {"skewness", io::sig9(stats.skewness)},
            {"kurtosis", io::sig9(stats.kurtosis)},
            {"excluded_columns", std::move(excluded)}};
}

// Co-movement table: raw series plus display-renormalized variants.
void write_comovement_csv(std::ostream& out,
                          const RollingSeries& meancorr,
                          const std::vector<double>& volatility,
                          const RollingSeries& meanvol,
                          const RollingSeries& covariance,
                          double norm_mean,
                          double norm_std) {
    const auto corr_norm = renormalize(meancorr.values, norm_mean, norm_std);
    const auto vol_norm = renormalize(volatility, norm_mean, norm_std);
    const auto meanvol_norm = renormalize(meanvol.values, norm_mean, norm_std);
    out << "end_date,mean_correlation,volatility,mean_volatility,covariance,"
           "mean_correlation_norm,volatility_norm,mean_volatility_norm\n";
    const std::size_t lead = meancorr.values.size() - covariance.values.size();
    for (std::size_t i = 0; i < meancorr.values.size(); ++i) {
        out << meancorr.dates[i].to_string() << ',' << io::format_g9(meancorr.values[i]) << ','
            << io::format_g9(volatility[i]) << ',' << io::format_g9(meanvol.values[i]) << ',';
        if (i >= lead) out << io::format_g9(covariance.values[i - lead]);
        out << ',' << io::format_g9(corr_norm[i]) << ',' << io::format_g9(vol_norm[i]) << ','
            << io::format_g9(meanvol_norm[i]) << '\n';
    }
}

struct ModeArtifacts {
    MarketModeSeries mode;
    RollingSeries meancorr;
    std::vector<double> volatility_at_ends;
    RollingSeries meanvol;
    RollingSeries covariance;
    double comovement = 0.0;
};

ModeArtifacts build_mode_artifacts(const PanelData& data,
                                   const CorrelationMethod method,
                                   std::size_t window,
                                   std::size_t cov_window) {
    if (window > data.standardized.rows()) {
        throw InputError("window of " + std::to_string(window) + " rows exceeds panel of " +
                         std::to_string(data.standardized.rows()) + " rows");
    }
    ModeArtifacts art;
    const CorrelationMatrix full = correlation(data.standardized, data.symbols, method);
    if (!full.excluded_columns.empty()) {
        throw InputError("market mode: panel has zero-variance columns");
    }
    const SpectralDecomposition decomp = eigh(full);
    art.mode = build_market_mode(data.standardized, data.dates, decomp);
    art.meancorr =
        rolling_mean_correlation(data.standardized, data.dates, data.symbols, window, method);
    art.volatility_at_ends.assign(art.mode.volatility.begin() + (window - 1),
                                  art.mode.volatility.end());
    art.meanvol = rolling_volatility(art.mode, window);

    // Co-movement pairs the two running-window series: mean volatility of
    // the market mode against the mean correlation, window for window.
    if (cov_window > art.meanvol.values.size()) {
        throw InputError("covariance window of " + std::to_string(cov_window) +
                         " exceeds the rolling series of " +
                         std::to_string(art.meanvol.values.size()) + " points");
    }
    art.covariance = rolling_covariance(art.meanvol, art.meancorr, cov_window);
    art.comovement = comovement_correlation(art.meanvol.values, art.meancorr.values);
    return art;
}

std::vector<Date> synthetic_weekday_dates(std::size_t rows) {
    std::vector<Date> dates;
    dates.reserve(rows);
    Date d = Date::from_ymd(2000, 1, 3);  // a Monday
    while (dates.size() < rows) {
        const Weekday w = d.weekday();
        if (w != Weekday::Saturday && w != Weekday::Sunday) dates.push_back(d);
        d = d.add_days(1);
    }
    return dates;
}

std::vector<RegimeSpec> parse_regimes(const std::vector<std::string>& specs) {
    std::vector<RegimeSpec> out;
    for (const auto& text : specs) {
        RegimeSpec regime;
        char extra = 0;
        unsigned long long begin = 0, end = 0;
        if (std::sscanf(text.c_str(), "%llu:%llu:%lf%c", &begin, &end, &regime.rho, &extra) != 3) {
            throw InputError("bad --regime '" + text + "'; expected begin:end:rho");
        }
        regime.begin = begin;
        regime.end = end;
        out.push_back(regime);
    }
    return out;
}

int cmd_synth(const Options& opt) {
    FactorModelSpec spec;
    spec.n = opt.n;
    spec.rows = opt.rows;
    spec.rho = opt.rho;
    spec.seed = opt.seed;
    spec.regimes = parse_regimes(opt.regimes);
    const Grid<double> panel = generate(spec);

    const fs::path dir = prepare_out_dir(opt.out);
    std::vector<std::string> symbols;
    for (std::size_t i = 0; i < spec.n; ++i) symbols.push_back("SYN" + std::to_string(i + 1));
    auto out = open_out(dir / "returns_standardized.csv");
    io::write_panel_csv(out, synthetic_weekday_dates(spec.rows), symbols, panel);
    return 0;
}

int cmd_align(const Options& opt) {
    Options local = opt;
    local.returns_csv.clear();
    const PanelData data = load_from_prices(local);
    report_warnings(data);
    const fs::path dir = prepare_out_dir(opt.out);
    {
        auto out = open_out(dir / "aligned.csv");
        io::write_aligned_csv(out, *data.aligned);
    }
    {
        auto out = open_out(dir / "aligned_mask.csv");
        io::write_mask_csv(out, *data.aligned);
    }
    io::write_json_file(dir / "alignment.json", alignment_json(data));
    return 0;
}

int cmd_returns(const Options& opt) {
    const PanelData data = load_from_prices(opt);
    report_warnings(data);
    const fs::path dir = prepare_out_dir(opt.out);
    const ReturnPanel& returns = *data.returns;
    std::vector<std::string> all_symbols;
    for (const auto& m : returns.markets) all_symbols.push_back(m.symbol);
    {
        auto out = open_out(dir / "returns_raw.csv");
        io::write_panel_csv(out, returns.dates, all_symbols, returns.raw);
    }
    {
        auto out = open_out(dir / "returns_standardized.csv");
        io::write_panel_csv(out, data.dates, data.symbols, data.standardized);
    }
    {
        std::vector<double> pooled;
        pooled.reserve(data.standardized.rows() * data.standardized.cols());
        for (std::size_t r = 0; r < data.standardized.rows(); ++r) {
            for (std::size_t c = 0; c < data.standardized.cols(); ++c) {
                pooled.push_back(data.standardized(r, c));
            }
        }
        io::write_json_file(dir / "log_density.json",
                            io::log_density_json(log_density(pooled, opt.density_bin_width),
                                                 opt.density_bin_width));
    }
    return 0;
}

int cmd_corr(const Options& opt, const CLI::App& sub) {
    const PanelData data = load_panel(opt);
    report_warnings(data);
    const RowRange window = trailing_window(data, opt.window, sub.count("--window") > 0);
    const CorrelationMatrix m =
        correlation(data.standardized, data.symbols, parse_method(opt.method), window);
    const fs::path dir = prepare_out_dir(opt.out);
    {
        auto out = open_out(dir / "correlation.csv");
        io::write_matrix_csv(out, m);
    }
    io::write_json_file(dir / "correlation_stats.json", correlation_summary_json(m));
    return 0;
}

int cmd_spectrum(const Options& opt, const CLI::App& sub) {
    const PanelData data = load_panel(opt);
    report_warnings(data);
    const RowRange window = trailing_window(data, opt.window, sub.count("--window") > 0);
    const CorrelationMatrix m =
        correlation(data.standardized, data.symbols, parse_method(opt.method), window);
    const SpectralDecomposition decomp = eigh(m);
    const double q = static_cast<double>(window.length()) / static_cast<double>(m.n);
    const MpParams mp = mp_bounds(q);
    const BulkCounts bulk = classify_bulk(decomp.eigenvalues, mp);
    const fs::path dir = prepare_out_dir(opt.out);
    io::write_json_file(dir / "spectrum.json", io::spectrum_json(decomp, mp, bulk));
    {
        auto out = open_out(dir / "eigenvectors.csv");
        io::write_eigenvectors_csv(out, m.symbols, decomp);
    }
    return 0;
}

int cmd_rolling(const Options& opt) {
    const PanelData data = load_panel(opt);
    report_warnings(data);
    const RollingSeries series = rolling_mean_correlation(
        data.standardized, data.dates, data.symbols, opt.window, parse_method(opt.method));
    const fs::path dir = prepare_out_dir(opt.out);
    auto out = open_out(dir / "rolling_corr.csv");
    io::write_rolling_csv(out, series);
    return 0;
}

int cmd_mode(const Options& opt) {
    const PanelData data = load_panel(opt);
    report_warnings(data);
    const ModeArtifacts art =
        build_mode_artifacts(data, parse_method(opt.method), opt.window, opt.cov_window);
    const fs::path dir = prepare_out_dir(opt.out);
    {
        auto out = open_out(dir / "market_mode.csv");
        out << "date,value,volatility\n";
        for (std::size_t t = 0; t < art.mode.dates.size(); ++t) {
            out << art.mode.dates[t].to_string() << ',' << io::format_g9(art.mode.values[t]) << ','
                << io::format_g9(art.mode.volatility[t]) << '\n';
        }
    }
    {
        auto out = open_out(dir / "comovement.csv");
        write_comovement_csv(out, art.meancorr, art.volatility_at_ends, art.meanvol,
                             art.covariance, opt.norm_mean, opt.norm_std);
    }
    io::write_json_file(dir / "mode.json",
                        {{"comovement_correlation", io::sig9(art.comovement)},
                         {"window", opt.window},
                         {"cov_window", opt.cov_window}});
    return 0;
}

int cmd_normality(const Options& opt) {
    const PanelData data = load_panel(opt);
    report_warnings(data);
    const CorrelationMethod method = parse_method(opt.method);
    const LillieforsTable table;

    const CorrelationMatrix full = correlation(data.standardized, data.symbols, method);
    const std::vector<double> coefficients = full.offdiag();
    const NormalityReport report = normality_report(coefficients, table);

    std::vector<std::string> skipped;
    const auto periods =
        periodized_coefficient_distribution(data.standardized, data.dates, data.symbols,
                                            Period::BiMonthly, opt.coeff_bin_width, method,
                                            &skipped);
    for (const auto& s : skipped) std::cerr << "warning: skipped period " << s << '\n';

    const fs::path dir = prepare_out_dir(opt.out);
    io::write_json_file(dir / "normality.json", io::normality_json(report));

    json period_reports = json::array();
    json histograms = json::array();
    for (const auto& dist : periods) {
        histograms.push_back(io::histogram_json(dist));
        const RowRange w = [&] {
            for (std::size_t r = 0; r < data.dates.size(); ++r) {
                if (data.dates[r] == dist.first_date) {
                    return RowRange{r, r + dist.rows};
                }
            }
            throw NumericalError("normality: period rows not found");
        }();
        const CorrelationMatrix m = correlation(data.standardized, data.symbols, method, w);
        const std::vector<double> c = m.offdiag();
        if (c.size() >= 5) {
            json entry = io::normality_json(normality_report(c, table));
            entry["period"] = dist.label;
            period_reports.push_back(std::move(entry));
        }
    }
    io::write_json_file(dir / "normality_periods.json", period_reports);
    io::write_json_file(dir / "coefficient_histograms.json", histograms);

    if (data.standardized.rows() >= opt.window) {
        const auto [skew, kurt] = rolling_moments(data.standardized, data.dates, data.symbols,
                                                  opt.window, method);
        {
            auto out = open_out(dir / "rolling_skewness.csv");
            io::write_rolling_csv(out, skew);
        }
        {
            auto out = open_out(dir / "rolling_kurtosis.csv");
            io::write_rolling_csv(out, kurt);
        }
    }
    return 0;
}

int cmd_mp_sim(const Options& opt) {
    const RandomSpectrumSample sample =
        sample_random_spectrum(opt.n, opt.l, opt.seed, opt.replicates, opt.eigen_bin_width);
    const fs::path dir = prepare_out_dir(opt.out);
    {
        auto out = open_out(dir / "spectra.csv");
        out << "replicate";
        for (std::size_t k = 0; k < opt.n; ++k) out << ",lambda" << (k + 1);
        out << '\n';
        for (std::size_t r = 0; r < sample.spectra.size(); ++r) {
            out << (r + 1);
            for (double v : sample.spectra[r]) out << ',' << io::format_g9(v);
            out << '\n';
        }
    }
    json bins = json::array();
    for (const auto& b : sample.histogram) {
        bins.push_back({{"center", io::sig9(b.center)}, {"density", io::sig9(b.density)}});
    }
    io::write_json_file(dir / "mp_sim.json",
                        {{"n", opt.n},
                         {"l", opt.l},
                         {"seed", opt.seed},
                         {"replicates", opt.replicates},
                         {"mp",
                          {{"q", io::sig9(sample.mp.q)},
                           {"sigma", io::sig9(sample.mp.sigma)},
                           {"lambda_minus", io::sig9(sample.mp.lambda_minus)},
                           {"lambda_plus", io::sig9(sample.mp.lambda_plus)}}},
                         {"histogram", {{"bin_width", io::sig9(opt.eigen_bin_width)}, {"bins", std::move(bins)}}}});
    return 0;
}

int cmd_scan(const Options& opt) {
    const PanelData data = load_from_prices(opt);
    report_warnings(data);
    const CrashReport report = scan_crashes(*data.returns, opt.k);
    const fs::path dir = prepare_out_dir(opt.out);
    io::write_json_file(dir / "crashes.json", io::crash_report_json(report));
    return 0;
}

int cmd_report(const Options& opt) {
    const PanelData data = load_panel(opt);
    report_warnings(data);
    const CorrelationMethod method = parse_method(opt.method);
    const fs::path dir = prepare_out_dir(opt.out);

    if (data.aligned) {
        {
            auto out = open_out(dir / "aligned.csv");
            io::write_aligned_csv(out, *data.aligned);
        }
        {
            auto out = open_out(dir / "aligned_mask.csv");
            io::write_mask_csv(out, *data.aligned);
        }
        std::vector<std::string> all_symbols;
        for (const auto& m : data.returns->markets) all_symbols.push_back(m.symbol);
        {
            auto out = open_out(dir / "returns_raw.csv");
            io::write_panel_csv(out, data.returns->dates, all_symbols, data.returns->raw);
        }
        {
            auto out = open_out(dir / "returns_standardized.csv");
            io::write_panel_csv(out, data.dates, data.symbols, data.standardized);
        }
        io::write_json_file(dir / "crashes.json",
                            io::crash_report_json(scan_crashes(*data.returns, opt.k)));
    }

    const CorrelationMatrix full = correlation(data.standardized, data.symbols, method);
    {
        auto out = open_out(dir / "correlation.csv");
        io::write_matrix_csv(out, full);
    }

    const SpectralDecomposition decomp = eigh(full);
    const double q =
        static_cast<double>(data.standardized.rows()) / static_cast<double>(full.n);
    const MpParams mp = mp_bounds(q);
    const BulkCounts bulk = classify_bulk(decomp.eigenvalues, mp);
    const json spectrum = io::spectrum_json(decomp, mp, bulk);
    io::write_json_file(dir / "spectrum.json", spectrum);
    {
        auto out = open_out(dir / "eigenvectors.csv");
        io::write_eigenvectors_csv(out, full.symbols, decomp);
    }

    const ModeArtifacts art = build_mode_artifacts(data, method, opt.window, opt.cov_window);
    {
        auto out = open_out(dir / "rolling_corr.csv");
        io::write_rolling_csv(out, art.meancorr);
    }
    {
        auto out = open_out(dir / "market_mode.csv");
        out << "date,value,volatility\n";
        for (std::size_t t = 0; t < art.mode.dates.size(); ++t) {
            out << art.mode.dates[t].to_string() << ',' << io::format_g9(art.mode.values[t]) << ','
                << io::format_g9(art.mode.volatility[t]) << '\n';
        }
    }
    {
        auto out = open_out(dir / "comovement.csv");
        write_comovement_csv(out, art.meancorr, art.volatility_at_ends, art.meanvol,
                             art.covariance, opt.norm_mean, opt.norm_std);
    }

    const LillieforsTable table;
    const NormalityReport normality = normality_report(full.offdiag(), table);
    io::write_json_file(dir / "normality.json", io::normality_json(normality));

    const json summary = {{"schema_version", 1},
                          {"config", config_json(opt, "report")},
                          {"alignment", alignment_json(data)},
                          {"correlation", correlation_summary_json(full)},
                          {"spectrum", spectrum},
                          {"market_mode",
                           {{"comovement_correlation", io::sig9(art.comovement)},
                            {"window", opt.window},
                            {"cov_window", opt.cov_window}}},
                          {"normality", io::normality_json(normality)}};
    io::write_json_file(dir / "summary.json", summary);
    return 0;
}

void add_input_options(CLI::App* sub, Options& opt, bool returns_ok = true) {
    sub->add_option("--prices", opt.prices, "Prices CSV (date,symbol,close)");
    sub->add_option("--meta", opt.meta, "Metadata CSV (symbol,name,country,region,weekend,eastern)");
    if (returns_ok) {
        sub->add_option("--returns", opt.returns_csv,
                        "Standardized returns CSV (date,<symbol>,...), alternative to --prices/--meta");
    }
    sub->add_option("--drop-threshold", opt.drop_threshold,
                    "Drop calendar dates missing in more than this fraction of markets");
    sub->add_flag("--phase-east", opt.phase, "Advance eastern market columns by one day");
    sub->add_flag("--exclude-filled", opt.exclude_filled,
                  "Exclude fill-spanning returns from standardization statistics");
    sub->add_flag("--allow-any-eastern", opt.allow_any_eastern,
                  "Accept eastern markets outside Eurasia/Asia/Oceania");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cross-market correlation and spectrum diagnostics"};
    app.require_subcommand(1);
    Options opt;

    auto* synth = app.add_subcommand("synth", "Generate a single-factor synthetic return panel");
    synth->add_option("--n", opt.n, "Markets");
    synth->add_option("--rows", opt.rows, "Return observations");
    synth->add_option("--rho", opt.rho, "Base pairwise correlation in [0, 1)");
    synth->add_option("--regime", opt.regimes, "Regime override begin:end:rho (repeatable)");
    synth->add_option("--seed", opt.seed, "Stream seed");
    synth->add_option("--out", opt.out, "Output directory")->required();

    auto* align_cmd = app.add_subcommand("align", "Align price calendars");
    add_input_options(align_cmd, opt, false);
    align_cmd->add_option("--out", opt.out, "Output directory")->required();

    auto* returns_cmd = app.add_subcommand("returns", "Compute raw and standardized log-returns");
    add_input_options(returns_cmd, opt, false);
    returns_cmd->add_option("--density-bin-width", opt.density_bin_width,
                            "Bin width of the pooled log-density histogram");
    returns_cmd->add_option("--out", opt.out, "Output directory")->required();

    auto* corr_cmd = app.add_subcommand("corr", "Correlation matrix and coefficient stats");
    add_input_options(corr_cmd, opt);
    corr_cmd->add_option("--method", opt.method, "pearson or spearman");
    corr_cmd->add_option("--window", opt.window, "Trailing window of return rows (default: full span)");
    corr_cmd->add_option("--out", opt.out, "Output directory")->required();

    auto* spectrum_cmd = app.add_subcommand("spectrum", "Eigenvalue spectrum and bulk classification");
    add_input_options(spectrum_cmd, opt);
    spectrum_cmd->add_option("--method", opt.method, "pearson or spearman");
    spectrum_cmd->add_option("--window", opt.window,
                             "Trailing window of return rows (default: full span)");
    spectrum_cmd->add_option("--out", opt.out, "Output directory")->required();

    auto* rolling_cmd = app.add_subcommand("rolling", "Rolling mean correlation");
    add_input_options(rolling_cmd, opt);
    rolling_cmd->add_option("--method", opt.method, "pearson or spearman");
    rolling_cmd->add_option("--window", opt.window, "Window length in return rows");
    rolling_cmd->add_option("--out", opt.out, "Output directory")->required();

    auto* mode_cmd = app.add_subcommand("mode", "Market mode, volatility and co-movement");
    add_input_options(mode_cmd, opt);
    mode_cmd->add_option("--method", opt.method, "pearson or spearman");
    mode_cmd->add_option("--window", opt.window, "Rolling window in return rows");
    mode_cmd->add_option("--cov-window", opt.cov_window, "Window of the covariance series");
    mode_cmd->add_option("--norm-mean", opt.norm_mean, "Display renormalization mean");
    mode_cmd->add_option("--norm-std", opt.norm_std, "Display renormalization std");
    mode_cmd->add_option("--out", opt.out, "Output directory")->required();

    auto* normality_cmd = app.add_subcommand("normality", "Coefficient distribution diagnostics");
    add_input_options(normality_cmd, opt);
    normality_cmd->add_option("--method", opt.method, "pearson or spearman");
    normality_cmd->add_option("--window", opt.window, "Rolling moments window in return rows");
    normality_cmd->add_option("--coeff-bin-width", opt.coeff_bin_width,
                              "Bin width of coefficient histograms");
    normality_cmd->add_option("--out", opt.out, "Output directory")->required();

    auto* mp_sim_cmd = app.add_subcommand("mp-sim", "Spectra of random iid panels");
    mp_sim_cmd->add_option("--n", opt.n, "Columns (markets)");
    mp_sim_cmd->add_option("--l", opt.l, "Rows (observations), must exceed n");
    mp_sim_cmd->add_option("--seed", opt.seed, "Stream seed");
    mp_sim_cmd->add_option("--replicates", opt.replicates, "Replicate count");
    mp_sim_cmd->add_option("--eigen-bin-width", opt.eigen_bin_width,
                           "Bin width of the eigenvalue histogram");
    mp_sim_cmd->add_option("--out", opt.out, "Output directory")->required();

    auto* scan_cmd = app.add_subcommand("scan", "Most negative daily log-returns per market");
    add_input_options(scan_cmd, opt, false);
    scan_cmd->add_option("--k", opt.k, "Events per market");
    scan_cmd->add_option("--out", opt.out, "Output directory")->required();

    auto* report_cmd = app.add_subcommand("report", "Full pipeline with summary JSON");
    add_input_options(report_cmd, opt);
    report_cmd->add_option("--method", opt.method, "pearson or spearman");
    report_cmd->add_option("--window", opt.window, "Rolling window in return rows");
    report_cmd->add_option("--cov-window", opt.cov_window, "Window of the covariance series");
    report_cmd->add_option("--norm-mean", opt.norm_mean, "Display renormalization mean");
    report_cmd->add_option("--norm-std", opt.norm_std, "Display renormalization std");
    report_cmd->add_option("--k", opt.k, "Crash events per market");
    report_cmd->add_option("--out", opt.out, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 1;
    }

    try {
        if (synth->parsed()) return cmd_synth(opt);
        if (align_cmd->parsed()) return cmd_align(opt);
        if (returns_cmd->parsed()) return cmd_returns(opt);
        if (corr_cmd->parsed()) return cmd_corr(opt, *corr_cmd);
        if (spectrum_cmd->parsed()) return cmd_spectrum(opt, *spectrum_cmd);
        if (rolling_cmd->parsed()) return cmd_rolling(opt);
        if (mode_cmd->parsed()) return cmd_mode(opt);
        if (normality_cmd->parsed()) return cmd_normality(opt);
        if (mp_sim_cmd->parsed()) return cmd_mp_sim(opt);
        if (scan_cmd->parsed()) return cmd_scan(opt);
        if (report_cmd->parsed()) return cmd_report(opt);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
