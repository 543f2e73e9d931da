// End-to-end checks of the command-line tool. Each test shells out to the
// built binary, points it at a scratch directory, and inspects the files it
// leaves behind.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kCli = RMTCORR_CLI_PATH;

struct RunResult {
    int status = -1;
    std::string output;  // stdout + stderr interleaved
};

RunResult run(const std::string& args) {
    const fs::path log = fs::temp_directory_path() / "rmtcorr_cli_test_log.txt";
    const std::string cmd = kCli + " " + args + " > " + log.string() + " 2>&1";
    const int raw = std::system(cmd.c_str());
    RunResult result;
    result.status = (raw == -1) ? -1 : WEXITSTATUS(raw);
    std::ifstream in(log);
    std::ostringstream buf;
    buf << in.rdbuf();
    result.output = buf.str();
    std::error_code ec;
    fs::remove(log, ec);
    return result;
}

fs::path fresh_dir(const std::string& tag) {
    const fs::path dir = fs::temp_directory_path() / ("rmtcorr_cli_" + tag);
    std::error_code ec;
    fs::remove_all(dir, ec);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const fs::path& p, const std::string& body) {
    std::ofstream out(p, std::ios::binary);
    out << body;
}

json load_json(const fs::path& p) { return json::parse(slurp(p)); }

// Four complete markets over twelve consecutive weekdays of January 1990.
void write_price_fixture(const fs::path& dir) {
    write_file(dir / "meta.csv",
               "symbol,name,country,region,weekend,eastern\n"
               "AAA,Alpha,Atlantis,Europe,SatSun,false\n"
               "BBB,Beta,Borduria,Asia,SatSun,true\n"
               "CCC,Gamma,Carpathia,NorthAmerica,SatSun,false\n"
               "DDD,Delta,Dalmatia,Europe,SatSun,false\n");
    const double base[4] = {100.0, 50.0, 200.0, 80.0};
    const char* symbols[4] = {"AAA", "BBB", "CCC", "DDD"};
    const int days[12] = {1, 2, 3, 4, 5, 8, 9, 10, 11, 12, 15, 16};
    std::ostringstream out;
    out << "date,symbol,close\n";
    for (int c = 0; c < 4; ++c) {
        for (int r = 0; r < 12; ++r) {
            const double close = base[c] + r * (c + 1) + 0.5 * ((r * (c + 2)) % 3);
            char date[16];
            std::snprintf(date, sizeof date, "1990-01-%02d", days[r]);
            out << date << ',' << symbols[c] << ',' << close << '\n';
        }
    }
    write_file(dir / "prices.csv", out.str());
}

}  // namespace

TEST_CASE("synth writes a standardized panel and is run-to-run deterministic") {
    const fs::path a = fresh_dir("synth_a");
    const fs::path b = fresh_dir("synth_b");
    const std::string flags = "synth --n 5 --rows 60 --rho 0.3 --seed 42 --out ";
    CHECK(run(flags + a.string()).status == 0);
    CHECK(run(flags + b.string()).status == 0);

    const fs::path fa = a / "returns_standardized.csv";
    const fs::path fb = b / "returns_standardized.csv";
    REQUIRE(fs::exists(fa));
    REQUIRE(fs::exists(fb));
    const std::string body = slurp(fa);
    CHECK(body == slurp(fb));
    CHECK(body.rfind("date,SYN1,SYN2,SYN3,SYN4,SYN5\n", 0) == 0);

    // 60 data rows plus a header.
    std::size_t lines = 0;
    for (char c : body) lines += (c == '\n');
    CHECK(lines == 61);
}

TEST_CASE("synth rejects a malformed regime") {
    const fs::path dir = fresh_dir("synth_bad");
    const RunResult r =
        run("synth --n 4 --rows 50 --rho 0.2 --regime nonsense --seed 1 --out " + dir.string());
    CHECK(r.status == 1);
    CHECK(r.output.find("error:") != std::string::npos);
}

TEST_CASE("corr reports window/panel sizes when the window does not fit") {
    const fs::path src = fresh_dir("corr_src");
    REQUIRE(run("synth --n 4 --rows 40 --rho 0.2 --seed 7 --out " + src.string()).status == 0);

    const fs::path out = fresh_dir("corr_out");
    const RunResult r = run("corr --returns " + (src / "returns_standardized.csv").string() +
                            " --window 99 --out " + out.string());
    CHECK(r.status == 1);
    CHECK(r.output.find("window of 99 rows exceeds panel of 40 rows") != std::string::npos);
}

TEST_CASE("corr honors the method flag") {
    const fs::path src = fresh_dir("corr_method_src");
    REQUIRE(run("synth --n 4 --rows 80 --rho 0.4 --seed 3 --out " + src.string()).status == 0);
    const std::string input = " --returns " + (src / "returns_standardized.csv").string();

    const fs::path pdir = fresh_dir("corr_pearson");
    const fs::path sdir = fresh_dir("corr_spearman");
    REQUIRE(run("corr" + input + " --out " + pdir.string()).status == 0);
    REQUIRE(run("corr" + input + " --method spearman --out " + sdir.string()).status == 0);

    const json pstats = load_json(pdir / "correlation_stats.json");
    const json sstats = load_json(sdir / "correlation_stats.json");
    CHECK(pstats.at("method") == "pearson");
    CHECK(sstats.at("method") == "spearman");
    CHECK(pstats.at("n") == 4);
    CHECK(pstats.at("coefficients") == 6);
    // Same panel, different estimator: values should differ but stay close.
    const double pm = pstats.at("mean").get<double>();
    const double sm = sstats.at("mean").get<double>();
    CHECK(pm != sm);
    CHECK(pm == doctest::Approx(sm).epsilon(0.25));

    const RunResult bad = run("corr" + input + " --method kendall --out " + pdir.string());
    CHECK(bad.status == 1);
}

TEST_CASE("align turns raw prices into a filled panel") {
    const fs::path src = fresh_dir("align_src");
    write_price_fixture(src);
    const fs::path out = fresh_dir("align_out");
    const RunResult r = run("align --prices " + (src / "prices.csv").string() + " --meta " +
                            (src / "meta.csv").string() + " --out " + out.string());
    REQUIRE(r.status == 0);
    REQUIRE(fs::exists(out / "aligned.csv"));
    REQUIRE(fs::exists(out / "aligned_mask.csv"));

    const json info = load_json(out / "alignment.json");
    CHECK(info.at("dates") == 12);
    CHECK(info.at("markets") == 4);
    CHECK(info.at("filled_cells") == 0);
    CHECK(info.at("phased") == false);

    const std::string aligned = slurp(out / "aligned.csv");
    CHECK(aligned.rfind("date,AAA,BBB,CCC,DDD\n", 0) == 0);
    CHECK(aligned.find("1990-01-01,100,50,200,80\n") != std::string::npos);
}

TEST_CASE("report on a returns panel emits the full summary") {
    const fs::path src = fresh_dir("report_src");
    REQUIRE(run("synth --n 6 --rows 120 --rho 0.3 --seed 11 --out " + src.string()).status == 0);

    const fs::path out = fresh_dir("report_out");
    const std::string cmd = "report --returns " + (src / "returns_standardized.csv").string() +
                            " --window 30 --out " + out.string();
    REQUIRE(run(cmd).status == 0);

    for (const char* name : {"correlation.csv", "spectrum.json", "eigenvectors.csv",
                             "rolling_corr.csv", "market_mode.csv", "comovement.csv",
                             "normality.json", "summary.json"}) {
        CAPTURE(name);
        CHECK(fs::exists(out / name));
    }
    // Prices-only outputs must not appear for a returns input.
    CHECK(!fs::exists(out / "aligned.csv"));
    CHECK(!fs::exists(out / "crashes.json"));

    const json summary = load_json(out / "summary.json");
    CHECK(summary.at("schema_version") == 1);
    for (const char* key :
         {"config", "alignment", "correlation", "spectrum", "market_mode", "normality"}) {
        CAPTURE(key);
        CHECK(summary.contains(key));
    }
    CHECK(summary.at("config").at("command") == "report");
    CHECK(summary.at("alignment").at("source") == "standardized_returns");
    CHECK(summary.at("correlation").at("n") == 6);
    CHECK(summary.at("spectrum").contains("mp"));
    CHECK(summary.at("market_mode").contains("comovement_correlation"));
    CHECK(summary.at("normality").contains("jb"));
    CHECK(summary.at("normality").contains("lilliefors"));

    // Re-running the identical command reproduces the summary byte for byte.
    const fs::path out2 = fresh_dir("report_out2");
    const std::string cmd2 = "report --returns " + (src / "returns_standardized.csv").string() +
                             " --window 30 --out " + out2.string();
    REQUIRE(run(cmd2).status == 0);
    CHECK(slurp(out / "summary.json") == slurp(out2 / "summary.json"));
    CHECK(slurp(out / "spectrum.json") == slurp(out2 / "spectrum.json"));
    CHECK(slurp(out / "comovement.csv") == slurp(out2 / "comovement.csv"));
}

TEST_CASE("report on raw prices also emits alignment artifacts") {
    const fs::path src = fresh_dir("report_prices_src");
    write_price_fixture(src);
    const fs::path out = fresh_dir("report_prices_out");
    // Twelve closes give eleven returns; window 5 keeps the rolling series alive.
    const RunResult r = run("report --prices " + (src / "prices.csv").string() + " --meta " +
                            (src / "meta.csv").string() + " --window 5 --cov-window 3 --out " +
                            out.string());
    REQUIRE(r.status == 0);
    for (const char* name : {"aligned.csv", "aligned_mask.csv", "returns_raw.csv",
                             "returns_standardized.csv", "crashes.json", "summary.json"}) {
        CAPTURE(name);
        CHECK(fs::exists(out / name));
    }
    const json summary = load_json(out / "summary.json");
    CHECK(summary.at("alignment").at("markets") == 4);
    CHECK(summary.at("correlation").at("coefficients") == 6);
}

TEST_CASE("missing input file exits with a readable error") {
    const fs::path out = fresh_dir("missing_input");
    const RunResult r = run("corr --returns /nonexistent/panel.csv --out " + out.string());
    CHECK(r.status == 1);
    CHECK(r.output.find("error:") != std::string::npos);
}

TEST_CASE("mp-sim writes replicate spectra and the bound parameters") {
    const fs::path out = fresh_dir("mpsim_out");
    const RunResult r =
        run("mp-sim --n 8 --l 64 --replicates 3 --seed 5 --out " + out.string());
    REQUIRE(r.status == 0);
    REQUIRE(fs::exists(out / "spectra.csv"));

    const json info = load_json(out / "mp_sim.json");
    CHECK(info.at("n") == 8);
    CHECK(info.at("l") == 64);
    CHECK(info.at("replicates") == 3);
    CHECK(info.at("mp").contains("lambda_minus"));
    CHECK(info.at("mp").contains("lambda_plus"));
    const double q = info.at("mp").at("q").get<double>();
    CHECK(q == doctest::Approx(8.0));

    const std::string spectra = slurp(out / "spectra.csv");
    CHECK(spectra.rfind("replicate,", 0) == 0);
    std::size_t lines = 0;
    for (char c : spectra) lines += (c == '\n');
    CHECK(lines == 4);  // header + one row per replicate
}

TEST_CASE("normality emits per-period reports for a long panel") {
    const fs::path src = fresh_dir("norm_src");
    REQUIRE(run("synth --n 6 --rows 260 --rho 0.3 --seed 9 --out " + src.string()).status == 0);
    const fs::path out = fresh_dir("norm_out");
    const RunResult r = run("normality --returns " +
                            (src / "returns_standardized.csv").string() + " --window 30 --out " +
                            out.string());
    REQUIRE(r.status == 0);
    for (const char* name : {"normality.json", "normality_periods.json",
                             "coefficient_histograms.json", "rolling_skewness.csv",
                             "rolling_kurtosis.csv"}) {
        CAPTURE(name);
        CHECK(fs::exists(out / name));
    }
    const json full = load_json(out / "normality.json");
    CHECK(full.at("jb").contains("stat"));
    CHECK(full.at("jb").contains("reject"));
    CHECK(full.at("lilliefors").contains("critical"));

    const json periods = load_json(out / "normality_periods.json");
    REQUIRE(periods.is_array());
    CHECK(periods.size() >= 2);
    CHECK(periods.at(0).contains("period"));
    CHECK(periods.at(0).contains("jb"));
}
