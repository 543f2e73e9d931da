#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rmtcorr/errors.hpp"
#include "rmtcorr/ingest.hpp"

using namespace rmtcorr;

namespace {

std::vector<MarketMeta> meta_from(const std::string& body) {
    std::istringstream in("symbol,name,country,region,weekend,eastern\n" + body);
    return parse_metadata(in);
}

PricePanel prices_from(const std::string& body, const std::vector<MarketMeta>& meta) {
    std::istringstream in("date,symbol,close\n" + body);
    return parse_prices(in, meta);
}

const std::string kTwoMarkets =
    "AAA,Alpha,Atlantis,Europe,SatSun,false\n"
    "BBB,Beta,Borduria,Asia,SatSun,true\n";

}  // namespace

TEST_CASE("metadata parses fields and flags") {
    const auto meta = meta_from(
        "SPX,S&P 500,United States,NorthAmerica,SatSun,false\n"
        "TASI,Tadawul,Saudi Arabia,Asia,FriSat,true\n");
    REQUIRE(meta.size() == 2);
    CHECK(meta[0].symbol == "SPX");
    CHECK(meta[0].region == Region::NorthAmerica);
    CHECK(meta[0].weekend == WeekendConvention::SatSun);
    CHECK_FALSE(meta[0].eastern);
    CHECK(meta[1].weekend == WeekendConvention::FriSat);
    CHECK(meta[1].eastern);
}

TEST_CASE("metadata rejects malformed input with line numbers") {
    CHECK_THROWS_WITH_AS(meta_from("X,x,c,Europe,SatSun,false\nX,y,c,Asia,SatSun,false\n"),
                         doctest::Contains("line 3"), InputError);
    CHECK_THROWS_WITH_AS(meta_from("X,x,c,Atlantis,SatSun,false\n"),
                         doctest::Contains("unknown region"), InputError);
    CHECK_THROWS_WITH_AS(meta_from("X,x,c,Europe,SunMon,false\n"),
                         doctest::Contains("weekend"), InputError);
    // eastern outside Eurasia/Asia/Oceania is refused by default
    CHECK_THROWS_AS(meta_from("X,x,c,Europe,SatSun,true\n"), InputError);
    std::istringstream relaxed("symbol,name,country,region,weekend,eastern\nX,x,c,Europe,SatSun,true\n");
    CHECK(parse_metadata(relaxed, false)[0].eastern);
}

TEST_CASE("prices parse in any order and sort per series") {
    const auto meta = meta_from(kTwoMarkets);
    const auto panel = prices_from(
        "1986-01-08,AAA,102.5\n"
        "1986-01-06,AAA,100\n"
        "1986-01-07,BBB,55\n"
        "1986-01-07,AAA,101\n",
        meta);
    REQUIRE(panel.markets.size() == 2);
    const auto& aaa = panel.markets[0].observations;
    REQUIRE(aaa.size() == 3);
    CHECK(aaa[0].date.to_string() == "1986-01-06");
    CHECK(aaa[1].date.to_string() == "1986-01-07");
    CHECK(aaa[2].close == 102.5);
}

TEST_CASE("price errors carry the offending line numbers") {
    const auto meta = meta_from(kTwoMarkets);
    CHECK_THROWS_WITH_AS(prices_from("1986-01-06,ZZZ,1\n", meta),
                         doctest::Contains("not in metadata"), InputError);
    CHECK_THROWS_WITH_AS(prices_from("1986-01-06,AAA,0\n", meta),
                         doctest::Contains("non-positive"), InputError);
    CHECK_THROWS_WITH_AS(prices_from("1986-01-06,AAA,-3\n", meta),
                         doctest::Contains("line 2"), InputError);
    CHECK_THROWS_WITH_AS(prices_from("1986-01-06,AAA,abc\n", meta),
                         doctest::Contains("non-numeric"), InputError);
    // duplicate (symbol, date) names both rows
    const std::string dup = "1986-01-06,AAA,1\n1986-01-07,AAA,2\n1986-01-06,AAA,3\n";
    CHECK_THROWS_WITH_AS(prices_from(dup, meta), doctest::Contains("lines 2 and 4"), InputError);
}

TEST_CASE("weekend shift relabels Sundays of FriSat venues") {
    const auto meta = meta_from(
        "AAA,Alpha,Atlantis,Europe,SatSun,false\n"
        "FFF,Fri,Farland,Asia,FriSat,false\n");
    // 1986-01-05 is a Sunday, 1986-01-06 the following Monday
    const auto panel = prices_from(
        "1986-01-05,FFF,10\n"
        "1986-01-07,FFF,11\n"
        "1986-01-05,AAA,20\n",
        meta);
    std::vector<std::string> warnings;
    const auto shifted = shift_weekend(panel, &warnings);
    CHECK(warnings.empty());
    const auto& fff = shifted.markets[1].observations;
    REQUIRE(fff.size() == 2);
    CHECK(fff[0].date.to_string() == "1986-01-06");
    CHECK(fff[0].close == 10);
    // SatSun venues are untouched even on Sunday
    CHECK(shifted.markets[0].observations[0].date.to_string() == "1986-01-05");
}

TEST_CASE("weekend shift collision keeps the Monday observation") {
    const auto meta = meta_from("FFF,Fri,Farland,Asia,FriSat,false\n");
    const auto panel = prices_from(
        "1986-01-05,FFF,10\n"
        "1986-01-06,FFF,12\n",
        meta);
    std::vector<std::string> warnings;
    const auto shifted = shift_weekend(panel, &warnings);
    REQUIRE(shifted.markets[0].observations.size() == 1);
    CHECK(shifted.markets[0].observations[0].close == 12);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("FFF") != std::string::npos);
}

TEST_CASE("align drops dates over the missing threshold and fills the rest") {
    const auto meta = meta_from(
        "AAA,a,c,Europe,SatSun,false\n"
        "BBB,b,c,Europe,SatSun,false\n"
        "CCC,c,c,Europe,SatSun,false\n");
    // Jan 7: only AAA has data, 2/3 missing, dropped.
    // Jan 8: BBB missing, 1/3 missing, still over 0.30, dropped.
    const auto panel = prices_from(
        "1986-01-06,AAA,1\n1986-01-06,BBB,2\n1986-01-06,CCC,3\n"
        "1986-01-07,AAA,1.5\n"
        "1986-01-08,AAA,2\n1986-01-08,CCC,3.5\n"
        "1986-01-09,AAA,2\n1986-01-09,BBB,2.5\n1986-01-09,CCC,4\n",
        meta);
    const auto aligned = align(panel, 0.30);
    REQUIRE(aligned.dates.size() == 2);
    CHECK(aligned.dates[0].to_string() == "1986-01-06");
    CHECK(aligned.dates[1].to_string() == "1986-01-09");
    REQUIRE(aligned.dropped_dates.size() == 2);
    CHECK(aligned.dropped_dates[0].to_string() == "1986-01-07");

    // with a looser threshold Jan 8 stays and BBB forward-fills from Jan 6
    const auto loose = align(panel, 0.40);
    REQUIRE(loose.dates.size() == 3);
    CHECK(loose.values(1, 1) == 2.0);
    CHECK(loose.fill_mask(1, 1) == 1);
    CHECK(loose.fill_mask(1, 0) == 0);
}

TEST_CASE("align threshold is strict") {
    const auto meta = meta_from(
        "AAA,a,c,Europe,SatSun,false\n"
        "BBB,b,c,Europe,SatSun,false\n");
    const auto panel = prices_from(
        "1986-01-06,AAA,1\n1986-01-06,BBB,2\n"
        "1986-01-07,AAA,1.5\n",
        meta);
    // missing fraction exactly 0.5 survives a 0.5 threshold
    const auto aligned = align(panel, 0.5);
    CHECK(aligned.dates.size() == 2);
    CHECK(align(panel, 0.49).dates.size() == 1);
}

TEST_CASE("cells before the first observation are back-filled and flagged") {
    const auto meta = meta_from(
        "AAA,a,c,Europe,SatSun,false\n"
        "BBB,b,c,Europe,SatSun,false\n"
        "CCC,c,c,Europe,SatSun,false\n");
    const auto panel = prices_from(
        "1986-01-06,AAA,1\n1986-01-06,BBB,2\n"
        "1986-01-07,AAA,1.5\n1986-01-07,BBB,2.5\n1986-01-07,CCC,7\n"
        "1986-01-08,AAA,2\n1986-01-08,BBB,3\n1986-01-08,CCC,8\n",
        meta);
    const auto aligned = align(panel, 0.34);
    REQUIRE(aligned.dates.size() == 3);
    CHECK(aligned.values(0, 2) == 7.0);  // taken from the first later close
    CHECK(aligned.fill_mask(0, 2) == 1);
    CHECK(aligned.fill_mask(1, 2) == 0);
}

TEST_CASE("align validates its inputs") {
    const auto meta = meta_from(kTwoMarkets);
    const auto panel = prices_from("1986-01-06,AAA,1\n1986-01-06,BBB,2\n", meta);
    CHECK_THROWS_AS((void)align(panel, 0.0), InputError);
    CHECK_THROWS_AS((void)align(panel, 1.0), InputError);
    CHECK_THROWS_AS((void)align(PricePanel{}), InputError);
}

TEST_CASE("phase east advances eastern columns one row") {
    const auto meta = meta_from(kTwoMarkets);  // BBB is eastern
    const auto panel = prices_from(
        "1986-01-06,AAA,1\n1986-01-06,BBB,10\n"
        "1986-01-07,AAA,2\n1986-01-07,BBB,20\n"
        "1986-01-08,AAA,3\n1986-01-08,BBB,30\n",
        meta);
    const auto aligned = align(panel, 0.30);
    const auto phased = phase_east(aligned);
    REQUIRE(phased.dates.size() == 2);
    CHECK(phased.values(0, 0) == 1.0);   // western column unchanged
    CHECK(phased.values(0, 1) == 20.0);  // eastern column from the next day
    CHECK(phased.values(1, 1) == 30.0);
    CHECK(phased.phased);
    CHECK_THROWS_WITH_AS((void)phase_east(phased), doctest::Contains("already phased"),
                         InputError);
}

TEST_CASE("alignment properties hold on randomized calendars") {
    std::mt19937_64 gen(99);
    std::uniform_int_distribution<int> n_markets(2, 6);
    std::uniform_int_distribution<int> n_days(4, 25);
    std::uniform_real_distribution<double> px(1.0, 100.0);
    std::uniform_real_distribution<double> miss(0.0, 1.0);

    for (int rep = 0; rep < 60; ++rep) {
        const int m = n_markets(gen);
        const int days = n_days(gen);
        std::vector<MarketMeta> meta(m);
        PricePanel panel;
        for (int c = 0; c < m; ++c) {
            meta[c].symbol = "M" + std::to_string(c);
            meta[c].region = Region::Europe;
            panel.markets.push_back({meta[c], {}});
        }
        const Date base = *Date::parse("1990-01-01");
        std::vector<std::vector<bool>> present(m, std::vector<bool>(days, false));
        for (int c = 0; c < m; ++c) {
            bool any = false;
            for (int d = 0; d < days; ++d) {
                if (miss(gen) < 0.75) {
                    present[c][d] = true;
                    any = true;
                    panel.markets[c].observations.push_back({base.add_days(d), px(gen)});
                }
            }
            if (!any) {  // every market needs at least one close
                present[c][0] = true;
                panel.markets[c].observations.insert(panel.markets[c].observations.begin(),
                                                     {base, px(gen)});
            }
        }

        AlignedPanel aligned;
        try {
            aligned = align(panel, 0.30);
        } catch (const InputError&) {
            continue;  // every date can exceed the threshold
        }

        // the retention rule, checked date by date
        for (int d = 0; d < days; ++d) {
            int have = 0, total = 0;
            bool in_union = false;
            for (int c = 0; c < m; ++c) {
                if (present[c][d]) { ++have; in_union = true; }
            }
            total = m;
            if (!in_union) continue;
            const double missing = 1.0 - static_cast<double>(have) / total;
            const Date date = base.add_days(d);
            const bool kept =
                std::find(aligned.dates.begin(), aligned.dates.end(), date) != aligned.dates.end();
            CHECK(kept == (missing <= 0.30));
        }

        // filled cells reproduce the nearest observation
        for (std::size_t r = 0; r < aligned.dates.size(); ++r) {
            for (int c = 0; c < m; ++c) {
                const int d = static_cast<int>(aligned.dates[r].serial() - base.serial());
                if (present[c][d]) {
                    CHECK(aligned.fill_mask(r, c) == 0);
                } else {
                    CHECK(aligned.fill_mask(r, c) == 1);
                }
            }
        }

        // re-aligning the filled panel is the identity on dates and values
        const auto again = align(to_price_panel(aligned), 0.30);
        CHECK(again.dates == aligned.dates);
        CHECK(again.values == aligned.values);
    }
}
