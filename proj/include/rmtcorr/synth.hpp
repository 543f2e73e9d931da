#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rmtcorr/grid.hpp"

namespace rmtcorr {

// Rows [begin, end) share one target correlation.
struct RegimeSpec {
    std::size_t begin = 0;
    std::size_t end = 0;
    double rho = 0.0;
};

// Single-factor panel: x_ti = sqrt(rho) * g_t + sqrt(1 - rho) * eps_ti with
// g, eps iid standard normal, so every pair has population correlation rho.
// Regimes override the base rho on their row ranges.
struct FactorModelSpec {
    std::size_t n = 0;     // markets
    std::size_t rows = 0;  // return observations
    double rho = 0.0;      // base correlation, in [0, 1)
    std::vector<RegimeSpec> regimes;
    std::uint64_t seed = 0;
};

// Generates the panel and standardizes each column (mean 0, sample std 1).
// Draws come from a counter-based stream keyed by seed: row t consumes
// counters t*(n+1) .. t*(n+1)+n, factor first. Identical specs give
// identical panels.
[[nodiscard]] Grid<double> generate(const FactorModelSpec& spec);

}  // namespace rmtcorr
