#include "rmtcorr/synth.hpp"

#include <cmath>

#include "rmtcorr/errors.hpp"
#include "rmtcorr/rng.hpp"

namespace rmtcorr {
namespace {

void validate(const FactorModelSpec& spec) {
    if (spec.n < 2) throw InputError("synth: need at least 2 markets");
    if (spec.rows < 3) throw InputError("synth: need at least 3 rows");
    if (!(spec.rho >= 0.0 && spec.rho < 1.0)) {
        throw InputError("synth: rho must lie in [0, 1)");
    }
    for (const auto& regime : spec.regimes) {
        if (regime.begin >= regime.end || regime.end > spec.rows) {
            throw InputError("synth: regime [" + std::to_string(regime.begin) + ", " +
                             std::to_string(regime.end) + ") does not fit " +
                             std::to_string(spec.rows) + " rows");
        }
        if (!(regime.rho >= 0.0 && regime.rho < 1.0)) {
            throw InputError("synth: regime rho must lie in [0, 1)");
        }
    }
    for (std::size_t i = 1; i < spec.regimes.size(); ++i) {
        if (spec.regimes[i].begin < spec.regimes[i - 1].end) {
            throw InputError("synth: regimes overlap");
        }
    }
}

}  // namespace

Grid<double> generate(const FactorModelSpec& spec) {
    validate(spec);
    const CounterRng rng(spec.seed);
    Grid<double> out(spec.rows, spec.n);

    std::size_t regime_idx = 0;
    for (std::size_t t = 0; t < spec.rows; ++t) {
        while (regime_idx < spec.regimes.size() && t >= spec.regimes[regime_idx].end) ++regime_idx;
        double rho = spec.rho;
        if (regime_idx < spec.regimes.size() && t >= spec.regimes[regime_idx].begin) {
            rho = spec.regimes[regime_idx].rho;
        }
        const double wf = std::sqrt(rho);
        const double we = std::sqrt(1.0 - rho);
        const std::uint64_t base = static_cast<std::uint64_t>(t) * (spec.n + 1);
        const double g = rng.normal(base);
        for (std::size_t i = 0; i < spec.n; ++i) {
            out(t, i) = wf * g + we * rng.normal(base + 1 + i);
        }
    }

    // Standardize columns: mean 0, sample std 1.
    for (std::size_t c = 0; c < spec.n; ++c) {
        double m = 0.0;
        for (std::size_t t = 0; t < spec.rows; ++t) m += out(t, c);
        m /= static_cast<double>(spec.rows);
        double ss = 0.0;
        for (std::size_t t = 0; t < spec.rows; ++t) {
            const double d = out(t, c) - m;
            ss += d * d;
        }
        const double s = std::sqrt(ss / static_cast<double>(spec.rows - 1));
        for (std::size_t t = 0; t < spec.rows; ++t) out(t, c) = (out(t, c) - m) / s;
    }
    return out;
}

}  // namespace rmtcorr
