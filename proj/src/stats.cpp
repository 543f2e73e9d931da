#include "rmtcorr/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rmtcorr/errors.hpp"

namespace rmtcorr::stats {

double mean(std::span<const double> x) {
    if (x.empty()) throw InputError("mean: empty sample");
    double s = 0.0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

double sample_variance(std::span<const double> x) {
    if (x.size() < 2) throw InputError("sample_variance: need at least 2 values");
    const double m = mean(x);
    double ss = 0.0;
    for (double v : x) {
        const double d = v - m;
        ss += d * d;
    }
    return ss / static_cast<double>(x.size() - 1);
}

double sample_stddev(std::span<const double> x) { return std::sqrt(sample_variance(x)); }

double central_moment(std::span<const double> x, int p) {
    if (x.empty()) throw InputError("central_moment: empty sample");
    const double m = mean(x);
    double s = 0.0;
    for (double v : x) s += std::pow(v - m, p);
    return s / static_cast<double>(x.size());
}

double skewness(std::span<const double> x) {
    const double m2 = central_moment(x, 2);
    if (m2 == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return central_moment(x, 3) / std::pow(m2, 1.5);
}

double kurtosis(std::span<const double> x) {
    const double m2 = central_moment(x, 2);
    if (m2 == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return central_moment(x, 4) / (m2 * m2);
}

double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw InputError("pearson: length mismatch");
    if (x.size() < 2) throw InputError("pearson: need at least 2 pairs");
    const double mx = mean(x);
    const double my = mean(y);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) throw InputError("pearson: zero-variance input");
    return sxy / std::sqrt(sxx * syy);
}

double sample_covariance(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw InputError("sample_covariance: length mismatch");
    if (x.size() < 2) throw InputError("sample_covariance: need at least 2 pairs");
    const double mx = mean(x);
    const double my = mean(y);
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - mx) * (y[i] - my);
    return s / static_cast<double>(x.size() - 1);
}

std::vector<double> average_ranks(std::span<const double> x) {
    const std::size_t n = x.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && x[order[j + 1]] == x[order[i]]) ++j;
        // Tied run occupies ranks i+1 .. j+1; all members get the average.
        const double r = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
        i = j + 1;
    }
    return ranks;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double inverse_normal_cdf(double p) {
    // PPND16 (Wichura, algorithm AS 241), double-precision branch set.
    if (!(p > 0.0 && p < 1.0)) throw InputError("inverse_normal_cdf: p outside (0, 1)");
    const double q = p - 0.5;
    if (std::fabs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        const double num =
            (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                  6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
                1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
              1.3314166789178437745e2) * r + 3.3871328727963666080e0);
        const double den =
            (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                  3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
                5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
              4.2313330701600911252e1) * r + 1.0);
        return q * num / den;
    }
    double r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double value;
    if (r <= 5.0) {
        r -= 1.6;
        const double num =
            (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                  2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
                3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
              4.63033784615654529590e0) * r + 1.42343711074968357734e0);
        const double den =
            (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                  1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
              2.05319162663775882187e0) * r + 1.0);
        value = num / den;
    } else {
        r -= 5.0;
        const double num =
            (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                  1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
              5.46378491116411436990e0) * r + 6.65790464350110377720e0);
        const double den =
            (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                  1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
              5.99832206555887937690e-1) * r + 1.0);
        value = num / den;
    }
    return q < 0.0 ? -value : value;
}

double chi2_df2_critical(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw InputError("chi2_df2_critical: alpha outside (0, 1)");
    return -2.0 * std::log(alpha);
}

}  // namespace rmtcorr::stats
