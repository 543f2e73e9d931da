#pragma once

// Independent oracles for the test suite. Everything here is deliberately
// naive: O(n^2) counting, textbook recursions, bisection. The point is to
// disagree with the library whenever the library is wrong.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <random>
#include <span>
#include <vector>

namespace oracle {

// Adaptive Simpson quadrature with absolute tolerance `tol`.
inline double simpson_step(const std::function<double(double)>& f,
                           double a, double b, double fa, double fm, double fb,
                           double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return simpson_step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           simpson_step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

inline double integrate(const std::function<double(double)>& f,
                        double a, double b, double tol = 1e-9, int depth = 48) {
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_step(f, a, b, fa, fm, fb, whole, tol, depth);
}

// Average ranks by pairwise counting: rank(x_i) = #less + (#tied + 1) / 2.
inline std::vector<double> counting_ranks(std::span<const double> x) {
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        std::size_t less = 0, tied = 0;
        for (std::size_t j = 0; j < x.size(); ++j) {
            if (x[j] < x[i]) ++less;
            if (x[j] == x[i]) ++tied;
        }
        out[i] = static_cast<double>(less) + (static_cast<double>(tied) + 1.0) / 2.0;
    }
    return out;
}

// Product-moment correlation straight from the definition.
inline double pearson_direct(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) { mx += x[i]; my += y[i]; }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

// Characteristic polynomial coefficients by the Faddeev-LeVerrier recursion:
// p(lambda) = lambda^n + c[1] lambda^(n-1) + ... + c[n].
inline std::vector<double> char_poly(const std::vector<double>& a, std::size_t n) {
    std::vector<double> m(n * n, 0.0);     // M_0 = 0
    std::vector<double> c(n + 1, 0.0);
    c[0] = 1.0;
    std::vector<double> am(n * n);
    for (std::size_t k = 1; k <= n; ++k) {
        for (std::size_t i = 0; i < n; ++i) m[i * n + i] += c[k - 1];
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                double s = 0.0;
                for (std::size_t l = 0; l < n; ++l) s += a[i * n + l] * m[l * n + j];
                am[i * n + j] = s;
            }
        m = am;
        double tr = 0.0;
        for (std::size_t i = 0; i < n; ++i) tr += m[i * n + i];
        c[k] = -tr / static_cast<double>(k);
    }
    return c;  // evaluate as sum c[k] lambda^(n-k)
}

inline double eval_poly(const std::vector<double>& c, double lambda) {
    double v = 0.0;
    for (double ck : c) v = v * lambda + ck;
    return v;
}

// All real roots of the characteristic polynomial of a symmetric matrix,
// isolated by a fine sign scan over the Gershgorin interval and polished by
// bisection. Assumes simple roots.
inline std::vector<double> char_poly_roots(const std::vector<double>& a, std::size_t n) {
    const std::vector<double> c = char_poly(a, n);
    double lo = 0.0, hi = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double r = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) r += std::fabs(a[i * n + j]);
        lo = std::min(lo, a[i * n + i] - r);
        hi = std::max(hi, a[i * n + i] + r);
    }
    lo -= 1e-6;
    hi += 1e-6;
    const int kScan = 200000;
    std::vector<double> roots;
    double prev_x = lo, prev_f = eval_poly(c, lo);
    for (int s = 1; s <= kScan; ++s) {
        const double x = lo + (hi - lo) * static_cast<double>(s) / kScan;
        const double fx = eval_poly(c, x);
        if ((prev_f < 0.0 && fx > 0.0) || (prev_f > 0.0 && fx < 0.0)) {
            double xl = prev_x, xr = x, fl = prev_f;
            for (int it = 0; it < 200; ++it) {
                const double xm = 0.5 * (xl + xr);
                const double fm = eval_poly(c, xm);
                if ((fl < 0.0) == (fm < 0.0)) { xl = xm; fl = fm; }
                else xr = xm;
            }
            roots.push_back(0.5 * (xl + xr));
        } else if (fx == 0.0) {
            roots.push_back(x);
        }
        prev_x = x;
        prev_f = fx;
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

// Sylvester inertia: number of eigenvalues of the symmetric matrix strictly
// below `shift`, read off the pivot signs of the LDL^T elimination of
// (A - shift I). Retries with a jittered shift when a pivot vanishes.
inline std::size_t count_below(std::vector<double> a, std::size_t n, double shift) {
    for (int attempt = 0; attempt < 8; ++attempt) {
        std::vector<double> w = a;
        for (std::size_t i = 0; i < n; ++i) w[i * n + i] -= shift;
        std::size_t neg = 0;
        bool ok = true;
        for (std::size_t k = 0; k < n && ok; ++k) {
            const double piv = w[k * n + k];
            if (piv == 0.0 || !std::isfinite(piv)) { ok = false; break; }
            if (piv < 0.0) ++neg;
            for (std::size_t i = k + 1; i < n; ++i) {
                const double f = w[i * n + k] / piv;
                for (std::size_t j = k; j < n; ++j) w[i * n + j] -= f * w[k * n + j];
            }
        }
        if (ok) return neg;
        shift += (shift == 0.0 ? 1e-13 : std::fabs(shift) * 1e-13);
    }
    return 0;
}

// k-th smallest eigenvalue (0-based) by inertia bisection.
inline double kth_eigenvalue(const std::vector<double>& a, std::size_t n, std::size_t k) {
    double lo = 0.0, hi = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double r = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) r += std::fabs(a[i * n + j]);
        lo = std::min(lo, a[i * n + i] - r);
        hi = std::max(hi, a[i * n + i] + r);
    }
    lo -= 1.0;
    hi += 1.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (count_below(a, n, mid) <= k) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

// Random dense symmetric matrix with entries in [-1, 1].
inline std::vector<double> random_symmetric(std::mt19937_64& gen, std::size_t n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> a(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            const double v = u(gen);
            a[i * n + j] = v;
            a[j * n + i] = v;
        }
    return a;
}

}  // namespace oracle
