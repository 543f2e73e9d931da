#include "rmtcorr/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "rmtcorr/errors.hpp"
#include "rmtcorr/rng.hpp"

namespace rmtcorr {
namespace {

double offdiag_norm(const std::vector<double>& a, std::size_t n) {
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = a[i * n + j];
            ss += 2.0 * v * v;
        }
    }
    return std::sqrt(ss);
}

// Deterministic eigenvector orientation: component sum positive; when the
// sum is indistinguishable from zero, the first nonzero component decides.
void fix_sign(Grid<double>& vectors, std::size_t k) {
    const std::size_t n = vectors.rows();
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += vectors(i, k);
    bool flip = false;
    if (std::fabs(sum) > 1e-12) {
        flip = sum < 0.0;
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            if (vectors(i, k) != 0.0) {
                flip = vectors(i, k) < 0.0;
                break;
            }
        }
    }
    if (flip) {
        for (std::size_t i = 0; i < n; ++i) vectors(i, k) = -vectors(i, k);
    }
}

}  // namespace

MpParams mp_bounds(double q, double sigma) {
    if (!(q > 1.0)) {
        std::ostringstream os;
        os << "mp_bounds: q must exceed 1, got " << q;
        throw InputError(os.str());
    }
    if (!(sigma > 0.0)) throw InputError("mp_bounds: sigma must be positive");
    MpParams p;
    p.q = q;
    p.sigma = sigma;
    const double inv = 1.0 / q;
    const double root = 2.0 * std::sqrt(inv);
    p.lambda_minus = sigma * sigma * (1.0 + inv - root);
    p.lambda_plus = sigma * sigma * (1.0 + inv + root);
    return p;
}

double mp_density(double lambda, const MpParams& p) {
    if (lambda <= p.lambda_minus || lambda >= p.lambda_plus) return 0.0;
    const double s2 = p.sigma * p.sigma;
    return p.q / (2.0 * M_PI * s2) *
           std::sqrt((p.lambda_plus - lambda) * (lambda - p.lambda_minus)) / lambda;
}

SpectralDecomposition eigh(std::span<const double> matrix, std::size_t n) {
    if (n == 0) throw InputError("eigh: empty matrix");
    if (matrix.size() != n * n) throw InputError("eigh: matrix size does not match n");
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (matrix[i * n + j] != matrix[j * n + i]) {
                throw InputError("eigh: matrix is not symmetric at (" + std::to_string(i) + ", " +
                                 std::to_string(j) + ")");
            }
        }
    }

    std::vector<double> a(matrix.begin(), matrix.end());
    Grid<double> v(n, n);
    for (std::size_t i = 0; i < n; ++i) v(i, i) = 1.0;

    const double tol = 1e-12 * static_cast<double>(n);
    constexpr int kMaxSweeps = 100;
    double off = offdiag_norm(a, n);
    int sweep = 0;
    while (off > tol && sweep < kMaxSweeps) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a[p * n + q];
                if (apq == 0.0) continue;
                const double app = a[p * n + p];
                const double aqq = a[q * n + q];
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const double akp = a[k * n + p];
                    const double akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[p * n + k] = a[k * n + p];
                    a[k * n + q] = s * akp + c * akq;
                    a[q * n + k] = a[k * n + q];
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
        off = offdiag_norm(a, n);
        ++sweep;
    }
    if (off > tol) {
        std::ostringstream os;
        os << "eigh: Jacobi iteration did not converge in " << kMaxSweeps
           << " sweeps; off-diagonal norm " << off;
        throw NumericalError(os.str());
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a[x * n + x] < a[y * n + y]; });

    SpectralDecomposition out;
    out.eigenvalues.resize(n);
    out.eigenvectors = Grid<double>(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = a[order[k] * n + order[k]];
        for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
        fix_sign(out.eigenvectors, k);
    }
    return out;
}

SpectralDecomposition eigh(const CorrelationMatrix& m) { return eigh(m.entries, m.n); }

BulkCounts classify_bulk(std::span<const double> eigenvalues, const MpParams& p) {
    if (eigenvalues.empty()) throw InputError("classify_bulk: empty spectrum");
    BulkCounts out;
    for (double lambda : eigenvalues) {
        if (lambda < p.lambda_minus) {
            ++out.below;
        } else if (lambda > p.lambda_plus) {
            ++out.above;
        } else {
            ++out.inside;
        }
    }
    out.fraction_inside = static_cast<double>(out.inside) / static_cast<double>(eigenvalues.size());
    return out;
}

std::vector<double> inverse_participation_ratio(const SpectralDecomposition& d) {
    const std::size_t n = d.eigenvalues.size();
    std::vector<double> out(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double e = d.eigenvectors(i, k);
            s += e * e * e * e;
        }
        out[k] = s;
    }
    return out;
}

std::vector<double> participation_ratio(const SpectralDecomposition& d) {
    std::vector<double> out = inverse_participation_ratio(d);
    for (double& v : out) v = 1.0 / v;
    return out;
}

double explained_fraction(std::span<const double> eigenvalues) {
    if (eigenvalues.empty()) throw InputError("explained_fraction: empty spectrum");
    double total = 0.0;
    double max = eigenvalues[0];
    for (double v : eigenvalues) {
        total += v;
        max = std::max(max, v);
    }
    if (total <= 0.0) throw InputError("explained_fraction: non-positive eigenvalue sum");
    return max / total;
}

double explained_fraction(const SpectralDecomposition& d) {
    return explained_fraction(std::span<const double>(d.eigenvalues));
}

RandomSpectrumSample sample_random_spectrum(std::size_t n,
                                            std::size_t l,
                                            std::uint64_t seed,
                                            std::size_t replicates,
                                            double bin_width) {
    if (n < 2) throw InputError("sample_random_spectrum: n must be at least 2");
    if (l <= n) throw InputError("sample_random_spectrum: need l > n for q > 1");
    if (replicates == 0) throw InputError("sample_random_spectrum: need at least 1 replicate");
    if (!(bin_width > 0.0)) throw InputError("sample_random_spectrum: bin width must be positive");

    RandomSpectrumSample out;
    out.mp = mp_bounds(static_cast<double>(l) / static_cast<double>(n));
    out.spectra.reserve(replicates);

    std::vector<std::vector<double>> cols(n, std::vector<double>(l));
    for (std::size_t rep = 0; rep < replicates; ++rep) {
        const CounterRng rng(seed + rep);
        for (std::size_t c = 0; c < n; ++c) {
            for (std::size_t r = 0; r < l; ++r) {
                cols[c][r] = rng.normal(static_cast<std::uint64_t>(r) * n + c);
            }
        }
        // Standardize, then correlate: C = X^T X / (l - 1).
        for (auto& col : cols) {
            double m = 0.0;
            for (double v : col) m += v;
            m /= static_cast<double>(l);
            double ss = 0.0;
            for (double& v : col) {
                v -= m;
                ss += v * v;
            }
            const double s = std::sqrt(ss / static_cast<double>(l - 1));
            for (double& v : col) v /= s;
        }
        std::vector<double> c(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            c[i * n + i] = 1.0;
            for (std::size_t j = i + 1; j < n; ++j) {
                double dot = 0.0;
                for (std::size_t r = 0; r < l; ++r) dot += cols[i][r] * cols[j][r];
                c[i * n + j] = dot / static_cast<double>(l - 1);
                c[j * n + i] = c[i * n + j];
            }
        }
        out.spectra.push_back(eigh(c, n).eigenvalues);
    }

    std::map<long long, std::size_t> counts;
    std::size_t total = 0;
    for (const auto& spectrum : out.spectra) {
        for (double v : spectrum) {
            ++counts[static_cast<long long>(std::floor(v / bin_width))];
            ++total;
        }
    }
    for (const auto& [k, count] : counts) {
        out.histogram.push_back({(static_cast<double>(k) + 0.5) * bin_width,
                                 static_cast<double>(count) /
                                     (static_cast<double>(total) * bin_width),
                                 count});
    }
    return out;
}

}  // namespace rmtcorr
