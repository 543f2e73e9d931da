#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rmtcorr/corrmat.hpp"
#include "rmtcorr/grid.hpp"

namespace rmtcorr {

// Marchenko-Pastur bulk parameters for a T-by-N data matrix, q = T/N > 1.
struct MpParams {
    double q = 0.0;
    double sigma = 1.0;
    double lambda_minus = 0.0;
    double lambda_plus = 0.0;
};

[[nodiscard]] MpParams mp_bounds(double q, double sigma = 1.0);

// Bulk eigenvalue density; zero outside (lambda_minus, lambda_plus).
[[nodiscard]] double mp_density(double lambda, const MpParams& p);

struct SpectralDecomposition {
    std::vector<double> eigenvalues;  // ascending
    Grid<double> eigenvectors;        // column k pairs with eigenvalues[k]
};

// Cyclic Jacobi eigendecomposition of a symmetric matrix (row-major, n*n).
// Converges when the off-diagonal Frobenius norm falls below 1e-12 * n;
// throws NumericalError after 100 sweeps otherwise. Eigenvectors carry a
// deterministic sign: component sum positive, or first nonzero component
// positive when the sum vanishes.
[[nodiscard]] SpectralDecomposition eigh(std::span<const double> matrix, std::size_t n);
[[nodiscard]] SpectralDecomposition eigh(const CorrelationMatrix& m);

struct BulkCounts {
    std::size_t below = 0;
    std::size_t inside = 0;  // closed interval [lambda_minus, lambda_plus]
    std::size_t above = 0;
    double fraction_inside = 0.0;
};

[[nodiscard]] BulkCounts classify_bulk(std::span<const double> eigenvalues, const MpParams& p);

// Inverse participation ratio of each eigenvector, IPR_k = sum_i e_k[i]^4.
[[nodiscard]] std::vector<double> inverse_participation_ratio(const SpectralDecomposition& d);

// Participation ratio 1/IPR: the effective number of markets in a vector.
[[nodiscard]] std::vector<double> participation_ratio(const SpectralDecomposition& d);

// Share of total variance carried by the leading eigenvalue.
[[nodiscard]] double explained_fraction(const SpectralDecomposition& d);
[[nodiscard]] double explained_fraction(std::span<const double> eigenvalues);

struct RandomSpectrumSample {
    MpParams mp;                               // q = l/n, sigma = 1
    std::vector<std::vector<double>> spectra;  // one ascending spectrum per replicate
    std::vector<HistogramBin> histogram;       // pooled, density-normalized
};

// Spectra of correlation matrices of iid standard-normal panels (l rows,
// n columns, columns standardized before correlating). Replicate r draws
// from the stream seed + r, so runs are reproducible and parallelizable.
[[nodiscard]] RandomSpectrumSample sample_random_spectrum(std::size_t n,
                                                          std::size_t l,
                                                          std::uint64_t seed,
                                                          std::size_t replicates = 1,
                                                          double bin_width = 0.2);

}  // namespace rmtcorr
