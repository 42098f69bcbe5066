#pragma once

#include "hwzak/grid.hpp"

#include <vector>

namespace hwzak {

/*
 * Momentum band [(m - 1/2) p0, (m + 1/2) p0), lower edge included, upper
 * edge excluded, so the bands of one p0 tile the momentum axis. p0 must be
 * a whole number of momentum steps dp.
 */
struct BandSpec {
    double p0 = 0.0;
    long long m = 0;
};

/// Band expressed in centred momentum indices k' = k - N/2: lo <= k' < hi.
struct BandRange {
    long long K = 0;  ///< p0 / dp
    long long lo = 0;
    long long hi = 0;
};

/// Throws BandOutOfRange if p0 is not a multiple of dp or the band leaves the grid.
BandRange band_range(const GridSpec& g, const BandSpec& b);

/*
 * Samples psi(q' + n q0) of one signal, n = i - M/2 for i = 0..M-1, i.e. one
 * sample per Zak cell with n = 0 in the cell containing the origin. Values
 * are wavefunction values, not measure-weighted.
 */
struct SampleSet {
    GridSpec grid;
    double q_offset = 0.0;
    long long offset_steps = 0; ///< q_offset / dq
    CVec values;

    long long n(std::size_t i) const { return static_cast<long long>(i) - static_cast<long long>(grid.M() / 2); }
    double q(std::size_t i) const { return q_offset + static_cast<double>(n(i)) * grid.q0(); }
};

/*
 * |LHS - RHS| of the Poisson summation identity
 *   q0 sum_n e^{-i n q0 p} psi(q + n q0) = sqrt(2 pi) e^{iqp} sum_n e^{2 pi i n q / q0} phi(p + 2 pi n / q0)
 * with both sums over the full periodic grid. (q, p) must be a grid point of
 * the closed rectangle [-q0/2, q0/2] x [-pi/q0, pi/q0].
 */
double poisson_residual(const Signal& s, double q, double p);

/// Zero the spectrum outside the band.
Signal bandlimit_project(const Signal& s, const BandSpec& b);

/// Throws NonCommensurateOffset off the grid, OutOfRectangle outside [-q0/2, q0/2].
SampleSet extract_samples(const Signal& s, double q_offset);

enum class AliasPolicy { Refuse, Allow };

/*
 * Sinc-kernel reconstruction
 *   psi(q) = q0/pi sum_n sin(p0 (q - q' - n q0) / 2) / (q - q' - n q0) psi(q' + n q0),
 * with the kernel summed over all period images in closed form. The band must
 * be centred (m = 0) and the target grid must share the period Q. With
 * AliasPolicy::Allow an over-wide band is evaluated anyway.
 */
Signal reconstruct_sinc(const SampleSet& samples, const BandSpec& b, const GridSpec& target,
                        AliasPolicy policy = AliasPolicy::Refuse);

/*
 * Bandwidth-free reconstruction
 *   psi(q) = q0/pi sin(pi (q - q') / q0) sum_n (-1)^n psi(q' + n q0) / (q - q' - n q0),
 * periodised likewise. Returns the sample value itself at sample points.
 * Only meaningful for signals band-limited strictly below 2 pi / q0.
 */
Signal reconstruct_cauchy(const SampleSet& samples, const GridSpec& target);

/// Max over m of the sample consistency residual, normalised by max |sample|.
/// All off-diagonal coefficients vanish exactly when p0 = 2 pi / q0.
double consistency_residual(const SampleSet& samples, const BandSpec& b);

/// |sum_n (-1)^n P(n q0) psi_n| / sum_n |P(n q0) psi_n|, P given by ascending
/// coefficients, degree at most 4.
double dependence_residual(const SampleSet& samples, const std::vector<double>& poly_coeffs);

struct GaussianComponent {
    double center = 0.0;
    double width = 1.0;
    double momentum = 0.0;
    cplx amplitude{1.0, 0.0};
};

/// Normalised sum of Gaussians amplitude * exp(-(q - center)^2 / (2 width^2) + i momentum (q - center)),
/// distances taken as minimal images on the period.
Signal gaussian_mixture(const GridSpec& g, const std::vector<GaussianComponent>& parts);

/// Projection of a Gaussian mixture into the band, renormalised.
Signal bandlimited_mixture(const GridSpec& g, const std::vector<GaussianComponent>& parts, const BandSpec& b);

} // namespace hwzak
