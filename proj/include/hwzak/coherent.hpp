#pragma once

#include "hwzak/errors.hpp"
#include "hwzak/grid.hpp"
#include "hwzak/sampling.hpp"
#include "hwzak/zak.hpp"

#include <optional>
#include <string>

namespace hwzak {

/*
 * Standard coherent state |z)) = D(q,p)|0)):
 *   psi(x) = pi^{-1/4} exp(-i q p / 2 + i p x - (x - q)^2 / 2),
 * with x - q taken as the minimal image on the period. Appends a
 * "window_too_small" warning when the Gaussian tail at distance Q/2 exceeds 1e-8.
 */
Signal standard_cs(const GridSpec& g, double q, double p, WarningSink* warnings = nullptr);

enum class SmoothingKind { S1, S2, Fiducial };

/*
 * Diagonal smoothing operators: S1 = exp(-q^2/2) in position, S2 = exp(-p^2/2)
 * in momentum, S = phi0(p) in momentum for a fiducial spectrum phi0.
 */
struct Smoothing {
    SmoothingKind kind = SmoothingKind::S2;
    CVec phi0;                          ///< phi0(p_k) for Fiducial, wavefunction values
    std::optional<BandSpec> check_band; ///< restrict the nonvanishing check to this band

    static Smoothing S1() { return {SmoothingKind::S1, {}, std::nullopt}; }
    static Smoothing S2() { return {SmoothingKind::S2, {}, std::nullopt}; }
    static Smoothing of(const MomentumSignal& phi0, std::optional<BandSpec> band = std::nullopt);
};

/// Throws NonvanishingViolated when min |phi0| < 1e-13 over the whole grid
/// (or over check_band when set).
Signal smoothing_apply(const Signal& s, const Smoothing& op);

/// Normalised fiducial with cached momentum form and Angular Zak array.
struct FiducialVector {
    std::string name;
    Signal signal;
    MomentumSignal phi;
    ZakArray chi;

    /// Normalises s; throws Error on a zero signal.
    static FiducialVector from_signal(Signal s, std::string name);
};

FiducialVector fiducial_gaussian(const GridSpec& g);
/// Exact discrete comb: 1/sqrt(M) at the origin of every cell. Fixed by U0 and V0.
FiducialVector fiducial_comb(const GridSpec& g);
/// Comb of Gaussians of width eps, exactly q0-periodic.
FiducialVector fiducial_smoothed_comb(const GridSpec& g, double eps);
/// phi0(p) = sech(p) / sqrt(2).
FiducialVector fiducial_sech(const GridSpec& g);
/// phi0(p) = cos^2(pi p / w) on |p| < w/2, zero elsewhere; w = width_fraction * 2 pi / q0.
FiducialVector fiducial_bandlimited(const GridSpec& g, double width_fraction = 0.75);
/// chi0 = exp(i theta(q,p)) / sqrt(2 pi) for a smooth phase theta scaled by `amplitude`.
FiducialVector fiducial_pure_phase(const GridSpec& g, double amplitude = 1.0);
/// phi0(p) = (p - p_star) exp(-p^2/2), p_star snapped to the momentum grid.
FiducialVector fiducial_inband_zero(const GridSpec& g, double p_star);

} // namespace hwzak
