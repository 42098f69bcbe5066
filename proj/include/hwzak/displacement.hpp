#pragma once

#include "hwzak/errors.hpp"
#include "hwzak/grid.hpp"

namespace hwzak {

/// Integer grid steps (a, b) with q = a dq, p = b dp.
struct GridSteps {
    long long a = 0;
    long long b = 0;
};

/// Throws NonCommensurateDisplacement unless d lies on the (dq, dp) lattice.
GridSteps to_grid_steps(const GridSpec& g, const PhasePoint& d);

/*
 * D(q,p) psi: (D psi)(x) = exp(i p (x - q/2)) psi(x - q), with the shift
 * taken cyclically over the period Q. Exactly unitary; phases are reduced
 * with integer arithmetic so the discrete Heisenberg group law holds to
 * rounding.
 */
Signal displace(const Signal& s, const PhasePoint& d);
Signal displace(const Signal& s, GridSteps steps);

/// U(p) = D(0,p), multiplication by exp(i p q).
inline Signal apply_U(const Signal& s, double p) { return displace(s, PhasePoint{0.0, p}); }
/// V(q) = D(q,0), translation by q.
inline Signal apply_V(const Signal& s, double q) { return displace(s, PhasePoint{q, 0.0}); }

/// max_j |(U(p)V(q)s)_j - e^{iqp} (V(q)U(p)s)_j|
double weyl_phase_check(const Signal& s, double q, double p);

struct SnapResult {
    PhasePoint point;
    GridSteps steps;
    double shift = 0.0; ///< Euclidean distance moved, in phase-plane units.
};

/// Nearest grid-commensurate displacement; appends a "snapped" warning
/// when the point moved.
SnapResult snap_to_grid(const GridSpec& g, const PhasePoint& x, WarningSink* warnings = nullptr);

} // namespace hwzak
