#pragma once

#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace hwzak {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/*
 * Finite periodic discretisation of the line.
 *
 * N = L*M samples with spacing dq; one Zak cell holds L samples (length q0),
 * the period Q holds M cells. Both L and M are even so the centred index
 * conventions below place coordinate 0 exactly on a sample:
 *
 *   q_j = (j - N/2) dq,   p_k = (k - N/2) dp,   dp = 2 pi / Q.
 */
class GridSpec {
public:
    /// Grid from cell geometry: L samples per cell, M cells, cell length q0.
    static GridSpec from_cells(std::size_t L, std::size_t M, double q0);
    /// Grid from total sample count, samples per cell and spacing.
    static GridSpec from_spacing(std::size_t N, std::size_t L, double dq);

    std::size_t N() const { return N_; }
    std::size_t L() const { return L_; }
    std::size_t M() const { return M_; }
    double dq() const { return dq_; }
    double q0() const { return q0_; }
    double Q() const { return Q_; }
    double dp() const { return dp_; }
    /// Momentum period of one Zak cell, 2 pi / q0 (= M dp).
    double p_cell() const { return p_cell_; }

    double q(std::size_t j) const { return (static_cast<double>(j) - static_cast<double>(N_ / 2)) * dq_; }
    double p(std::size_t k) const { return (static_cast<double>(k) - static_cast<double>(N_ / 2)) * dp_; }

    /// Centred position index (j - N/2) reduced to an array index.
    std::size_t wrap(long long centred) const;

    bool same_as(const GridSpec& other, double rel_tol = 1e-12) const;

private:
    GridSpec(std::size_t N, std::size_t L, std::size_t M, double dq);

    std::size_t N_ = 0;
    std::size_t L_ = 0;
    std::size_t M_ = 0;
    double dq_ = 0.0;
    double q0_ = 0.0;
    double Q_ = 0.0;
    double dp_ = 0.0;
    double p_cell_ = 0.0;
};

/// Discrete inner product <a|b> (conjugate-linear in a).
cplx inner(std::span<const cplx> a, std::span<const cplx> b);
double norm2(std::span<const cplx> a);
double norm(std::span<const cplx> a);
/// max_j |a_j - b_j|
double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b);

/*
 * Position-space state. values[j] = psi(q_j) * sqrt(dq), so the plain l2
 * norm of `values` equals the continuum L2 norm of psi.
 */
struct Signal {
    GridSpec grid;
    CVec values;

    Signal(GridSpec g, CVec v);
    static Signal zeros(const GridSpec& g);
    /// Build from wavefunction samples psi(q_j).
    static Signal from_wavefunction(const GridSpec& g, std::span<const cplx> psi);

    /// psi(q_j), undoing the sqrt(dq) embedding.
    cplx wavefunction(std::size_t j) const;
    CVec wavefunction() const;
    double norm() const { return hwzak::norm(values); }
};

/// Momentum-space state; values[k] = phi(p_k) * sqrt(dp).
struct MomentumSignal {
    GridSpec grid;
    CVec values;

    MomentumSignal(GridSpec g, CVec v);
    static MomentumSignal from_wavefunction(const GridSpec& g, std::span<const cplx> phi);

    cplx wavefunction(std::size_t k) const;
    CVec wavefunction() const;
    double norm() const { return hwzak::norm(values); }
};

/// Displacement label (q, p) in the phase plane.
struct PhasePoint {
    double q = 0.0;
    double p = 0.0;
};

} // namespace hwzak
