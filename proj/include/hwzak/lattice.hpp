#pragma once

#include "hwzak/coherent.hpp"

#include <Eigen/Dense>

#include <utility>
#include <vector>

namespace hwzak {

/// Lattice (n q0, m p0) with n in [n_min, n_max], m in [m_min, m_max].
struct LatticeSpec {
    double q0 = 0.0;
    double p0 = 0.0;
    long long n_min = 0, n_max = 0;
    long long m_min = 0, m_max = 0;

    std::size_t n_count() const { return static_cast<std::size_t>(n_max - n_min + 1); }
    std::size_t m_count() const { return static_cast<std::size_t>(m_max - m_min + 1); }
};

/// States D(n q0, m p0) psi0, stored n-major.
struct GCSLattice {
    LatticeSpec spec;
    FiducialVector fiducial;
    GridSteps step; ///< grid steps of (q0, p0)
    std::vector<Signal> states;

    const Signal& state(long long n, long long m) const;
};

enum class LatticeCheck { Enforce, Skip };

/*
 * Throws InvalidLattice when q0 p0 > 2 pi (unless check is Skip), when a range
 * is empty, or when q0, p0 are not whole grid steps.
 */
GCSLattice build_lattice(const FiducialVector& f, const LatticeSpec& spec, LatticeCheck check = LatticeCheck::Enforce);

/// (min |chi0| > 1e-6 max |chi0|, min |chi0|)
std::pair<bool, double> totality_test(const FiducialVector& f);

/// (max | |chi0| sqrt(2 pi) - 1 | < 1e-8, that deviation)
std::pair<bool, double> orthonormality_test(const FiducialVector& f);

struct GramReport {
    Eigen::MatrixXcd gram;          ///< <state_a, state_b>, a and b n-major
    Eigen::VectorXd singular_values; ///< of the synthesis map, descending
    std::size_t numerical_rank = 0;  ///< count above 1e-8 sigma_max
    double frame_lower = 0.0;        ///< A = smallest retained sigma^2
    double frame_upper = 0.0;        ///< B = sigma_max^2
    double condition = 0.0;          ///< B / A
    /// Set for lattices finer than von Neumann, where rank evidence has no
    /// theorem behind it.
    bool exploratory = false;
};

GramReport gram_analysis(const GCSLattice& lat);

/// Coefficients <state_{nm}, P_m psi>, indexed (n - n_min, m - m_min). Band m has width p0.
Eigen::MatrixXcd lattice_inner_products(const GCSLattice& lat, const Signal& psi);

struct BandSolve {
    long long m = 0;
    double condition = 0.0;
    std::size_t rank = 0;
    bool ill_conditioned = false;
};

struct ProjectedReconstruction {
    Signal signal;
    std::vector<BandSolve> bands;
    bool ill_conditioned = false; ///< any band above condition 1e10; the result is partial
};

/*
 * Rebuilds psi band by band from <state_{nm}, P_m psi>: for each m a truncated
 * SVD (1e-8 sigma_max) least-squares solve for the spectrum of P_m psi on
 * band m, then the band pieces are summed.
 */
ProjectedReconstruction projected_reconstruct(const GCSLattice& lat, const Eigen::MatrixXcd& inner_products,
                                              WarningSink* warnings = nullptr);

struct STEquivalenceReport {
    double relative_error = 0.0;
    double condition = 0.0; ///< max |phi0| / min |phi0| over the band
    bool ill_conditioned = false;
};

/*
 * Recovers s in the centred band of width p0 from the single row
 * <D(n q0, 0) psi0, s>, n over all cells: the row samples the band-limited
 * function with spectrum conj(phi0) phi_s, which is rebuilt by sinc
 * reconstruction and then divided by conj(phi0) on the band.
 */
STEquivalenceReport st_equivalence_check(const FiducialVector& f, const Signal& s, double p0);

} // namespace hwzak
