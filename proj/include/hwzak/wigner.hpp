#pragma once

#include "hwzak/grid.hpp"

#include <vector>

namespace hwzak {

/*
 * Wigner distribution W(q,p) = 1/(2 pi) int dy psi(q - y/2) psi*(q + y/2) e^{iyp}
 * on the doubled 2N x 2N torus: q_a = (a - N) dq / 2, p_b = (b - N) dp / 2.
 * The half steps host the half-cell lattice points. Each axis carries one
 * ghost copy: W(a + N, b) = (-1)^(b - N) W(a, b) and likewise in b, so only the
 * central quarter |q| < Q/4, |p| < pi/(2 dq) is a faithful picture.
 */
struct WignerArray {
    GridSpec grid;
    std::vector<double> values; ///< row-major in a
    double imag_residue = 0.0;  ///< max |Im W| before discarding it

    std::size_t size() const { return 2 * grid.N(); }
    double at(std::size_t a, std::size_t b) const { return values[a * size() + b]; }
    double q(std::size_t a) const { return (static_cast<double>(a) - static_cast<double>(grid.N())) * grid.dq() / 2.0; }
    double p(std::size_t b) const { return (static_cast<double>(b) - static_cast<double>(grid.N())) * grid.dp() / 2.0; }
    /// Area of one doubled-grid cell, dq dp / 4.
    double cell_area() const { return grid.dq() * grid.dp() / 4.0; }
};

/// Throws Error for N > 2048 (the array would exceed 128 MB).
WignerArray wigner_transform(const Signal& s);

/// Integral over p at each q_a (length 2N).
std::vector<double> wigner_marginal_q(const WignerArray& w);
/// Integral over q at each p_b (length 2N).
std::vector<double> wigner_marginal_p(const WignerArray& w);

/// Cyclic shift: result(a, b) = w(a - da, b - db) on the 2N torus.
WignerArray wigner_shift(const WignerArray& w, long long da, long long db);

struct CombPeak {
    long long m = 0; ///< q = m q0 / 2
    long long n = 0; ///< p = n pi / q0
    double value = 0.0;
    long long offset_a = 0; ///< extremum offset from the lattice point, doubled-grid steps
    long long offset_b = 0;
    bool sign_ok = false;
};

struct CombWignerReport {
    double epsilon = 0.0;
    std::vector<CombPeak> peaks; ///< m, n in {-1, 0, 1, 2}
    bool signs_ok = false;       ///< every peak has sign (-1)^{mn}
    bool extrema_located = false; ///< every extremum within one doubled-grid step
    /// max |W(q + q0, p) - W(q, p)| / max |W| for the smoothed comb.
    double q_periodicity = 0.0;
    /// Same under p -> p + 2 pi / q0. The Gaussian teeth give the spectrum a
    /// Gaussian envelope, so this is of order eps^2 (2 pi / q0)^2, not zero.
    double p_periodicity_smoothed = 0.0;
    /// Both periodicity residuals for the exact discrete comb, where they vanish.
    double q_periodicity_exact = 0.0;
    double p_periodicity_exact = 0.0;
    /// |mass of the (1,1) peak| / |mass of the (0,0) peak|; tends to 1 as eps -> 0.
    double peak_ratio = 0.0;
};

/// Throws EpsilonTooLarge unless 0 < eps < q0 / 8.
CombWignerReport comb_wigner_check(const GridSpec& g, double epsilon);

} // namespace hwzak
