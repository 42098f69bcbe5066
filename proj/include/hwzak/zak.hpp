#pragma once

#include "hwzak/displacement.hpp"
#include "hwzak/grid.hpp"

#include <utility>

namespace hwzak {

/// Angular: chi(q,p) = <q,p|psi>.  Round: chi~(q,p) = (q,p|psi> = e^{-iqp} chi(q,p).
enum class ZakConvention { Angular, Round };

const char* to_string(ZakConvention c);

/*
 * Zak wavefunction sampled on the rectangle R(q0) = [-q0/2, q0/2) x [-pi/q0, pi/q0).
 *
 * Entry (j, k), stored row-major in j, sits at
 *   q_j = (j - L/2) dq,       j = 0..L-1,
 *   p_k = (k - M/2) dp,       k = 0..M-1,
 * so M momentum steps of dp = 2 pi / (q0 M) span 2 pi / q0. Values are the
 * wavefunction itself (no measure embedding): sum |chi|^2 dq dp = ||psi||^2.
 */
class ZakArray {
public:
    ZakArray(GridSpec grid, ZakConvention convention, CVec values);

    const GridSpec& grid() const { return grid_; }
    ZakConvention convention() const { return convention_; }
    std::size_t L() const { return grid_.L(); }
    std::size_t M() const { return grid_.M(); }

    cplx& at(std::size_t j, std::size_t k) { return values_[j * grid_.M() + k]; }
    const cplx& at(std::size_t j, std::size_t k) const { return values_[j * grid_.M() + k]; }
    const CVec& values() const { return values_; }

    double q(long long j) const { return (static_cast<double>(j) - static_cast<double>(L() / 2)) * grid_.dq(); }
    double p(long long k) const { return (static_cast<double>(k) - static_cast<double>(M() / 2)) * grid_.dp(); }

    /// sum |chi|^2 dq dp
    double norm2() const;

    /*
     * Value at any integer (j, k), continued outside R(q0) by the
     * quasi-periodicity laws (Angular: periodic in p, e^{i q0 p} in q;
     * Round: periodic in q, e^{-2 pi i q / q0} in p).
     */
    cplx extended(long long j, long long k) const;

private:
    GridSpec grid_;
    ZakConvention convention_;
    CVec values_;
};

/// chi(q,p) = sqrt(q0 / 2pi) sum_n e^{-i n q0 p} psi(q + n q0), n over the M cells.
ZakArray zak_forward(const Signal& s);

/// chi~(q,p) = q0^{-1/2} sum_n e^{2 pi i n q / q0} phi(p + 2 pi n / q0), n over the L momentum cells.
ZakArray zak_forward_round(const Signal& s);

/// Multiply by the geometric phase e^{-+iqp} to switch conventions.
ZakArray to_convention(const ZakArray& z, ZakConvention target);

/// psi(q) = sqrt(q0 / 2pi) int dp e^{iqp} chi~([q], p). Requires a Round array.
Signal zak_inverse_position(const ZakArray& z);

/// phi(p) = q0^{-1/2} int dq e^{-iqp} chi(q, [p]). Requires an Angular array.
MomentumSignal zak_inverse_momentum(const ZakArray& z);

/// Signal of a Zak array of either convention.
Signal zak_to_signal(const ZakArray& z);

/// Defining sum evaluated at an arbitrary integer node (j, k), i.e. outside R(q0) too.
cplx zak_eval(const Signal& s, ZakConvention c, long long j, long long k);

/// Max deviation of the re-evaluated defining sum one cell beyond R(q0) from the
/// quasi-periodicity laws, including the edge conditions.
double quasiperiodicity_residual(const ZakArray& z);

struct ZeroReport {
    PhasePoint location;      ///< grid argmin of |chi|
    std::size_t j = 0;
    std::size_t k = 0;
    double min_abs = 0.0;
    double max_abs = 0.0;
    int winding = 0;          ///< phase winding around a fundamental cell centred on the argmin
    double winding_raw = 0.0; ///< unrounded winding
    /// Set when the boundary loop jumps by more than half of max|chi| between
    /// neighbouring nodes: the array is not (grid-)continuous and the zero
    /// guarantee does not apply.
    bool discontinuous = false;
};

ZeroReport locate_zero(const ZakArray& z);

/// Zak-side action of q-hat: q + i d/dp (Angular), i d/dp (Round).
ZakArray zak_apply_position(const ZakArray& z);
/// Zak-side action of p-hat: -i d/dq (Angular), p - i d/dq (Round).
ZakArray zak_apply_momentum(const ZakArray& z);

/// (max |Z[q-hat s] - q-hat Z[s]|, max |Z[p-hat s] - p-hat Z[s]|), Angular convention.
std::pair<double, double> zak_operator_check(const Signal& s);

/// Zak array of D(q', p') psi predicted from that of psi: a phase times a
/// translation reduced modulo R(q0). Angular only.
ZakArray zak_translate(const ZakArray& z, GridSteps steps);

/// Position operator q-hat on a signal (multiplication by q_j).
Signal apply_position(const Signal& s);
/// Momentum operator p-hat on a signal (spectral).
Signal apply_momentum(const Signal& s);

} // namespace hwzak
