#pragma once

#include "hwzak/grid.hpp"

namespace hwzak {

/*
 * Unitary Fourier pair on the centred grid,
 *
 *   phi(p_k) = dq / sqrt(2 pi) * sum_j psi(q_j) exp(-i q_j p_k),
 *
 * which with the sqrt(dq)/sqrt(dp) embeddings is the unitary matrix
 * exp(-i q_j p_k) / sqrt(N). A real even signal maps to a real even spectrum.
 */
MomentumSignal fourier_forward(const Signal& s);
Signal fourier_inverse(const MomentumSignal& m);

namespace detail {

/// Unnormalised in-place DFT: out_k = sum_j x_j exp(-+2 pi i j k / n),
/// sign -1 (forward) or +1 (backward).
void fft_inplace(std::span<cplx> data, int sign);

} // namespace detail
} // namespace hwzak
