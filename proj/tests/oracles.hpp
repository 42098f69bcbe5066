#pragma once

// Independent reference computations for the tests. Everything here is a
// direct O(N^2) sum or a closed form; none of it calls the library's
// transforms.

#include "hwzak/grid.hpp"

#include <cmath>
#include <random>
#include <vector>

namespace oracle {

using hwzak::cplx;
using hwzak::CVec;
using hwzak::GridSpec;

inline constexpr double pi = 3.14159265358979323846;

/// phi(p_k) = dq / sqrt(2 pi) sum_j psi(q_j) exp(-i q_j p_k), wavefunction values in and out.
inline CVec dft_wavefunction(const GridSpec& g, const CVec& psi)
{
    CVec phi(g.N());
    for (std::size_t k = 0; k < g.N(); ++k) {
        cplx acc = 0.0;
        for (std::size_t j = 0; j < g.N(); ++j) {
            // q_j p_k = 2 pi (j - N/2)(k - N/2) / N, reduced exactly in integers
            const long long n = static_cast<long long>(g.N());
            const long long t = ((static_cast<long long>(j) - n / 2) * (static_cast<long long>(k) - n / 2)) % n;
            acc += psi[j] * std::polar(1.0, -2.0 * pi * static_cast<double>(t) / static_cast<double>(n));
        }
        phi[k] = acc * g.dq() / std::sqrt(2.0 * pi);
    }
    return phi;
}

/// Zak sum with the n-origin at the cell containing q = 0, evaluated directly on wavefunction values.
inline cplx zak_direct(const GridSpec& g, const CVec& psi, long long jc, long long kc)
{
    // jc, kc are centred offsets: q = jc dq, p = kc dp
    const auto N = static_cast<long long>(g.N());
    const auto L = static_cast<long long>(g.L());
    const auto M = static_cast<long long>(g.M());
    cplx acc = 0.0;
    for (long long n = -M / 2; n < M / 2; ++n) {
        long long idx = (jc + n * L + N / 2) % N;
        if (idx < 0) idx += N;
        const double p = static_cast<double>(kc) * g.dp();
        acc += std::polar(1.0, -static_cast<double>(n) * g.q0() * p) * psi[static_cast<std::size_t>(idx)];
    }
    return acc * std::sqrt(g.q0() / (2.0 * pi));
}

/// Zak transform of the continuum Gaussian pi^{-1/4} e^{-q^2/2} on the whole line (theta series).
inline cplx zak_gaussian_line(double q0, double q, double p)
{
    cplx acc = 0.0;
    for (int n = -40; n <= 40; ++n) {
        const double x = q + n * q0;
        acc += std::polar(std::exp(-0.5 * x * x), -n * q0 * p);
    }
    return acc * std::sqrt(q0 / (2.0 * pi)) * std::pow(pi, -0.25);
}

/// Fraction of the Gaussian pi^{-1/4} e^{-q^2/2} norm inside |p| < p0/2.
inline double gaussian_band_mass(double p0) { return std::erf(p0 / 2.0); }

/// Same mass summed on a momentum grid of step dp over a half-open band. For an even
/// density the half-open sum equals the trapezoid rule, so Euler-Maclaurin gives the
/// correction to the erf value.
inline double gaussian_band_mass_grid(double p0, double dp)
{
    const double b = p0 / 2.0;
    const double f = std::exp(-b * b) / std::sqrt(pi);
    const double f1 = -2.0 * b * f;
    const double f3 = (12.0 * b - 8.0 * b * b * b) * f;
    return std::erf(b) + dp * dp / 12.0 * 2.0 * f1 - std::pow(dp, 4) / 720.0 * 2.0 * f3;
}

/// |<cs(q1,p1), cs(q2,p2)>| for standard coherent states.
inline double cs_overlap_abs(double q1, double p1, double q2, double p2)
{
    const double dq = q1 - q2, dp = p1 - p2;
    return std::exp(-(dq * dq + dp * dp) / 4.0);
}

/// Wigner function of the standard coherent state at (a, b).
inline double cs_wigner(double q, double p, double a, double b)
{
    return std::exp(-(q - a) * (q - a) - (p - b) * (p - b)) / pi;
}

/// Coherent-state wavefunction straight from the closed form, minimal-image distance.
inline CVec cs_wavefunction(const GridSpec& g, double q, double p)
{
    CVec out(g.N());
    for (std::size_t j = 0; j < g.N(); ++j) {
        double x = g.q(j) - q;
        x -= g.Q() * std::round(x / g.Q());
        out[j] = std::pow(pi, -0.25) * std::polar(std::exp(-0.5 * x * x), -q * p / 2.0 + p * (x + q));
    }
    return out;
}

/// Complex Gaussian white noise, normalised, embedded as storage values.
inline CVec random_values(std::size_t n, std::mt19937_64& rng)
{
    std::normal_distribution<double> nd;
    CVec v(n);
    double s = 0.0;
    for (auto& x : v) {
        x = {nd(rng), nd(rng)};
        s += std::norm(x);
    }
    for (auto& x : v) x /= std::sqrt(s);
    return v;
}

inline double rel_l2(const CVec& a, const CVec& b)
{
    double d = 0.0, n = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d += std::norm(a[i] - b[i]);
        n += std::norm(b[i]);
    }
    return std::sqrt(d / n);
}

inline double max_diff(const CVec& a, const CVec& b)
{
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

} // namespace oracle
