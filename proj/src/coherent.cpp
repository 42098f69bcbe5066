#include "hwzak/coherent.hpp"

#include "hwzak/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hwzak {
namespace {

double reduce_period(double x, double Q) { return x - Q * std::floor(x / Q + 0.5); }

Signal normalised(Signal s)
{
    const double n = s.norm();
    if (!(n > 0.0)) throw Error("fiducial: zero signal cannot be normalised");
    for (auto& v : s.values) v /= n;
    return s;
}

Signal from_momentum_function(const GridSpec& g, double (*phi)(double, double), double param)
{
    CVec w(g.N());
    for (std::size_t k = 0; k < g.N(); ++k) w[k] = phi(g.p(k), param);
    return fourier_inverse(MomentumSignal::from_wavefunction(g, w));
}

} // namespace

Signal standard_cs(const GridSpec& g, double q, double p, WarningSink* warnings)
{
    const double Q = g.Q();
    if (std::exp(-Q * Q / 8.0) > 1e-8)
        warn(warnings, "window_too_small",
             "coherent state tails exceed 1e-8 at the window edge (period " + std::to_string(Q) + ")");
    const double norm = std::pow(kPi, -0.25);
    CVec psi(g.N());
    for (std::size_t j = 0; j < g.N(); ++j) {
        const double d = reduce_period(g.q(j) - q, Q);
        psi[j] = norm * std::exp(-d * d / 2.0) * std::polar(1.0, q * p / 2.0 + p * d);
    }
    return Signal::from_wavefunction(g, psi);
}

Smoothing Smoothing::of(const MomentumSignal& phi0, std::optional<BandSpec> band)
{
    return {SmoothingKind::Fiducial, phi0.wavefunction(), band};
}

Signal smoothing_apply(const Signal& s, const Smoothing& op)
{
    const GridSpec& g = s.grid;
    if (op.kind == SmoothingKind::S1) {
        CVec out(s.values);
        for (std::size_t j = 0; j < out.size(); ++j) out[j] *= std::exp(-g.q(j) * g.q(j) / 2.0);
        return Signal(g, std::move(out));
    }
    MomentumSignal m = fourier_forward(s);
    if (op.kind == SmoothingKind::S2) {
        for (std::size_t k = 0; k < m.values.size(); ++k) m.values[k] *= std::exp(-g.p(k) * g.p(k) / 2.0);
        return fourier_inverse(m);
    }
    if (op.phi0.size() != g.N()) throw GridMismatch("smoothing: phi0 length differs from the grid");
    long long lo = -static_cast<long long>(g.N() / 2), hi = static_cast<long long>(g.N() / 2);
    if (op.check_band) {
        const BandRange r = band_range(g, *op.check_band);
        lo = r.lo;
        hi = r.hi;
    }
    double min_abs = std::numeric_limits<double>::infinity();
    for (long long kc = lo; kc < hi; ++kc) min_abs = std::min(min_abs, std::abs(op.phi0[g.wrap(kc)]));
    if (min_abs < 1e-13)
        throw NonvanishingViolated("smoothing: min |phi0| = " + std::to_string(min_abs) + " below 1e-13");
    for (std::size_t k = 0; k < m.values.size(); ++k) m.values[k] *= op.phi0[k];
    return fourier_inverse(m);
}

FiducialVector FiducialVector::from_signal(Signal s, std::string name)
{
    Signal n = normalised(std::move(s));
    MomentumSignal phi = fourier_forward(n);
    ZakArray chi = zak_forward(n);
    return {std::move(name), std::move(n), std::move(phi), std::move(chi)};
}

FiducialVector fiducial_gaussian(const GridSpec& g) { return FiducialVector::from_signal(standard_cs(g, 0.0, 0.0), "gaussian"); }

FiducialVector fiducial_comb(const GridSpec& g)
{
    Signal s = Signal::zeros(g);
    const auto L = static_cast<long long>(g.L()), M = static_cast<long long>(g.M());
    for (long long n = -M / 2; n < M / 2; ++n) s.values[g.wrap(n * L)] = 1.0 / std::sqrt(static_cast<double>(M));
    return FiducialVector::from_signal(std::move(s), "comb");
}

FiducialVector fiducial_smoothed_comb(const GridSpec& g, double eps)
{
    if (!(eps > 0.0)) throw Error("smoothed comb: eps must be positive");
    const auto L = static_cast<long long>(g.L());
    CVec psi(g.N());
    for (std::size_t j = 0; j < g.N(); ++j) {
        // offset from the nearest cell origin, in samples
        long long r = (static_cast<long long>(j) - static_cast<long long>(g.N() / 2)) % L;
        if (r < -L / 2) r += L;
        if (r >= L / 2) r -= L;
        double acc = 0.0;
        for (long long t = -2; t <= 2; ++t) {
            const double d = static_cast<double>(r + t * L) * g.dq();
            acc += std::exp(-d * d / (2.0 * eps * eps));
        }
        psi[j] = acc;
    }
    return FiducialVector::from_signal(Signal::from_wavefunction(g, psi), "smoothed_comb");
}

FiducialVector fiducial_sech(const GridSpec& g)
{
    auto phi = [](double p, double) { return 1.0 / (std::cosh(p) * std::sqrt(2.0)); };
    return FiducialVector::from_signal(from_momentum_function(g, phi, 0.0), "sech");
}

FiducialVector fiducial_bandlimited(const GridSpec& g, double width_fraction)
{
    if (!(width_fraction > 0.0) || width_fraction > 1.0)
        throw Error("bandlimited fiducial: width_fraction must lie in (0, 1]");
    const double w = width_fraction * g.p_cell();
    auto phi = [](double p, double width) {
        if (std::abs(p) >= width / 2.0) return 0.0;
        const double c = std::cos(kPi * p / width);
        return c * c;
    };
    return FiducialVector::from_signal(from_momentum_function(g, phi, w), "bandlimited");
}

FiducialVector fiducial_pure_phase(const GridSpec& g, double amplitude)
{
    const double q0 = g.q0();
    CVec chi(g.L() * g.M());
    ZakArray tmp(g, ZakConvention::Angular, CVec(g.L() * g.M()));
    for (std::size_t j = 0; j < g.L(); ++j) {
        for (std::size_t k = 0; k < g.M(); ++k) {
            const double q = tmp.q(static_cast<long long>(j)), p = tmp.p(static_cast<long long>(k));
            const double theta = amplitude * (std::sin(kTwoPi * q / q0) + 0.5 * std::cos(q0 * p) +
                                              0.3 * std::sin(kTwoPi * q / q0 + q0 * p));
            chi[j * g.M() + k] = std::polar(1.0 / std::sqrt(kTwoPi), theta);
        }
    }
    return FiducialVector::from_signal(zak_to_signal(ZakArray(g, ZakConvention::Angular, std::move(chi))),
                                       "pure_phase");
}

FiducialVector fiducial_inband_zero(const GridSpec& g, double p_star)
{
    const double snapped = std::round(p_star / g.dp()) * g.dp();
    auto phi = [](double p, double ps) { return (p - ps) * std::exp(-p * p / 2.0); };
    CVec w(g.N());
    for (std::size_t k = 0; k < g.N(); ++k) {
        // exact zero at the snapped point
        const long long kc = static_cast<long long>(k) - static_cast<long long>(g.N() / 2);
        w[k] = (kc == std::llround(snapped / g.dp())) ? 0.0 : phi(g.p(k), snapped);
    }
    return FiducialVector::from_signal(fourier_inverse(MomentumSignal::from_wavefunction(g, w)), "inband_zero");
}

} // namespace hwzak
