#include "hwzak/sampling.hpp"

#include "hwzak/errors.hpp"
#include "hwzak/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hwzak {
namespace {

constexpr double kStepTol = 1e-9;
constexpr double kSingularTol = 1e-9;

long long pmod(long long x, long long m)
{
    long long r = x % m;
    return r < 0 ? r + m : r;
}

// Integer c with v = c * step, or throws E.
template <class E>
long long to_steps(double v, double step, const char* what)
{
    const double r = v / step;
    const double c = std::round(r);
    if (std::abs(r - c) > kStepTol)
        throw E(std::string(what) + " = " + std::to_string(v) + " is not a multiple of the grid step " +
                std::to_string(step));
    return static_cast<long long>(c);
}

// sin(pi r / den) for integer r, exact zero at multiples of den.
double sin_pi_ratio(long long r, long long den)
{
    const long long t = pmod(r, 2 * den);
    if (t == 0 || t == den) return 0.0;
    return std::sin(kPi * static_cast<double>(t) / static_cast<double>(den));
}

// x reduced to [-Q/2, Q/2)
double reduce_period(double x, double Q) { return x - Q * std::floor(x / Q + 0.5); }

void require_same_period(const GridSpec& src, const GridSpec& target)
{
    if (std::abs(src.Q() - target.Q()) > 1e-12 * src.Q())
        throw GridMismatch("reconstruction: target period " + std::to_string(target.Q()) +
                           " differs from the sample period " + std::to_string(src.Q()));
}

} // namespace

BandRange band_range(const GridSpec& g, const BandSpec& b)
{
    if (!(b.p0 > 0.0)) throw BandOutOfRange("band: p0 must be positive");
    const double r = b.p0 / g.dp();
    const double K = std::round(r);
    if (std::abs(r - K) > kStepTol)
        throw BandOutOfRange("band: p0 = " + std::to_string(b.p0) + " is not a multiple of dp = " +
                             std::to_string(g.dp()));
    BandRange out;
    out.K = static_cast<long long>(K);
    // 2 m K - K <= 2 k' < 2 m K + K
    const long long lo2 = 2 * b.m * out.K - out.K;
    const long long hi2 = 2 * b.m * out.K + out.K;
    out.lo = (lo2 >= 0) ? (lo2 + 1) / 2 : -((-lo2) / 2);
    out.hi = (hi2 >= 0) ? (hi2 + 1) / 2 : -((-hi2) / 2);
    const auto half = static_cast<long long>(g.N() / 2);
    if (out.lo < -half || out.hi > half)
        throw BandOutOfRange("band m=" + std::to_string(b.m) + " p0=" + std::to_string(b.p0) +
                             " leaves the momentum grid [-" + std::to_string(half) + ", " +
                             std::to_string(half) + ") dp");
    return out;
}

double poisson_residual(const Signal& s, double q, double p)
{
    const GridSpec& g = s.grid;
    const long long jc = to_steps<NonCommensurateDisplacement>(q, g.dq(), "q");
    const long long kc = to_steps<NonCommensurateDisplacement>(p, g.dp(), "p");
    const auto L = static_cast<long long>(g.L()), M = static_cast<long long>(g.M()),
               N = static_cast<long long>(g.N());
    if (std::abs(2 * jc) > L || std::abs(2 * kc) > M)
        throw OutOfRectangle("poisson_residual: (" + std::to_string(q) + ", " + std::to_string(p) +
                             ") lies outside R(q0)");

    const MomentumSignal m = fourier_forward(s);
    cplx lhs{0.0, 0.0};
    for (long long n = -M / 2; n < M / 2; ++n) {
        const double ang = -kTwoPi * static_cast<double>(pmod(n * kc, M)) / static_cast<double>(M);
        lhs += std::polar(1.0, ang) * s.values[g.wrap(jc + n * L)];
    }
    lhs *= g.q0() / std::sqrt(g.dq());

    cplx rhs{0.0, 0.0};
    for (long long n = -L / 2; n < L / 2; ++n) {
        const double ang = kTwoPi * static_cast<double>(pmod(n * jc, L)) / static_cast<double>(L);
        rhs += std::polar(1.0, ang) * m.values[g.wrap(kc + n * M)];
    }
    const double geo = kTwoPi * static_cast<double>(pmod(jc * kc, N)) / static_cast<double>(N);
    rhs *= std::sqrt(kTwoPi) * std::polar(1.0, geo) / std::sqrt(g.dp());
    return std::abs(lhs - rhs);
}

Signal bandlimit_project(const Signal& s, const BandSpec& b)
{
    const BandRange r = band_range(s.grid, b);
    MomentumSignal m = fourier_forward(s);
    const auto half = static_cast<long long>(s.grid.N() / 2);
    for (long long k = 0; k < static_cast<long long>(m.values.size()); ++k) {
        const long long kc = k - half;
        if (kc < r.lo || kc >= r.hi) m.values[static_cast<std::size_t>(k)] = 0.0;
    }
    return fourier_inverse(m);
}

SampleSet extract_samples(const Signal& s, double q_offset)
{
    const GridSpec& g = s.grid;
    const long long a = to_steps<NonCommensurateOffset>(q_offset, g.dq(), "q_offset");
    if (std::abs(2 * a) > static_cast<long long>(g.L()))
        throw OutOfRectangle("extract_samples: q_offset " + std::to_string(q_offset) + " outside [-q0/2, q0/2]");
    SampleSet out{g, static_cast<double>(a) * g.dq(), a, CVec(g.M())};
    for (std::size_t i = 0; i < g.M(); ++i)
        out.values[i] = s.wavefunction(g.wrap(a + out.n(i) * static_cast<long long>(g.L())));
    return out;
}

Signal reconstruct_sinc(const SampleSet& samples, const BandSpec& b, const GridSpec& target, AliasPolicy policy)
{
    const GridSpec& g = samples.grid;
    require_same_period(g, target);
    if (b.m != 0) throw BandOutOfRange("reconstruct_sinc: band must be centred (m = 0)");
    const BandRange r = band_range(g, b);
    const auto M = static_cast<long long>(g.M());
    if (r.K > M && policy == AliasPolicy::Refuse)
        throw BandwidthTooLarge("reconstruct_sinc: p0 = " + std::to_string(b.p0) + " exceeds 2 pi / q0 = " +
                                std::to_string(g.p_cell()));

    const double Q = g.Q(), q0 = g.q0(), p0 = b.p0;
    const bool odd = (r.K % 2) != 0;
    // sum_l (-1)^{K l} / (x + l Q) = (pi / Q) {cot, csc}(pi x / Q)
    auto kernel = [&](double x) {
        x = reduce_period(x, Q);
        if (std::abs(x) < kSingularTol * q0) return q0 * p0 / kTwoPi;
        const double t = kPi * x / Q;
        const double image_sum = odd ? 1.0 / std::sin(t) : std::cos(t) / std::sin(t);
        return (q0 / Q) * std::sin(p0 * x / 2.0) * image_sum;
    };

    CVec out(target.N());
    for (std::size_t t = 0; t < target.N(); ++t) {
        cplx acc{0.0, 0.0};
        for (std::size_t i = 0; i < samples.values.size(); ++i)
            acc += kernel(target.q(t) - samples.q(i)) * samples.values[i];
        out[t] = acc;
    }
    return Signal::from_wavefunction(target, out);
}

Signal reconstruct_cauchy(const SampleSet& samples, const GridSpec& target)
{
    const GridSpec& g = samples.grid;
    require_same_period(g, target);
    const double Q = g.Q(), q0 = g.q0();

    CVec out(target.N());
    for (std::size_t t = 0; t < target.N(); ++t) {
        const double u = target.q(t) - samples.q_offset;
        // Position within a cell; at a sample point every other term carries sin(pi n) = 0.
        const double cell = u / q0;
        const double nearest = std::round(cell);
        if (std::abs(cell - nearest) * q0 < kSingularTol * q0) {
            const auto M = static_cast<long long>(g.M());
            const long long idx = pmod(static_cast<long long>(nearest) + M / 2, M);
            out[t] = samples.values[static_cast<std::size_t>(idx)];
            continue;
        }
        cplx acc{0.0, 0.0};
        for (std::size_t i = 0; i < samples.values.size(); ++i) {
            const double x = reduce_period(u - static_cast<double>(samples.n(i)) * q0, Q);
            const double t_ = kPi * x / Q;
            const double sign = (samples.n(i) % 2 == 0) ? 1.0 : -1.0;
            acc += sign * (std::cos(t_) / std::sin(t_)) * samples.values[i];
        }
        out[t] = (q0 / Q) * std::sin(kPi * u / q0) * acc;
    }
    return Signal::from_wavefunction(target, out);
}

double consistency_residual(const SampleSet& samples, const BandSpec& b)
{
    const GridSpec& g = samples.grid;
    const BandRange r = band_range(g, b);
    const auto M = static_cast<long long>(g.M());
    if (r.K > M)
        throw BandwidthTooLarge("consistency_residual: p0 = " + std::to_string(b.p0) + " exceeds 2 pi / q0");
    const bool odd = (r.K % 2) != 0;

    // C_{mn} = (1/M) sin(pi K d / M) {cot, csc}(pi d / M), d = m - n; C_{mm} = K / M.
    std::vector<double> coeff(static_cast<std::size_t>(M));
    coeff[0] = static_cast<double>(r.K) / static_cast<double>(M);
    for (long long d = 1; d < M; ++d) {
        const double s = sin_pi_ratio(r.K * d, M);
        if (s == 0.0) continue;
        const double t = kPi * static_cast<double>(d) / static_cast<double>(M);
        const double image_sum = odd ? 1.0 / std::sin(t) : std::cos(t) / std::sin(t);
        coeff[static_cast<std::size_t>(d)] = s * image_sum / static_cast<double>(M);
    }

    double scale = 0.0;
    for (const auto& v : samples.values) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) return 0.0;

    double worst = 0.0;
    for (long long m = 0; m < M; ++m) {
        cplx acc{0.0, 0.0};
        for (long long n = 0; n < M; ++n) {
            const double c = coeff[static_cast<std::size_t>(pmod(m - n, M))];
            if (c != 0.0) acc += c * samples.values[static_cast<std::size_t>(n)];
        }
        worst = std::max(worst, std::abs(samples.values[static_cast<std::size_t>(m)] - acc));
    }
    return worst / scale;
}

double dependence_residual(const SampleSet& samples, const std::vector<double>& poly_coeffs)
{
    if (poly_coeffs.size() > 5) throw Error("dependence_residual: polynomial degree must be at most 4");
    const double q0 = samples.grid.q0();
    cplx signed_sum{0.0, 0.0};
    double abs_sum = 0.0;
    for (std::size_t i = 0; i < samples.values.size(); ++i) {
        const double z = static_cast<double>(samples.n(i)) * q0;
        double P = 0.0;
        for (auto c = poly_coeffs.rbegin(); c != poly_coeffs.rend(); ++c) P = P * z + *c;
        const cplx term = P * samples.values[i];
        signed_sum += (samples.n(i) % 2 == 0) ? term : -term;
        abs_sum += std::abs(term);
    }
    return abs_sum == 0.0 ? 0.0 : std::abs(signed_sum) / abs_sum;
}

Signal gaussian_mixture(const GridSpec& g, const std::vector<GaussianComponent>& parts)
{
    CVec psi(g.N());
    for (std::size_t j = 0; j < g.N(); ++j) {
        for (const auto& c : parts) {
            const double d = reduce_period(g.q(j) - c.center, g.Q());
            psi[j] += c.amplitude * std::exp(-d * d / (2.0 * c.width * c.width)) * std::polar(1.0, c.momentum * d);
        }
    }
    Signal s = Signal::from_wavefunction(g, psi);
    const double nrm = s.norm();
    if (nrm > 0.0)
        for (auto& v : s.values) v /= nrm;
    return s;
}

Signal bandlimited_mixture(const GridSpec& g, const std::vector<GaussianComponent>& parts, const BandSpec& b)
{
    Signal s = bandlimit_project(gaussian_mixture(g, parts), b);
    const double nrm = s.norm();
    if (nrm > 0.0)
        for (auto& v : s.values) v /= nrm;
    return s;
}

} // namespace hwzak
