#include "hwzak/zak.hpp"

#include "hwzak/errors.hpp"
#include "hwzak/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hwzak {
namespace {

long long pmod(long long x, long long m)
{
    long long r = x % m;
    return r < 0 ? r + m : r;
}

long long floor_div(long long x, long long m) { return (x - pmod(x, m)) / m; }

// e^{sign 2 pi i t / n}, t = 0..n-1
CVec unit_roots(std::size_t n, int sign)
{
    CVec r(n);
    for (std::size_t t = 0; t < n; ++t)
        r[t] = std::polar(1.0, sign * kTwoPi * static_cast<double>(t) / static_cast<double>(n));
    return r;
}

struct Dims {
    long long L, M, N;
    explicit Dims(const GridSpec& g)
        : L(static_cast<long long>(g.L())), M(static_cast<long long>(g.M())), N(static_cast<long long>(g.N()))
    {
    }
};

void require(const ZakArray& z, ZakConvention c, const char* op)
{
    if (z.convention() != c)
        throw ConventionMismatch(std::string(op) + ": expected a " + to_string(c) + " array, got " +
                                 to_string(z.convention()));
}

cplx eval_angular(const Signal& s, const Dims& d, const CVec& roots_m, long long j, long long k)
{
    const double pref = std::sqrt(s.grid.q0() / kTwoPi) / std::sqrt(s.grid.dq());
    cplx acc{0.0, 0.0};
    const long long kc = k - d.M / 2;
    for (long long n = -d.M / 2; n < d.M / 2; ++n) {
        const long long c = (j - d.L / 2) + n * d.L;
        acc += roots_m[static_cast<std::size_t>(pmod(n * kc, d.M))] * s.values[s.grid.wrap(c)];
    }
    return pref * acc;
}

cplx eval_round(const MomentumSignal& m, const Dims& d, const CVec& roots_l, long long j, long long k)
{
    const double pref = 1.0 / std::sqrt(m.grid.q0()) / std::sqrt(m.grid.dp());
    cplx acc{0.0, 0.0};
    const long long jc = j - d.L / 2;
    for (long long n = -d.L / 2; n < d.L / 2; ++n) {
        const long long c = (k - d.M / 2) + n * d.M;
        acc += roots_l[static_cast<std::size_t>(pmod(n * jc, d.L))] * m.values[m.grid.wrap(c)];
    }
    return pref * acc;
}

// Values of sum_n c_n e^{sign 2 pi i n (x - n_pts/2) / n_pts} after weighting c_n by
// weight(n); the input vector holds the same sum unweighted. n runs over
// [-n_pts/2, n_pts/2).
template <class Weight>
CVec spectral_reweight(const CVec& f, int sign, Weight weight)
{
    const auto n_pts = static_cast<long long>(f.size());
    const CVec fwd = unit_roots(f.size(), sign);
    const CVec bwd = unit_roots(f.size(), -sign);
    CVec out(f.size());
    for (long long n = -n_pts / 2; n < n_pts / 2; ++n) {
        cplx c{0.0, 0.0};
        for (long long x = 0; x < n_pts; ++x)
            c += bwd[static_cast<std::size_t>(pmod(n * (x - n_pts / 2), n_pts))] * f[static_cast<std::size_t>(x)];
        c *= weight(n) / static_cast<double>(n_pts);
        for (long long x = 0; x < n_pts; ++x)
            out[static_cast<std::size_t>(x)] += c * fwd[static_cast<std::size_t>(pmod(n * (x - n_pts / 2), n_pts))];
    }
    return out;
}

// Fourth-order central first difference at node (j, k) along one axis,
// ghost values from the quasi-periodic continuation.
cplx central_diff(const ZakArray& z, long long j, long long k, bool along_q)
{
    auto at = [&](long long off) { return along_q ? z.extended(j + off, k) : z.extended(j, k + off); };
    const double h = along_q ? z.grid().dq() : z.grid().dp();
    return (-at(2) + 8.0 * at(1) - 8.0 * at(-1) + at(-2)) / (12.0 * h);
}

} // namespace

const char* to_string(ZakConvention c) { return c == ZakConvention::Angular ? "angular" : "round"; }

ZakArray::ZakArray(GridSpec grid, ZakConvention convention, CVec values)
    : grid_(grid), convention_(convention), values_(std::move(values))
{
    if (values_.size() != grid_.L() * grid_.M())
        throw GridMismatch("zak array: expected L*M = " + std::to_string(grid_.L() * grid_.M()) + " values");
}

double ZakArray::norm2() const { return hwzak::norm2(values_) * grid_.dq() * grid_.dp(); }

cplx ZakArray::extended(long long j, long long k) const
{
    const Dims d(grid_);
    const long long jr = pmod(j, d.L), a = floor_div(j, d.L);
    const long long kr = pmod(k, d.M), b = floor_div(k, d.M);
    const cplx base = at(static_cast<std::size_t>(jr), static_cast<std::size_t>(kr));
    if (convention_ == ZakConvention::Angular) {
        if (a == 0) return base;
        const long long t = pmod(a * (kr - d.M / 2), d.M);
        return std::polar(1.0, kTwoPi * static_cast<double>(t) / static_cast<double>(d.M)) * base;
    }
    if (b == 0) return base;
    const long long t = pmod(-b * (jr - d.L / 2), d.L);
    return std::polar(1.0, kTwoPi * static_cast<double>(t) / static_cast<double>(d.L)) * base;
}

ZakArray zak_forward(const Signal& s)
{
    const Dims d(s.grid);
    const CVec roots = unit_roots(s.grid.M(), -1);
    const double pref = std::sqrt(s.grid.q0() / kTwoPi) / std::sqrt(s.grid.dq());
    CVec out(static_cast<std::size_t>(d.L * d.M));
    CVec column(static_cast<std::size_t>(d.M));
    for (long long j = 0; j < d.L; ++j) {
        for (long long n = -d.M / 2; n < d.M / 2; ++n)
            column[static_cast<std::size_t>(n + d.M / 2)] = s.values[s.grid.wrap((j - d.L / 2) + n * d.L)];
        for (long long k = 0; k < d.M; ++k) {
            cplx acc{0.0, 0.0};
            for (long long n = -d.M / 2; n < d.M / 2; ++n)
                acc += roots[static_cast<std::size_t>(pmod(n * (k - d.M / 2), d.M))] *
                       column[static_cast<std::size_t>(n + d.M / 2)];
            out[static_cast<std::size_t>(j * d.M + k)] = pref * acc;
        }
    }
    return ZakArray(s.grid, ZakConvention::Angular, std::move(out));
}

ZakArray zak_forward_round(const Signal& s)
{
    const MomentumSignal m = fourier_forward(s);
    const Dims d(s.grid);
    const CVec roots = unit_roots(s.grid.L(), +1);
    CVec out(static_cast<std::size_t>(d.L * d.M));
    for (long long j = 0; j < d.L; ++j)
        for (long long k = 0; k < d.M; ++k)
            out[static_cast<std::size_t>(j * d.M + k)] = eval_round(m, d, roots, j, k);
    return ZakArray(s.grid, ZakConvention::Round, std::move(out));
}

ZakArray to_convention(const ZakArray& z, ZakConvention target)
{
    if (z.convention() == target) return z;
    const Dims d(z.grid());
    const int sign = target == ZakConvention::Round ? -1 : +1;
    const CVec roots = unit_roots(z.grid().N(), sign);
    CVec out(z.values());
    for (long long j = 0; j < d.L; ++j)
        for (long long k = 0; k < d.M; ++k)
            out[static_cast<std::size_t>(j * d.M + k)] *=
                roots[static_cast<std::size_t>(pmod((j - d.L / 2) * (k - d.M / 2), d.N))];
    return ZakArray(z.grid(), target, std::move(out));
}

Signal zak_inverse_position(const ZakArray& z)
{
    require(z, ZakConvention::Round, "zak_inverse_position");
    const GridSpec& g = z.grid();
    const Dims d(g);
    const CVec roots = unit_roots(g.N(), +1);
    const double pref = std::sqrt(g.q0() / kTwoPi) * g.dp() * std::sqrt(g.dq());
    CVec out(g.N());
    for (long long j = 0; j < d.L; ++j) {
        for (long long n = -d.M / 2; n < d.M / 2; ++n) {
            const long long c = (j - d.L / 2) + n * d.L;
            cplx acc{0.0, 0.0};
            for (long long k = 0; k < d.M; ++k)
                acc += roots[static_cast<std::size_t>(pmod(c * (k - d.M / 2), d.N))] *
                       z.at(static_cast<std::size_t>(j), static_cast<std::size_t>(k));
            out[g.wrap(c)] = pref * acc;
        }
    }
    return Signal(g, std::move(out));
}

MomentumSignal zak_inverse_momentum(const ZakArray& z)
{
    require(z, ZakConvention::Angular, "zak_inverse_momentum");
    const GridSpec& g = z.grid();
    const Dims d(g);
    const CVec roots = unit_roots(g.N(), -1);
    const double pref = g.dq() / std::sqrt(g.q0()) * std::sqrt(g.dp());
    CVec out(g.N());
    for (long long k = 0; k < d.M; ++k) {
        for (long long n = -d.L / 2; n < d.L / 2; ++n) {
            const long long c = (k - d.M / 2) + n * d.M;
            cplx acc{0.0, 0.0};
            for (long long j = 0; j < d.L; ++j)
                acc += roots[static_cast<std::size_t>(pmod((j - d.L / 2) * c, d.N))] *
                       z.at(static_cast<std::size_t>(j), static_cast<std::size_t>(k));
            out[g.wrap(c)] = pref * acc;
        }
    }
    return MomentumSignal(g, std::move(out));
}

Signal zak_to_signal(const ZakArray& z)
{
    return zak_inverse_position(to_convention(z, ZakConvention::Round));
}

cplx zak_eval(const Signal& s, ZakConvention c, long long j, long long k)
{
    const Dims d(s.grid);
    if (c == ZakConvention::Angular) return eval_angular(s, d, unit_roots(s.grid.M(), -1), j, k);
    return eval_round(fourier_forward(s), d, unit_roots(s.grid.L(), +1), j, k);
}

double quasiperiodicity_residual(const ZakArray& z)
{
    const Signal s = zak_to_signal(z);
    const Dims d(z.grid());
    double worst = 0.0;
    if (z.convention() == ZakConvention::Angular) {
        const CVec roots = unit_roots(z.grid().M(), -1);
        for (long long j = 0; j < d.L; ++j) {
            for (long long k = 0; k < d.M; ++k) {
                const cplx base = z.at(static_cast<std::size_t>(j), static_cast<std::size_t>(k));
                // chi(q + q0, p) = e^{i q0 p} chi(q, p);  chi(q, p + 2pi/q0) = chi(q, p)
                const cplx shift_q = eval_angular(s, d, roots, j + d.L, k);
                const cplx shift_p = eval_angular(s, d, roots, j, k + d.M);
                const cplx phase = std::polar(1.0, z.grid().q0() * z.p(k));
                worst = std::max({worst, std::abs(shift_q - phase * base), std::abs(shift_p - base)});
            }
        }
    } else {
        const MomentumSignal m = fourier_forward(s);
        const CVec roots = unit_roots(z.grid().L(), +1);
        for (long long j = 0; j < d.L; ++j) {
            for (long long k = 0; k < d.M; ++k) {
                const cplx base = z.at(static_cast<std::size_t>(j), static_cast<std::size_t>(k));
                // chi~(q + q0, p) = chi~(q, p);  chi~(q, p + 2pi/q0) = e^{-2 pi i q/q0} chi~(q, p)
                const cplx shift_q = eval_round(m, d, roots, j + d.L, k);
                const cplx shift_p = eval_round(m, d, roots, j, k + d.M);
                const cplx phase = std::polar(1.0, -kTwoPi * z.q(j) / z.grid().q0());
                worst = std::max({worst, std::abs(shift_q - base), std::abs(shift_p - phase * base)});
            }
        }
    }
    return worst;
}

ZeroReport locate_zero(const ZakArray& z)
{
    ZeroReport r;
    r.min_abs = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < z.L(); ++j) {
        for (std::size_t k = 0; k < z.M(); ++k) {
            const double a = std::abs(z.at(j, k));
            r.max_abs = std::max(r.max_abs, a);
            if (a < r.min_abs) {
                r.min_abs = a;
                r.j = j;
                r.k = k;
            }
        }
    }
    r.location = {z.q(static_cast<long long>(r.j)), z.p(static_cast<long long>(r.k))};

    // Counter-clockwise loop around the cell [j0, j0+L] x [k0, k0+M] centred on the argmin.
    const auto L = static_cast<long long>(z.L()), M = static_cast<long long>(z.M());
    const long long j0 = static_cast<long long>(r.j) - L / 2;
    const long long k0 = static_cast<long long>(r.k) - M / 2;
    CVec loop;
    loop.reserve(static_cast<std::size_t>(2 * (L + M)) + 1);
    for (long long t = 0; t < L; ++t) loop.push_back(z.extended(j0 + t, k0));
    for (long long t = 0; t < M; ++t) loop.push_back(z.extended(j0 + L, k0 + t));
    for (long long t = 0; t < L; ++t) loop.push_back(z.extended(j0 + L - t, k0 + M));
    for (long long t = 0; t < M; ++t) loop.push_back(z.extended(j0, k0 + M - t));
    loop.push_back(loop.front());

    double total = 0.0;
    double max_jump = 0.0;
    for (std::size_t i = 1; i < loop.size(); ++i) {
        total += std::arg(loop[i] * std::conj(loop[i - 1]));
        max_jump = std::max(max_jump, std::abs(loop[i] - loop[i - 1]));
    }
    r.winding_raw = total / kTwoPi;
    r.winding = static_cast<int>(std::lround(r.winding_raw));
    r.discontinuous = max_jump > 0.5 * r.max_abs;
    return r;
}

ZakArray zak_apply_position(const ZakArray& z)
{
    const Dims d(z.grid());
    const double q0 = z.grid().q0();
    CVec out(z.values().size());
    if (z.convention() == ZakConvention::Angular) {
        // q + i d/dp, spectral in the periodic p direction.
        for (long long j = 0; j < d.L; ++j) {
            CVec row(z.values().begin() + j * d.M, z.values().begin() + (j + 1) * d.M);
            const CVec didp = spectral_reweight(row, -1, [&](long long n) { return static_cast<double>(n) * q0; });
            for (long long k = 0; k < d.M; ++k)
                out[static_cast<std::size_t>(j * d.M + k)] = z.q(j) * row[static_cast<std::size_t>(k)] + didp[static_cast<std::size_t>(k)];
        }
    } else {
        // i d/dp, finite differences in the quasi-periodic p direction.
        for (long long j = 0; j < d.L; ++j)
            for (long long k = 0; k < d.M; ++k)
                out[static_cast<std::size_t>(j * d.M + k)] = cplx{0.0, 1.0} * central_diff(z, j, k, false);
    }
    return ZakArray(z.grid(), z.convention(), std::move(out));
}

ZakArray zak_apply_momentum(const ZakArray& z)
{
    const Dims d(z.grid());
    const double q0 = z.grid().q0();
    CVec out(z.values().size());
    if (z.convention() == ZakConvention::Angular) {
        // -i d/dq, finite differences in the quasi-periodic q direction.
        for (long long j = 0; j < d.L; ++j)
            for (long long k = 0; k < d.M; ++k)
                out[static_cast<std::size_t>(j * d.M + k)] = cplx{0.0, -1.0} * central_diff(z, j, k, true);
    } else {
        // p - i d/dq, spectral in the periodic q direction.
        for (long long k = 0; k < d.M; ++k) {
            CVec col(static_cast<std::size_t>(d.L));
            for (long long j = 0; j < d.L; ++j) col[static_cast<std::size_t>(j)] = z.at(static_cast<std::size_t>(j), static_cast<std::size_t>(k));
            const CVec didq = spectral_reweight(col, +1, [&](long long n) { return kTwoPi * static_cast<double>(n) / q0; });
            for (long long j = 0; j < d.L; ++j)
                out[static_cast<std::size_t>(j * d.M + k)] = z.p(k) * col[static_cast<std::size_t>(j)] + didq[static_cast<std::size_t>(j)];
        }
    }
    return ZakArray(z.grid(), z.convention(), std::move(out));
}

Signal apply_position(const Signal& s)
{
    CVec out(s.values);
    for (std::size_t j = 0; j < out.size(); ++j) out[j] *= s.grid.q(j);
    return Signal(s.grid, std::move(out));
}

Signal apply_momentum(const Signal& s)
{
    MomentumSignal m = fourier_forward(s);
    for (std::size_t k = 0; k < m.values.size(); ++k) m.values[k] *= m.grid.p(k);
    return fourier_inverse(m);
}

std::pair<double, double> zak_operator_check(const Signal& s)
{
    const ZakArray z = zak_forward(s);
    const double rq = max_abs_diff(zak_forward(apply_position(s)).values(), zak_apply_position(z).values());
    const double rp = max_abs_diff(zak_forward(apply_momentum(s)).values(), zak_apply_momentum(z).values());
    return {rq, rp};
}

ZakArray zak_translate(const ZakArray& z, GridSteps steps)
{
    require(z, ZakConvention::Angular, "zak_translate");
    const Dims d(z.grid());
    CVec out(z.values().size());
    for (long long j = 0; j < d.L; ++j) {
        for (long long k = 0; k < d.M; ++k) {
            // e^{i p' (q - q'/2)} chi(q - q', p - p')
            const long long t = pmod(steps.b * pmod(2 * j - d.L - steps.a, 2 * d.N), 2 * d.N);
            const cplx phase = std::polar(1.0, kPi * static_cast<double>(t) / static_cast<double>(d.N));
            out[static_cast<std::size_t>(j * d.M + k)] = phase * z.extended(j - steps.a, k - steps.b);
        }
    }
    return ZakArray(z.grid(), ZakConvention::Angular, std::move(out));
}

} // namespace hwzak
