#include "hwzak/wigner.hpp"

#include "hwzak/coherent.hpp"
#include "hwzak/errors.hpp"
#include "hwzak/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hwzak {
namespace {

long long pmod(long long x, long long m)
{
    long long r = x % m;
    return r < 0 ? r + m : r;
}

double max_abs(const std::vector<double>& v)
{
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

// max |W(a + da, b + db) - W(a, b)| / max |W|
double periodicity_residual(const WignerArray& w, long long da, long long db)
{
    const auto n = static_cast<long long>(w.size());
    double worst = 0.0;
    for (long long a = 0; a < n; ++a)
        for (long long b = 0; b < n; ++b)
            worst = std::max(worst, std::abs(w.at(static_cast<std::size_t>(pmod(a + da, n)), static_cast<std::size_t>(pmod(b + db, n))) -
                                             w.at(static_cast<std::size_t>(a), static_cast<std::size_t>(b))));
    const double scale = max_abs(w.values);
    return scale > 0.0 ? worst / scale : 0.0;
}

} // namespace

WignerArray wigner_transform(const Signal& s)
{
    const GridSpec& g = s.grid;
    if (g.N() > 2048) throw Error("wigner_transform: N = " + std::to_string(g.N()) + " exceeds 2048");
    const auto N = static_cast<long long>(g.N());
    const std::size_t side = 2 * g.N();
    WignerArray w{g, std::vector<double>(side * side), 0.0};

    CVec f(g.N());
    for (long long a = 0; a < 2 * N; ++a) {
        for (long long j = 0; j < N; ++j)
            f[static_cast<std::size_t>(j)] = std::conj(s.values[static_cast<std::size_t>(j)]) * s.values[static_cast<std::size_t>(pmod(a - j, N))];
        // F_r = sum_j f_j e^{2 pi i r j / N}
        detail::fft_inplace(f, +1);
        for (long long b = 0; b < 2 * N; ++b) {
            const long long r = b - N;
            const long long t = pmod(-r * a, 2 * N);
            const cplx v = std::polar(1.0 / kPi, kPi * static_cast<double>(t) / static_cast<double>(N)) *
                           f[static_cast<std::size_t>(pmod(r, N))];
            w.values[static_cast<std::size_t>(a) * side + static_cast<std::size_t>(b)] = v.real();
            w.imag_residue = std::max(w.imag_residue, std::abs(v.imag()));
        }
    }
    return w;
}

std::vector<double> wigner_marginal_q(const WignerArray& w)
{
    const std::size_t n = w.size();
    std::vector<double> out(n);
    for (std::size_t a = 0; a < n; ++a) {
        double acc = 0.0;
        for (std::size_t b = 0; b < n; ++b) acc += w.at(a, b);
        out[a] = acc * w.grid.dp() / 2.0;
    }
    return out;
}

std::vector<double> wigner_marginal_p(const WignerArray& w)
{
    const std::size_t n = w.size();
    std::vector<double> out(n, 0.0);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) out[b] += w.at(a, b);
    for (auto& v : out) v *= w.grid.dq() / 2.0;
    return out;
}

WignerArray wigner_shift(const WignerArray& w, long long da, long long db)
{
    const auto n = static_cast<long long>(w.size());
    WignerArray out{w.grid, std::vector<double>(w.values.size()), w.imag_residue};
    for (long long a = 0; a < n; ++a)
        for (long long b = 0; b < n; ++b)
            out.values[static_cast<std::size_t>(a * n + b)] = w.at(static_cast<std::size_t>(pmod(a - da, n)), static_cast<std::size_t>(pmod(b - db, n)));
    return out;
}

CombWignerReport comb_wigner_check(const GridSpec& g, double epsilon)
{
    if (!(epsilon > 0.0) || epsilon >= g.q0() / 8.0)
        throw EpsilonTooLarge("comb_wigner_check: eps = " + std::to_string(epsilon) + " must lie in (0, q0/8 = " +
                              std::to_string(g.q0() / 8.0) + ")");
    const auto N = static_cast<long long>(g.N()), L = static_cast<long long>(g.L()), M = static_cast<long long>(g.M());
    const WignerArray w = wigner_transform(fiducial_smoothed_comb(g, epsilon).signal);

    CombWignerReport rep;
    rep.epsilon = epsilon;
    rep.signs_ok = true;
    rep.extrema_located = true;
    // Lattice point (m, n) sits at a = N + m L, b = N + n M.
    const long long wa = std::max<long long>(1, L / 4), wb = std::max<long long>(1, M / 2);
    auto peak_mass = [&](long long m, long long n) {
        double acc = 0.0;
        for (long long da = -wa; da <= wa; ++da)
            for (long long db = -wb; db < wb; ++db)
                acc += w.at(static_cast<std::size_t>(N + m * L + da), static_cast<std::size_t>(N + n * M + db));
        return acc * w.cell_area();
    };
    for (long long m = -1; m <= 2; ++m) {
        for (long long n = -1; n <= 2; ++n) {
            CombPeak pk;
            pk.m = m;
            pk.n = n;
            double best = -1.0;
            for (long long da = -wa; da <= wa; ++da) {
                for (long long db = -wb; db < wb; ++db) {
                    const double v = w.at(static_cast<std::size_t>(N + m * L + da), static_cast<std::size_t>(N + n * M + db));
                    if (std::abs(v) > best) {
                        best = std::abs(v);
                        pk.value = v;
                        pk.offset_a = da;
                        pk.offset_b = db;
                    }
                }
            }
            const double expected = ((m * n) % 2 == 0) ? 1.0 : -1.0;
            pk.sign_ok = pk.value * expected > 0.0;
            rep.signs_ok = rep.signs_ok && pk.sign_ok;
            rep.extrema_located = rep.extrema_located && std::abs(pk.offset_a) <= 1 && std::abs(pk.offset_b) <= 1;
            rep.peaks.push_back(pk);
        }
    }
    rep.q_periodicity = periodicity_residual(w, 2 * L, 0);
    rep.p_periodicity_smoothed = periodicity_residual(w, 0, 2 * M);
    const double m00 = peak_mass(0, 0);
    rep.peak_ratio = m00 != 0.0 ? std::abs(peak_mass(1, 1)) / std::abs(m00) : 0.0;

    const WignerArray exact = wigner_transform(fiducial_comb(g).signal);
    rep.q_periodicity_exact = periodicity_residual(exact, 2 * L, 0);
    rep.p_periodicity_exact = periodicity_residual(exact, 0, 2 * M);
    return rep;
}

} // namespace hwzak
