#include "hwzak/grid.hpp"

#include "hwzak/errors.hpp"

#include <cmath>
#include <string>

namespace hwzak {

GridSpec::GridSpec(std::size_t N, std::size_t L, std::size_t M, double dq)
    : N_(N), L_(L), M_(M), dq_(dq)
{
    if (L == 0 || M == 0) throw GridMismatch("grid: L and M must be positive");
    if (L % 2 != 0 || M % 2 != 0)
        throw GridMismatch("grid: L and M must both be even (got L=" + std::to_string(L) +
                           ", M=" + std::to_string(M) + ")");
    if (L * M != N) throw GridMismatch("grid: N must equal L*M");
    if (!(dq > 0.0) || !std::isfinite(dq)) throw GridMismatch("grid: dq must be positive and finite");
    q0_ = static_cast<double>(L) * dq;
    Q_ = static_cast<double>(N) * dq;
    dp_ = kTwoPi / Q_;
    p_cell_ = kTwoPi / q0_;
}

GridSpec GridSpec::from_cells(std::size_t L, std::size_t M, double q0)
{
    if (L == 0) throw GridMismatch("grid: L must be positive");
    return GridSpec(L * M, L, M, q0 / static_cast<double>(L));
}

GridSpec GridSpec::from_spacing(std::size_t N, std::size_t L, double dq)
{
    if (L == 0 || N % L != 0)
        throw GridMismatch("grid: N=" + std::to_string(N) + " is not a multiple of L=" + std::to_string(L));
    return GridSpec(N, L, N / L, dq);
}

std::size_t GridSpec::wrap(long long centred) const
{
    const auto n = static_cast<long long>(N_);
    long long idx = (centred + n / 2) % n;
    if (idx < 0) idx += n;
    return static_cast<std::size_t>(idx);
}

bool GridSpec::same_as(const GridSpec& other, double rel_tol) const
{
    return N_ == other.N_ && L_ == other.L_ && std::abs(dq_ - other.dq_) <= rel_tol * dq_;
}

cplx inner(std::span<const cplx> a, std::span<const cplx> b)
{
    if (a.size() != b.size()) throw GridMismatch("inner: length mismatch");
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

double norm2(std::span<const cplx> a)
{
    double acc = 0.0;
    for (const auto& v : a) acc += std::norm(v);
    return acc;
}

double norm(std::span<const cplx> a) { return std::sqrt(norm2(a)); }

double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b)
{
    if (a.size() != b.size()) throw GridMismatch("max_abs_diff: length mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

Signal::Signal(GridSpec g, CVec v) : grid(g), values(std::move(v))
{
    if (values.size() != grid.N())
        throw GridMismatch("signal: expected " + std::to_string(grid.N()) + " samples, got " +
                           std::to_string(values.size()));
}

Signal Signal::zeros(const GridSpec& g) { return Signal(g, CVec(g.N())); }

Signal Signal::from_wavefunction(const GridSpec& g, std::span<const cplx> psi)
{
    const double s = std::sqrt(g.dq());
    CVec v(psi.begin(), psi.end());
    for (auto& x : v) x *= s;
    return Signal(g, std::move(v));
}

cplx Signal::wavefunction(std::size_t j) const { return values[j] / std::sqrt(grid.dq()); }

CVec Signal::wavefunction() const
{
    CVec out(values);
    const double s = 1.0 / std::sqrt(grid.dq());
    for (auto& x : out) x *= s;
    return out;
}

MomentumSignal::MomentumSignal(GridSpec g, CVec v) : grid(g), values(std::move(v))
{
    if (values.size() != grid.N())
        throw GridMismatch("momentum signal: expected " + std::to_string(grid.N()) + " samples");
}

MomentumSignal MomentumSignal::from_wavefunction(const GridSpec& g, std::span<const cplx> phi)
{
    const double s = std::sqrt(g.dp());
    CVec v(phi.begin(), phi.end());
    for (auto& x : v) x *= s;
    return MomentumSignal(g, std::move(v));
}

cplx MomentumSignal::wavefunction(std::size_t k) const { return values[k] / std::sqrt(grid.dp()); }

CVec MomentumSignal::wavefunction() const
{
    CVec out(values);
    const double s = 1.0 / std::sqrt(grid.dp());
    for (auto& x : out) x *= s;
    return out;
}

} // namespace hwzak
