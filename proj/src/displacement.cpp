#include "hwzak/displacement.hpp"

#include <cmath>
#include <sstream>

namespace hwzak {
namespace {

constexpr double kStepTol = 1e-9;

long long checked_steps(double value, double step, const char* axis)
{
    const double r = value / step;
    const double n = std::round(r);
    if (!std::isfinite(r) || std::abs(r - n) > kStepTol * std::max(1.0, std::abs(r))) {
        std::ostringstream os;
        os << "displacement " << axis << "=" << value << " is not a multiple of the grid step " << step
           << "; snap it with snap_to_grid first";
        throw NonCommensurateDisplacement(os.str());
    }
    return static_cast<long long>(n);
}

long long pmod(long long x, long long m)
{
    long long r = x % m;
    return r < 0 ? r + m : r;
}

} // namespace

GridSteps to_grid_steps(const GridSpec& g, const PhasePoint& d)
{
    return {checked_steps(d.q, g.dq(), "q"), checked_steps(d.p, g.dp(), "p")};
}

Signal displace(const Signal& s, GridSteps steps)
{
    const auto n = static_cast<long long>(s.grid.N());
    const long long a = steps.a;
    const long long b = pmod(steps.b, 2 * n);
    CVec out(s.values.size());
    // p (q_j - q/2) = pi b (2 (j - N/2) - a) / N; reduce the integer numerator mod 2N.
    for (long long j = 0; j < n; ++j) {
        const long long src = pmod(j - a, n);
        const long long t = pmod(b * pmod(2 * j - n - a, 2 * n), 2 * n);
        const double angle = kPi * static_cast<double>(t) / static_cast<double>(n);
        out[static_cast<std::size_t>(j)] = std::polar(1.0, angle) * s.values[static_cast<std::size_t>(src)];
    }
    return Signal(s.grid, std::move(out));
}

Signal displace(const Signal& s, const PhasePoint& d) { return displace(s, to_grid_steps(s.grid, d)); }

double weyl_phase_check(const Signal& s, double q, double p)
{
    const Signal uv = apply_U(apply_V(s, q), p);
    const Signal vu = apply_V(apply_U(s, p), q);
    const cplx phase = std::polar(1.0, q * p);
    double worst = 0.0;
    for (std::size_t j = 0; j < uv.values.size(); ++j)
        worst = std::max(worst, std::abs(uv.values[j] - phase * vu.values[j]));
    return worst;
}

SnapResult snap_to_grid(const GridSpec& g, const PhasePoint& x, WarningSink* warnings)
{
    SnapResult r;
    r.steps.a = static_cast<long long>(std::llround(x.q / g.dq()));
    r.steps.b = static_cast<long long>(std::llround(x.p / g.dp()));
    r.point = {static_cast<double>(r.steps.a) * g.dq(), static_cast<double>(r.steps.b) * g.dp()};
    r.shift = std::hypot(r.point.q - x.q, r.point.p - x.p);
    if (r.shift > 0.0) {
        std::ostringstream os;
        os << "(" << x.q << ", " << x.p << ") snapped to (" << r.point.q << ", " << r.point.p << ")";
        warn(warnings, "snapped", os.str());
    }
    return r;
}

} // namespace hwzak
