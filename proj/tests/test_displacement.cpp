#include <doctest.h>

#include "hwzak/displacement.hpp"
#include "oracles.hpp"

#include <random>

using namespace hwzak;

namespace {

const GridSpec kGrid = GridSpec::from_cells(8, 16, 2.5);

Signal random_signal(std::mt19937_64& rng) { return Signal(kGrid, oracle::random_values(kGrid.N(), rng)); }

PhasePoint at(long long a, long long b) { return {static_cast<double>(a) * kGrid.dq(), static_cast<double>(b) * kGrid.dp()}; }

} // namespace

TEST_CASE("zero displacement is the identity")
{
    std::mt19937_64 rng(1);
    const Signal s = random_signal(rng);
    CHECK(oracle::max_diff(displace(s, PhasePoint{}).values, s.values) == 0.0);
}

TEST_CASE("delta moves by one cell with unit phase")
{
    Signal d = Signal::zeros(kGrid);
    d.values[kGrid.wrap(0)] = 1.0;
    const Signal out = displace(d, PhasePoint{kGrid.q0(), 0.0});
    CHECK(std::abs(out.values[kGrid.wrap(static_cast<long long>(kGrid.L()))] - 1.0) < 1e-15);
    CHECK(std::abs(out.norm() - 1.0) < 1e-15);
}

TEST_CASE("wavefunction formula of the displacement")
{
    std::mt19937_64 rng(2);
    const Signal s = random_signal(rng);
    const long long a = 5, b = -7;
    const PhasePoint d = at(a, b);
    const Signal out = displace(s, d);
    double err = 0.0;
    for (std::size_t j = 0; j < kGrid.N(); ++j) {
        const std::size_t src = kGrid.wrap(static_cast<long long>(j) - static_cast<long long>(kGrid.N() / 2) - a);
        // Phase uses the unwrapped coordinate: the periodic grid makes the
        // exponent well defined only modulo 2 pi, which integer b guarantees.
        const cplx expect = std::polar(1.0, d.p * (kGrid.q(j) - d.q / 2.0)) * s.values[src];
        err = std::max(err, std::abs(out.values[j] - expect));
    }
    CHECK(err < 1e-12);
}

TEST_CASE("unitarity, inverse and group law")
{
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<long long> u(-300, 300);
    for (int t = 0; t < 50; ++t) {
        const Signal s = random_signal(rng);
        const PhasePoint d1 = at(u(rng), u(rng));
        const PhasePoint d2 = at(u(rng), u(rng));
        const Signal x = displace(s, d1);
        CHECK(std::abs(x.norm() - s.norm()) < 1e-13);
        CHECK(oracle::max_diff(displace(x, PhasePoint{-d1.q, -d1.p}).values, s.values) < 1e-12);

        const Signal lhs = displace(x, d2);
        const Signal sum = displace(s, PhasePoint{d1.q + d2.q, d1.p + d2.p});
        const cplx phase = std::polar(1.0, (d2.p * d1.q - d2.q * d1.p) / 2.0);
        double err = 0.0;
        for (std::size_t j = 0; j < kGrid.N(); ++j) err = std::max(err, std::abs(lhs.values[j] - phase * sum.values[j]));
        CHECK(err < 1e-12);
    }
}

TEST_CASE("Weyl commutation phase")
{
    std::mt19937_64 rng(5);
    const Signal s = random_signal(rng);
    CHECK(weyl_phase_check(s, 0.0, 9 * kGrid.dp()) == 0.0);
    CHECK(weyl_phase_check(s, kGrid.q0(), kGrid.dp()) < 1e-12);
    CHECK(weyl_phase_check(s, 3 * kGrid.dq(), 5 * kGrid.dp()) < 1e-12);
    CHECK(weyl_phase_check(s, -11 * kGrid.dq(), 40 * kGrid.dp()) < 1e-12);
}

TEST_CASE("off-grid displacement is refused")
{
    const Signal s = Signal::zeros(kGrid);
    CHECK_THROWS_AS(displace(s, PhasePoint{0.5 * kGrid.dq(), 0.0}), NonCommensurateDisplacement);
    CHECK_THROWS_AS(displace(s, PhasePoint{0.0, 0.3 * kGrid.dp()}), NonCommensurateDisplacement);
}

TEST_CASE("snapping")
{
    WarningSink w;
    auto r = snap_to_grid(kGrid, PhasePoint{}, &w);
    CHECK(r.point.q == 0.0);
    CHECK(r.point.p == 0.0);
    CHECK(w.empty());

    r = snap_to_grid(kGrid, PhasePoint{1.4 * kGrid.dq(), 0.0}, &w);
    CHECK(r.steps.a == 1);
    CHECK(r.point.q == doctest::Approx(kGrid.dq()));
    CHECK(w.size() == 1);

    r = snap_to_grid(kGrid, PhasePoint{kGrid.q0() / 2 + 0.3 * kGrid.dq(), kGrid.dp() / 3}, &w);
    CHECK(r.point.q == doctest::Approx(kGrid.q0() / 2));
    CHECK(r.point.p == 0.0);
    CHECK(w.size() == 2);
    CHECK(w.back().code == "snapped");
}
