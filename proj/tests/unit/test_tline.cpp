#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "qionss/errors.hpp"
#include "qionss/tline.hpp"

using namespace qionss;
using namespace qionss::tline;

namespace {

const TLineParams kLine50{2.5e-7, 1e-10, 1.0};
const double kOmega5G = kTwoPi * 5e9;

// 50-digit reference values (mpmath), hbar = 1.054571817e-34.
constexpr double kFluxCoeff = 122045524490673320.86;
constexpr double kChargeCoeff = 38848297009867261.73;
constexpr double kContinuumNorm50 = 88857.65876316732494;
constexpr double kOnePhotonPeak = 2.5741154103769472706e-7;

}  // namespace

TEST_CASE("line parameters") {
    CHECK(phase_velocity({1.0, 1.0, 1.0}) == 1.0);
    CHECK(char_impedance({1.0, 1.0, 1.0}) == 1.0);
    CHECK(phase_velocity(kLine50) == doctest::Approx(2e8).epsilon(1e-15));
    CHECK(char_impedance(kLine50) == doctest::Approx(50.0).epsilon(1e-15));
    CHECK_THROWS_AS(make_tline_params(0.0, 1e-10, 1.0), DomainError);
    CHECK_THROWS_AS(make_tline_params(2.5e-7, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(make_tline_params(2.5e-7, 1e-10, -1.0), DomainError);
    CHECK_THROWS_AS(phase_velocity({0.0, 1.0, 1.0}), DomainError);
    CHECK_THROWS_AS(char_impedance({1.0, 0.0, 1.0}), DomainError);
}

TEST_CASE("modes") {
    const auto m = make_mode(kLine50, -3.0);
    CHECK(m.omega_k == doctest::Approx(6e8));
    CHECK(m.direction() == Direction::left);
    const auto p = periodic_mode({1.0, 1.0, 2.0}, 3);
    CHECK(p.k == doctest::Approx(3.0 * kPi));
    CHECK_THROWS_AS(periodic_mode(kLine50, 0), DomainError);
    CHECK_THROWS_AS(make_mode(kLine50, 0.0), DomainError);
}

TEST_CASE("mode operators") {
    const ModeSpec m{kOmega5G / 2e8, kOmega5G};
    const auto ops = tline_mode_ops(kLine50, m);
    const auto label = mode_label(m);
    CHECK(ops.b.coeff(flux_of(label)).real() == doctest::Approx(kFluxCoeff).epsilon(1e-14));
    CHECK(ops.b.coeff(charge_of(label)).imag() == doctest::Approx(kChargeCoeff).epsilon(1e-14));
    CHECK(std::abs(commutator(ops.b, ops.b_dag) - 1.0) <= 1e-12);
    CHECK(commutator(ops.b, ops.b) == cplx{});

    const auto other = tline_mode_ops(kLine50, make_mode(kLine50, -kOmega5G / 2e8));
    CHECK(commutator(ops.b, other.b_dag) == cplx{});
    CHECK(commutator(ops.b, other.b) == cplx{});
}

TEST_CASE("property: mode commutator over random lines and modes") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> lg(-1.0, 1.0);
    std::uniform_int_distribution<int> nd(-40, 40);
    for (int i = 0; i < 200; ++i) {
        const TLineParams t{2.5e-7 * std::pow(10.0, lg(rng)), 1e-10 * std::pow(10.0, lg(rng)),
                            std::pow(10.0, lg(rng))};
        int n = nd(rng);
        if (n == 0) n = 1;
        const auto ops = tline_mode_ops(t, periodic_mode(t, n));
        CHECK(std::abs(commutator(ops.b, ops.b_dag) - 1.0) <= 1e-12);
    }
}

TEST_CASE("rotation") {
    const auto ops = tline_mode_ops(kLine50, make_mode(kLine50, 10.0));
    const auto r = rotate_mode(ops.b);
    CHECK(std::abs(commutator(r, r.adjoint()) - 1.0) <= 1e-12);
    CHECK(max_abs_difference(rotate_mode(r), -ops.b) == 0.0);
    const auto shifted = rotate_mode(ops.b + cplx{5.0, 0.0});
    CHECK(shifted.scalar() == cplx{0.0, 5.0});
}

TEST_CASE("voltage wave") {
    const ModeSpec m = make_mode(kLine50, kOmega5G / 2e8);
    SUBCASE("vacuum amplitude is silent") {
        const std::vector<CoherentModeAmplitude> amps{{m, 0.0}};
        CHECK(voltage_wave(kLine50, amps, 0.3, 1e-9) == 0.0);
        CHECK(current_wave(kLine50, amps, 0.3, 1e-9) == 0.0);
    }
    SUBCASE("single unit mode at the origin") {
        const std::vector<CoherentModeAmplitude> amps{{m, 1.0}};
        CHECK(voltage_wave(kLine50, amps, 0.0, 0.0) == doctest::Approx(kOnePhotonPeak).epsilon(1e-14));
        CHECK(discrete_voltage_prefactor(kLine50, kOmega5G) ==
              doctest::Approx(kOnePhotonPeak / 2.0).epsilon(1e-14));
    }
    SUBCASE("mixed directions are rejected") {
        const std::vector<CoherentModeAmplitude> amps{{m, 1.0}, {make_mode(kLine50, -m.k), 1.0}};
        CHECK_THROWS_AS(voltage_wave(kLine50, amps, 0.0, 0.0), DomainError);
    }
}

TEST_CASE("property: traveling-wave shift invariance and realness") {
    std::mt19937_64 rng(33);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<int> nd(1, 20);
    const TLineParams t{1.0, 1.0, 1.0};
    const double vp = phase_velocity(t);
    for (int trial = 0; trial < 100; ++trial) {
        const double sign = trial % 2 == 0 ? 1.0 : -1.0;
        std::vector<CoherentModeAmplitude> amps;
        for (int j = 0; j < 4; ++j)
            amps.push_back({periodic_mode(t, static_cast<int>(sign) * nd(rng)), {u(rng), u(rng)}});
        const double z = u(rng), time = u(rng), dt = u(rng);
        double bound = 0.0;
        for (const auto& a : amps) bound += 2.0 * discrete_voltage_prefactor(t, a.mode.omega_k, 1.0) * std::abs(a.beta);

        const double v0 = voltage_wave(t, amps, z, time, 1.0);
        const double v1 = voltage_wave(t, amps, z + sign * vp * dt, time + dt, 1.0);
        CHECK(std::abs(v1 - v0) <= 1e-12 * bound);
        CHECK(std::abs(voltage_wave_complex(t, amps, z, time, 1.0).imag()) <= 1e-14 * bound);
    }
}

TEST_CASE("current wave matches its hand expansion") {
    // I = (2 / (L' ell)) sqrt(hbar / (2 w C' ell)) Im(beta e^{-i(wt - kz)})
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const TLineParams t{2.0, 0.5, 1.5};
    for (int i = 0; i < 50; ++i) {
        const ModeSpec m = make_mode(t, 4.0 * u(rng) + 5.0);
        const cplx beta{u(rng), u(rng)};
        const std::vector<CoherentModeAmplitude> amps{{m, beta}};
        const double z = u(rng), time = u(rng);
        const double theta = m.omega_k * time - m.k * z;
        const double want = 2.0 / (t.Lp * t.ell) * std::sqrt(1.0 / (2.0 * m.omega_k * t.Cp * t.ell)) *
                            (beta * std::exp(cplx{0.0, -theta})).imag();
        CHECK(current_wave(t, amps, z, time, 1.0) == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("wave equation residual") {
    const TLineParams t{1.0, 1.0, 1.0};
    const ModeSpec m = periodic_mode(t, 1);
    const double lambda = kTwoPi / m.k;
    SUBCASE("zero field") {
        const std::vector<CoherentModeAmplitude> amps{{m, 0.0}};
        CHECK(wave_equation_residual(t, amps, 0.1, 0.2, lambda / 1000.0, 1.0).residual == 0.0);
    }
    SUBCASE("small at fine steps, second-order convergence") {
        const std::vector<CoherentModeAmplitude> amps{{m, {0.3, -0.8}}};
        const auto r1 = wave_equation_residual(t, amps, 0.1, 0.2, lambda / 1000.0, 1.0);
        const auto r2 = wave_equation_residual(t, amps, 0.1, 0.2, lambda / 2000.0, 1.0);
        CHECK(std::abs(r1.residual) / r1.scale < 1e-4);
        const double ratio = std::abs(r1.residual) / std::abs(r2.residual);
        CHECK(ratio > 3.5);
        CHECK(ratio < 4.5);
    }
    SUBCASE("non-positive step") {
        const std::vector<CoherentModeAmplitude> amps{{m, 1.0}};
        CHECK_THROWS_AS(wave_equation_residual(t, amps, 0.0, 0.0, 0.0), DomainError);
    }
}

TEST_CASE("continuum normalization") {
    CHECK(continuum_norm({1.0, 1.0, 1.0}) == doctest::Approx(kTwoPi).epsilon(1e-15));
    CHECK(continuum_norm(kLine50) == doctest::Approx(kContinuumNorm50).epsilon(1e-14));
    CHECK(continuum_norm({2.5e-7, 1e-10, 4.0}) == doctest::Approx(kContinuumNorm50 / 2.0).epsilon(1e-14));
    CHECK(continuum_voltage_prefactor(kLine50, kOmega5G) ==
          doctest::Approx(discrete_voltage_prefactor(kLine50, kOmega5G)).epsilon(1e-14));
}
