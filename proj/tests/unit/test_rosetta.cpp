#include <doctest.h>

#include <cmath>
#include <random>

#include "qionss/errors.hpp"
#include "qionss/rosetta.hpp"

using namespace qionss;
using namespace qionss::rosetta;

namespace {

const double kOmega5G = kTwoPi * 5e9;
const WaveContext kCtx = context_from_line({2.5e-7, 1e-10, 1.0});

// mpmath, 50 digits.
constexpr double kOnePhotonPeak = 2.5741154103769472706e-7;
constexpr double kPozarUnitBoson = 3.6403489244686640769e-8;

}  // namespace

TEST_CASE("contexts") {
    CHECK(kCtx.Z0 == doctest::Approx(50.0).epsilon(1e-15));
    CHECK(kCtx.vp == doctest::Approx(2e8).epsilon(1e-15));
    const auto c = context_from_impedance(1e-10, 1.0, 50.0);
    CHECK(c.vp == doctest::Approx(2e8).epsilon(1e-15));
    CHECK_NOTHROW(make_context(1e-10, 1.0, 50.0, 2e8));
    CHECK_THROWS_AS(make_context(1e-10, 1.0, 50.0, 3e8), DomainError);
    CHECK_THROWS_AS(context_from_impedance(0.0, 1.0, 50.0), DomainError);
}

TEST_CASE("phasor construction wraps the phase") {
    CHECK(make_phasor(1.0, -kPi / 2.0, 1.0, Direction::right).phase == doctest::Approx(1.5 * kPi));
    CHECK(make_phasor(1.0, kTwoPi, 1.0, Direction::right).phase == 0.0);
    const auto neg = make_phasor(-2.0, 0.0, 1.0, Direction::left);
    CHECK(neg.magnitude == 2.0);
    CHECK(neg.phase == doctest::Approx(kPi));
    CHECK(neg.direction == Direction::left);
    CHECK_THROWS_AS(make_phasor(1.0, 0.0, 0.0, Direction::right), DomainError);
    CHECK_THROWS_AS(make_phasor(1.0, 0.0, -5.0, Direction::right), DomainError);
}

TEST_CASE("zero phasor maps to zero everywhere") {
    const auto p = make_phasor(0.0, 0.0, kOmega5G, Direction::right);
    CHECK(phasor_to_boson(p, kCtx).value == cplx{});
    CHECK(pozar_wave(p, kCtx) == cplx{});
    CHECK(photon_number(p, kCtx) == 0.0);
}

TEST_CASE("one-photon voltage") {
    CHECK(single_photon_voltage(kOmega5G, kCtx) == doctest::Approx(kOnePhotonPeak).epsilon(1e-14));
    const auto p = make_phasor(kOnePhotonPeak, 0.0, kOmega5G, Direction::right);
    CHECK(photon_number(p, kCtx) == doctest::Approx(1.0).epsilon(1e-12));
    const auto b = phasor_to_boson(p, kCtx);
    CHECK(std::abs(b.value) == doctest::Approx(1.0).epsilon(1e-12));
    // V0 real and positive corresponds to b^dag = i.
    CHECK(std::abs(b.value - cplx{0.0, 1.0}) < 1e-12);
    CHECK(std::abs(boson_lowering_value(b) - cplx{0.0, -1.0}) < 1e-12);

    const auto twice = make_phasor(2.0 * kOnePhotonPeak, 0.0, kOmega5G, Direction::right);
    CHECK(photon_number(twice, kCtx) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("boson to phasor") {
    const auto p = boson_to_phasor({1.0, kOmega5G, Direction::left}, kCtx);
    CHECK(p.magnitude == doctest::Approx(kOnePhotonPeak).epsilon(1e-14));
    CHECK(p.direction == Direction::left);
    const auto q = boson_to_phasor({cplx{0.0, 1.0}, kOmega5G, Direction::right}, kCtx);
    CHECK(std::abs(q.phase) < 1e-15);
}

TEST_CASE("pozar waves") {
    const auto unit_z = context_from_impedance(1.0, 1.0, 1.0);
    const auto p = make_phasor(0.7, 1.1, 3.0, Direction::right);
    CHECK(std::abs(pozar_wave(p, unit_z) - p.complex_amplitude()) < 1e-15);

    CHECK(std::abs(pozar_wave_from_boson({1.0, kOmega5G, Direction::right}, kCtx)) ==
          doctest::Approx(kPozarUnitBoson).epsilon(1e-14));
}

TEST_CASE("property: round trips and route consistency") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> mag(0.0, 1e-5), ph(-10.0, 10.0), lw(8.0, 11.0);
    for (int i = 0; i < 1000; ++i) {
        const Direction dir = i % 2 ? Direction::left : Direction::right;
        const double omega = std::pow(10.0, lw(rng));
        const auto p = make_phasor(mag(rng), ph(rng), omega, dir);
        const auto b = phasor_to_boson(p, kCtx);
        CHECK(b.direction == dir);
        const auto back = boson_to_phasor(b, kCtx);
        const cplx v0 = p.complex_amplitude();
        CHECK(std::abs(back.complex_amplitude() - v0) <= 1e-15 * std::abs(v0) + 1e-300);

        const cplx via_boson = pozar_wave_from_boson(b, kCtx);
        CHECK(std::abs(via_boson - pozar_wave(p, kCtx)) <= 1e-12 * std::abs(via_boson) + 1e-300);

        const cplx bv{ph(rng), ph(rng)};
        const auto forward = boson_to_phasor({bv, omega, dir}, kCtx);
        CHECK(std::abs(phasor_to_boson(forward, kCtx).value - bv) <= 1e-15 * std::abs(bv));
    }
}
