#include <doctest.h>

#include <random>

#include "qionss/errors.hpp"
#include "qionss/linear_op.hpp"

using namespace qionss;

namespace {

LinearOpExpr random_expr(std::mt19937_64& rng, const BasisPtr& basis) {
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    LinearOpExpr e = LinearOpExpr::constant(basis, {u(rng), u(rng)});
    for (const char* mode : {"m0", "m1", "m2"}) {
        e += LinearOpExpr(basis, flux_of(mode), {u(rng), u(rng)});
        e += LinearOpExpr(basis, charge_of(mode), {u(rng), u(rng)});
    }
    return e;
}

}  // namespace

TEST_CASE("canonical pair commutes to i hbar") {
    const auto si = si_basis();
    const LinearOpExpr phi(si, flux_of("x"));
    const LinearOpExpr q(si, charge_of("x"));
    CHECK(commutator(phi, q) == cplx{0.0, kHbar});
    CHECK(commutator(q, phi) == cplx{0.0, -kHbar});

    const auto natural = make_basis("natural", 1.0);
    CHECK(commutator(LinearOpExpr(natural, flux_of("x")), LinearOpExpr(natural, charge_of("x"))) == cplx{0.0, 1.0});
}

TEST_CASE("commutator of an expression with itself vanishes") {
    std::mt19937_64 rng(7);
    const auto basis = make_basis("natural", 1.0);
    for (int i = 0; i < 50; ++i) {
        const auto x = random_expr(rng, basis);
        CHECK(std::abs(commutator(x, x)) < 1e-12);
    }
}

TEST_CASE("bilinear expansion: [2 Phi + 3, 5 Q] = 10 i hbar") {
    const auto si = si_basis();
    const auto x = 2.0 * LinearOpExpr(si, flux_of("x")) + 3.0;
    const auto y = 5.0 * LinearOpExpr(si, charge_of("x"));
    const cplx c = commutator(x, y);
    CHECK(c.real() == 0.0);
    CHECK(c.imag() == doctest::Approx(10.0 * kHbar).epsilon(1e-15));
}

TEST_CASE("different modes commute") {
    const auto si = si_basis();
    CHECK(commutator(LinearOpExpr(si, flux_of("a")), LinearOpExpr(si, charge_of("b"))) == cplx{});
}

TEST_CASE("property: antisymmetric and bilinear") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    const auto basis = make_basis("natural", 1.0);
    for (int i = 0; i < 200; ++i) {
        const auto x = random_expr(rng, basis);
        const auto y = random_expr(rng, basis);
        const auto z = random_expr(rng, basis);
        const cplx alpha{u(rng), u(rng)};
        const cplx beta{u(rng), u(rng)};

        CHECK(std::abs(commutator(x, y) + commutator(y, x)) < 1e-12);
        const cplx lhs = commutator(alpha * x + beta * y, z);
        const cplx rhs = alpha * commutator(x, z) + beta * commutator(y, z);
        CHECK(std::abs(lhs - rhs) < 1e-11);
        const cplx lhs2 = commutator(z, alpha * x + beta * y);
        const cplx rhs2 = alpha * commutator(z, x) + beta * commutator(z, y);
        CHECK(std::abs(lhs2 - rhs2) < 1e-11);
    }
}

TEST_CASE("scalars drop out of commutators") {
    const auto basis = make_basis("natural", 1.0);
    const auto x = LinearOpExpr(basis, flux_of("m")) + cplx{4.0, -1.0};
    const auto y = LinearOpExpr(basis, charge_of("m"));
    CHECK(commutator(x, y) == commutator(LinearOpExpr(basis, flux_of("m")), y));
}

TEST_CASE("adjoint conjugates coefficients and scalar") {
    const auto basis = make_basis("natural", 1.0);
    const auto x = cplx{1.0, 2.0} * LinearOpExpr(basis, flux_of("m")) + cplx{0.0, 3.0};
    const auto xd = x.adjoint();
    CHECK(xd.coeff(flux_of("m")) == cplx{1.0, -2.0});
    CHECK(xd.scalar() == cplx{0.0, -3.0});
    CHECK(xd.coeff(charge_of("m")) == cplx{});
}

TEST_CASE("mismatched registries are rejected") {
    const auto a = make_basis("a", 1.0);
    const auto b = make_basis("b", 1.0);
    const LinearOpExpr x(a, flux_of("m"));
    const LinearOpExpr y(b, charge_of("m"));
    CHECK_THROWS_AS(commutator(x, y), DomainError);
    CHECK_THROWS_AS(x + y, DomainError);
}

TEST_CASE("invalid construction") {
    CHECK_THROWS_AS(make_basis("bad", 0.0), DomainError);
    CHECK_THROWS_AS(LinearOpExpr(nullptr), DomainError);
    CHECK_THROWS_AS(LinearOpExpr(si_basis(), flux_of("m"), {std::numeric_limits<double>::infinity(), 0.0}),
                    DomainError);
}
