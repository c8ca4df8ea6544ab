#pragma once

#include <complex>
#include <map>
#include <memory>
#include <string>
#include <utility>

#include "qionss/constants.hpp"

namespace qionss {

using cplx = std::complex<double>;

// A named family of canonical (flux, charge) pairs sharing one value of hbar.
// Within a registry every pair obeys [Phi_m, Q_n] = i hbar delta_mn and all
// other canonical commutators vanish. Registries are compared by identity:
// expressions built over different registries cannot be combined.
class BasisRegistry {
public:
    BasisRegistry(std::string name, double hbar);

    const std::string& name() const noexcept { return name_; }
    double hbar() const noexcept { return hbar_; }

private:
    std::string name_;
    double hbar_;
};

using BasisPtr = std::shared_ptr<const BasisRegistry>;

// Process-wide SI registry with hbar = kHbar.
BasisPtr si_basis();

// Fresh registry, e.g. make_basis("natural", 1.0) for hbar = 1 checks.
BasisPtr make_basis(std::string name, double hbar);

enum class Quadrature { flux, charge };

struct CanonicalOp {
    std::string mode;
    Quadrature quadrature;

    auto operator<=>(const CanonicalOp&) const = default;
};

inline CanonicalOp flux_of(std::string mode) { return {std::move(mode), Quadrature::flux}; }
inline CanonicalOp charge_of(std::string mode) { return {std::move(mode), Quadrature::charge}; }

// Linear combination of canonical flux/charge operators plus a c-number.
// Phi and Q are Hermitian, so the adjoint conjugates every coefficient.
class LinearOpExpr {
public:
    explicit LinearOpExpr(BasisPtr basis);
    LinearOpExpr(BasisPtr basis, const CanonicalOp& op, cplx coeff = 1.0);

    static LinearOpExpr constant(BasisPtr basis, cplx value);

    const BasisPtr& basis() const noexcept { return basis_; }
    const std::map<CanonicalOp, cplx>& coeffs() const noexcept { return coeffs_; }
    cplx scalar() const noexcept { return scalar_; }

    // Zero when the operator does not appear.
    cplx coeff(const CanonicalOp& op) const;

    LinearOpExpr adjoint() const;

    LinearOpExpr& operator+=(const LinearOpExpr& rhs);
    LinearOpExpr& operator-=(const LinearOpExpr& rhs);
    LinearOpExpr& operator*=(cplx factor);
    LinearOpExpr& operator+=(cplx c);

    friend LinearOpExpr operator+(LinearOpExpr lhs, const LinearOpExpr& rhs) { return lhs += rhs; }
    friend LinearOpExpr operator-(LinearOpExpr lhs, const LinearOpExpr& rhs) { return lhs -= rhs; }
    friend LinearOpExpr operator*(cplx f, LinearOpExpr x) { return x *= f; }
    friend LinearOpExpr operator*(LinearOpExpr x, cplx f) { return x *= f; }
    friend LinearOpExpr operator/(LinearOpExpr x, cplx f) { return x *= (1.0 / f); }
    friend LinearOpExpr operator+(LinearOpExpr x, cplx c) { return x += c; }
    friend LinearOpExpr operator-(LinearOpExpr x) { return x *= -1.0; }

private:
    void require_same_basis(const LinearOpExpr& other) const;

    BasisPtr basis_;
    std::map<CanonicalOp, cplx> coeffs_;
    cplx scalar_{0.0, 0.0};
};

// [x, y] as a c-number: sum over modes of (x_Phi y_Q - x_Q y_Phi) * i hbar.
// Throws DomainError when x and y live on different registries.
cplx commutator(const LinearOpExpr& x, const LinearOpExpr& y);

// Largest |coefficient| (including the scalar) of x - y, for approximate comparisons.
double max_abs_difference(const LinearOpExpr& x, const LinearOpExpr& y);

}  // namespace qionss
