#include "qionss/linear_op.hpp"

#include <algorithm>
#include <cmath>

#include "qionss/errors.hpp"

namespace qionss {

namespace {

bool is_finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require_finite(cplx z, const char* what) {
    if (!is_finite(z)) {
        throw DomainError(std::string("LinearOpExpr: non-finite ") + what);
    }
}

}  // namespace

BasisRegistry::BasisRegistry(std::string name, double hbar) : name_(std::move(name)), hbar_(hbar) {
    if (!(hbar > 0.0) || !std::isfinite(hbar)) {
        throw DomainError("BasisRegistry: hbar must be positive and finite");
    }
}

BasisPtr si_basis() {
    static const BasisPtr basis = std::make_shared<const BasisRegistry>("si", kHbar);
    return basis;
}

BasisPtr make_basis(std::string name, double hbar) {
    return std::make_shared<const BasisRegistry>(std::move(name), hbar);
}

LinearOpExpr::LinearOpExpr(BasisPtr basis) : basis_(std::move(basis)) {
    if (!basis_) {
        throw DomainError("LinearOpExpr: null basis registry");
    }
}

LinearOpExpr::LinearOpExpr(BasisPtr basis, const CanonicalOp& op, cplx coeff)
    : LinearOpExpr(std::move(basis)) {
    require_finite(coeff, "coefficient");
    if (coeff != 0.0) {
        coeffs_.emplace(op, coeff);
    }
}

LinearOpExpr LinearOpExpr::constant(BasisPtr basis, cplx value) {
    require_finite(value, "scalar");
    LinearOpExpr e(std::move(basis));
    e.scalar_ = value;
    return e;
}

cplx LinearOpExpr::coeff(const CanonicalOp& op) const {
    auto it = coeffs_.find(op);
    return it == coeffs_.end() ? cplx{} : it->second;
}

LinearOpExpr LinearOpExpr::adjoint() const {
    LinearOpExpr out = *this;
    for (auto& [op, c] : out.coeffs_) {
        c = std::conj(c);
    }
    out.scalar_ = std::conj(scalar_);
    return out;
}

void LinearOpExpr::require_same_basis(const LinearOpExpr& other) const {
    if (basis_ != other.basis_) {
        throw DomainError("LinearOpExpr: expressions belong to different basis registries ('" +
                          basis_->name() + "' vs '" + other.basis_->name() + "')");
    }
}

LinearOpExpr& LinearOpExpr::operator+=(const LinearOpExpr& rhs) {
    require_same_basis(rhs);
    for (const auto& [op, c] : rhs.coeffs_) {
        coeffs_[op] += c;
    }
    scalar_ += rhs.scalar_;
    return *this;
}

LinearOpExpr& LinearOpExpr::operator-=(const LinearOpExpr& rhs) {
    require_same_basis(rhs);
    for (const auto& [op, c] : rhs.coeffs_) {
        coeffs_[op] -= c;
    }
    scalar_ -= rhs.scalar_;
    return *this;
}

LinearOpExpr& LinearOpExpr::operator*=(cplx factor) {
    require_finite(factor, "factor");
    for (auto& [op, c] : coeffs_) {
        c *= factor;
    }
    scalar_ *= factor;
    return *this;
}

LinearOpExpr& LinearOpExpr::operator+=(cplx c) {
    require_finite(c, "scalar");
    scalar_ += c;
    return *this;
}

cplx commutator(const LinearOpExpr& x, const LinearOpExpr& y) {
    if (x.basis() != y.basis()) {
        throw DomainError("commutator: expressions belong to different basis registries");
    }
    // Only flux/charge pairs of the same mode contribute.
    cplx acc{};
    for (const auto& [op, cx] : x.coeffs()) {
        if (op.quadrature == Quadrature::flux) {
            acc += cx * y.coeff(charge_of(op.mode));
        } else {
            acc -= cx * y.coeff(flux_of(op.mode));
        }
    }
    return acc * cplx{0.0, x.basis()->hbar()};
}

double max_abs_difference(const LinearOpExpr& x, const LinearOpExpr& y) {
    LinearOpExpr d = x - y;
    double m = std::abs(d.scalar());
    for (const auto& [op, c] : d.coeffs()) {
        m = std::max(m, std::abs(c));
    }
    return m;
}

}  // namespace qionss
