#include "qionss/quantize_lc.hpp"

#include <cmath>

#include "qionss/errors.hpp"

namespace qionss::lc {

LCParams make_lc_params(double L, double C) {
    if (!(L > 0.0) || !std::isfinite(L)) {
        throw DomainError("LCParams: inductance L must be positive and finite");
    }
    if (!(C > 0.0) || !std::isfinite(C)) {
        throw DomainError("LCParams: capacitance C must be positive and finite");
    }
    return {L, C};
}

double resonant_frequency(const LCParams& p) {
    const LCParams v = make_lc_params(p.L, p.C);
    return 1.0 / std::sqrt(v.L * v.C);
}

NormalModes classical_normal_modes(const ClassicalState& s, const LCParams& p) {
    const double w = resonant_frequency(p);
    const double scale = 0.5 * std::sqrt(p.L);
    const cplx a = scale * cplx{s.I, w * p.C * s.V};
    return {a, std::conj(a)};
}

double classical_energy(const ClassicalState& s, const LCParams& p) {
    make_lc_params(p.L, p.C);
    return 0.5 * (p.C * s.V * s.V + p.L * s.I * s.I);
}

LadderOps lc_ladder_ops(const LCParams& p, const BasisPtr& basis, const std::string& mode) {
    const double w = resonant_frequency(p);
    const double hbar = basis->hbar();
    const double flux_coeff = 1.0 / std::sqrt(2.0 * p.L * hbar * w);
    const double charge_coeff = 1.0 / std::sqrt(2.0 * p.C * hbar * w);

    LinearOpExpr flux(basis, flux_of(mode));
    LinearOpExpr charge(basis, charge_of(mode));
    LinearOpExpr a = flux_coeff * flux + cplx{0.0, charge_coeff} * charge;
    LinearOpExpr a_dag = a.adjoint();
    return {std::move(a), std::move(a_dag)};
}

FluxCharge flux_charge_from_ladder(const LCParams& p, const BasisPtr& basis, const std::string& mode) {
    const double w = resonant_frequency(p);
    const double hbar = basis->hbar();
    const LadderOps ops = lc_ladder_ops(p, basis, mode);

    LinearOpExpr flux = std::sqrt(p.L * hbar * w / 2.0) * (ops.a + ops.a_dag);
    LinearOpExpr charge = cplx{0.0, -std::sqrt(p.C * hbar * w / 2.0)} * (ops.a - ops.a_dag);
    return {std::move(flux), std::move(charge)};
}

std::pair<cplx, cplx> ladder_components(const LinearOpExpr& x, const LadderOps& ladder) {
    return {commutator(x, ladder.a_dag), -commutator(x, ladder.a)};
}

}  // namespace qionss::lc
