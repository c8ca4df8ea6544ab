#pragma once

#include <string>
#include <utility>

#include "qionss/linear_op.hpp"

namespace qionss::lc {

// Lumped LC oscillator. Construct through make_lc_params to get validation.
struct LCParams {
    double L;  // H
    double C;  // F
};

// Throws DomainError unless L > 0 and C > 0 (finite).
LCParams make_lc_params(double L, double C);

struct ClassicalState {
    double I;  // A
    double V;  // V
};

// Classical normal-mode amplitudes; units of sqrt(J), not normalized by sqrt(2 hbar omega).
struct NormalModes {
    cplx a;
    cplx a_conj;
};

// Ladder operator pair over the canonical (Phi, Q) basis.
struct LadderOps {
    LinearOpExpr a;
    LinearOpExpr a_dag;
};

// Node flux and node charge re-expressed through the ladder operators.
struct FluxCharge {
    LinearOpExpr flux;
    LinearOpExpr charge;
};

// Name of the single canonical pair used for the lumped oscillator.
inline const std::string kLcMode = "lc";

double resonant_frequency(const LCParams& p);

NormalModes classical_normal_modes(const ClassicalState& s, const LCParams& p);

double classical_energy(const ClassicalState& s, const LCParams& p);

// a = Phi / sqrt(2 L hbar w) + i Q / sqrt(2 C hbar w); [a, a_dag] = 1.
LadderOps lc_ladder_ops(const LCParams& p, const BasisPtr& basis = si_basis(),
                        const std::string& mode = kLcMode);

// Phi = sqrt(L hbar w / 2)(a + a_dag), Q = -i sqrt(C hbar w / 2)(a - a_dag),
// evaluated through the ladder operators of lc_ladder_ops.
FluxCharge flux_charge_from_ladder(const LCParams& p, const BasisPtr& basis = si_basis(),
                                   const std::string& mode = kLcMode);

// Coefficients (c_a, c_adag) such that x = c_a a + c_adag a_dag + scalar.
// Recovered from commutators: c_a = [x, a_dag], c_adag = -[x, a].
std::pair<cplx, cplx> ladder_components(const LinearOpExpr& x, const LadderOps& ladder);

}  // namespace qionss::lc
