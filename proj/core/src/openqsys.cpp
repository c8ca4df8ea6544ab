#include "qionss/openqsys.hpp"

#include <cmath>
#include <sstream>

#include "qionss/errors.hpp"

namespace qionss::openqsys {

namespace {

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw DomainError(std::string("CouplingParams: ") + what + " must be positive and finite");
    }
}

}  // namespace

std::string_view to_string(Convention c) { return c == Convention::paper ? "paper" : "gardiner"; }

std::optional<Convention> parse_convention(std::string_view s) {
    if (s == "paper") {
        return Convention::paper;
    }
    if (s == "gardiner") {
        return Convention::gardiner;
    }
    return std::nullopt;
}

CouplingParams make_coupling_params(double Cc, double Z0, double Csys, double omega_R,
                                    std::optional<double> Omega) {
    require_positive(Cc, "Cc");
    require_positive(Z0, "Z0");
    require_positive(Csys, "Csys");
    require_positive(omega_R, "omega_R");
    if (Omega) {
        require_positive(*Omega, "Omega");
    }
    const double ratio = Cc / Csys;
    if (ratio >= kMaxCouplingRatio) {
        std::ostringstream os;
        os << "CouplingParams: Cc / Csys = " << ratio << " violates the weak-coupling requirement (< "
           << kMaxCouplingRatio << ")";
        throw DomainError(os.str());
    }
    return {Cc, Z0, Csys, omega_R, Omega};
}

std::vector<std::string> coupling_warnings(const CouplingParams& cp) {
    std::vector<std::string> out;
    const double ratio = cp.Cc / cp.Csys;
    if (ratio > kWarnCouplingRatio) {
        std::ostringstream os;
        os << "Cc / Csys = " << ratio << " exceeds " << kWarnCouplingRatio
           << "; the Markov coupling estimate is marginal";
        out.push_back(os.str());
    }
    return out;
}

ModelParams make_model_params(double kappa, double delta) {
    if (!(kappa >= 0.0) || !std::isfinite(kappa)) {
        throw DomainError("ModelParams: kappa must be finite and non-negative");
    }
    if (!std::isfinite(delta)) {
        throw DomainError("ModelParams: delta must be finite");
    }
    return {kappa, delta};
}

double markov_integrand_coefficient(const CouplingParams& cp) {
    const CouplingParams v = make_coupling_params(cp.Cc, cp.Z0, cp.Csys, cp.omega_R, cp.Omega);
    return v.Cc / (4.0 * kPi) * std::sqrt(v.Z0 * v.omega_R / v.Csys) * std::sqrt(v.carrier());
}

double markov_kappa(const CouplingParams& cp) {
    return std::sqrt(kTwoPi) * markov_integrand_coefficient(cp);
}

double detuning(double omega, double omega_R) {
    if (!std::isfinite(omega) || !std::isfinite(omega_R)) {
        throw DomainError("detuning: frequencies must be finite");
    }
    return omega - omega_R;
}

ModelParams model_from_coupling(const CouplingParams& cp) {
    return make_model_params(markov_kappa(cp), detuning(cp.carrier(), cp.omega_R));
}

StateSpaceModel::StateSpaceModel(Matrix A, Matrix B, Matrix C, Matrix D)
    : A_(std::move(A)), B_(std::move(B)), C_(std::move(C)), D_(std::move(D)) {
    const auto n = A_.rows();
    const auto m = D_.rows();
    if (n < 1 || m < 1) {
        throw DomainError("StateSpaceModel: state and port counts must be at least 1");
    }
    if (A_.cols() != n || B_.rows() != n || B_.cols() != m || C_.rows() != m || C_.cols() != n ||
        D_.cols() != m) {
        std::ostringstream os;
        os << "StateSpaceModel: inconsistent dimensions A " << A_.rows() << "x" << A_.cols() << ", B "
           << B_.rows() << "x" << B_.cols() << ", C " << C_.rows() << "x" << C_.cols() << ", D "
           << D_.rows() << "x" << D_.cols();
        throw DomainError(os.str());
    }
    if (!A_.allFinite() || !B_.allFinite() || !C_.allFinite() || !D_.allFinite()) {
        throw DomainError("StateSpaceModel: non-finite matrix entry");
    }
}

StateSpaceModel StateSpaceModel::scalar(cplx A, cplx B, cplx C, cplx D) {
    return StateSpaceModel(Matrix::Constant(1, 1, A), Matrix::Constant(1, 1, B),
                           Matrix::Constant(1, 1, C), Matrix::Constant(1, 1, D));
}

#define QIONSS_SCALAR_ACCESSOR(name, member)                                        \
    cplx StateSpaceModel::name() const {                                            \
        if (!is_scalar()) {                                                         \
            throw DomainError("StateSpaceModel: scalar access on a non-1x1 model"); \
        }                                                                           \
        return member(0, 0);                                                        \
    }
QIONSS_SCALAR_ACCESSOR(a, A_)
QIONSS_SCALAR_ACCESSOR(b, B_)
QIONSS_SCALAR_ACCESSOR(c, C_)
QIONSS_SCALAR_ACCESSOR(d, D_)
#undef QIONSS_SCALAR_ACCESSOR

Eigen::VectorXcd StateSpaceModel::eigenvalues() const {
    if (states() == 1) {
        return A_.col(0);
    }
    Eigen::ComplexEigenSolver<Matrix> solver(A_, /*computeEigenvectors=*/false);
    return solver.eigenvalues();
}

bool StateSpaceModel::is_stable() const { return (eigenvalues().real().array() < 0.0).all(); }

StateSpaceModel build_state_space(const ModelParams& mp, Convention convention) {
    const ModelParams v = make_model_params(mp.kappa, mp.delta);
    const cplx A = -cplx{v.kappa * v.kappa / 2.0, v.delta};
    const double sign = convention == Convention::paper ? 1.0 : -1.0;
    return StateSpaceModel::scalar(A, -sign * v.kappa, sign * v.kappa, 1.0);
}

HamiltonianSummary hamiltonian_summary(const CouplingParams& cp, const ModelParams& mp, double hbar) {
    const double integrand = markov_integrand_coefficient(cp);
    return {
        hbar * mp.delta,
        hbar * mp.kappa / std::sqrt(kTwoPi),
        hbar * integrand,
        cp.carrier(),
        "H_bath = hbar * integral over (-inf, inf) of (omega - Omega) b^dag(omega) b(omega) d omega",
    };
}

}  // namespace qionss::openqsys
