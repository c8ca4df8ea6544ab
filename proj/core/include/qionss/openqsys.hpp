#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "qionss/constants.hpp"
#include "qionss/linear_op.hpp"

namespace qionss::openqsys {

// Sign convention of the drive/readout coupling.
//  paper:    B = -kappa, C = +kappa
//  gardiner: B = +kappa, C = -kappa (state sign flipped; identical H(s))
enum class Convention { paper, gardiner };

std::string_view to_string(Convention c);
std::optional<Convention> parse_convention(std::string_view s);

// Capacitive coupling of the resonator to the line.
struct CouplingParams {
    double Cc;       // F
    double Z0;       // ohm
    double Csys;     // F
    double omega_R;  // rad/s
    std::optional<double> Omega;  // carrier; defaults to omega_R

    double carrier() const { return Omega.value_or(omega_R); }
};

// Largest accepted Cc / Csys; the weak-coupling treatment needs Csys >> Cc.
inline constexpr double kMaxCouplingRatio = 0.1;
// Above this ratio the model is accepted with a warning.
inline constexpr double kWarnCouplingRatio = 0.01;

// Throws DomainError on non-positive values or Cc / Csys >= kMaxCouplingRatio.
CouplingParams make_coupling_params(double Cc, double Z0, double Csys, double omega_R,
                                    std::optional<double> Omega = std::nullopt);

// Human-readable notes for accepted-but-marginal parameters.
std::vector<std::string> coupling_warnings(const CouplingParams& cp);

struct ModelParams {
    double kappa;  // s^(-1/2)
    double delta;  // rad/s
};

ModelParams make_model_params(double kappa, double delta);

// kappa = sqrt(2 pi) (Cc / 4 pi) sqrt(Z0 omega_R / Csys) sqrt(Omega).
double markov_kappa(const CouplingParams& cp);

// (Cc / 4 pi) sqrt(Z0 omega_R / Csys) sqrt(Omega): the interaction-integrand
// coefficient evaluated at the carrier, equal to kappa / sqrt(2 pi).
double markov_integrand_coefficient(const CouplingParams& cp);

double detuning(double omega, double omega_R);

// kappa from the coupling, delta = Omega - omega_R.
ModelParams model_from_coupling(const CouplingParams& cp);

// x' = A x + B u, y = C x + D u with n states and m ports.
class StateSpaceModel {
public:
    using Matrix = Eigen::MatrixXcd;

    // Throws DomainError unless A is n x n, B n x m, C m x n, D m x m with n, m >= 1.
    StateSpaceModel(Matrix A, Matrix B, Matrix C, Matrix D);

    const Matrix& A() const noexcept { return A_; }
    const Matrix& B() const noexcept { return B_; }
    const Matrix& C() const noexcept { return C_; }
    const Matrix& D() const noexcept { return D_; }

    Eigen::Index states() const noexcept { return A_.rows(); }
    Eigen::Index ports() const noexcept { return D_.rows(); }
    bool is_scalar() const noexcept { return states() == 1 && ports() == 1; }

    // Scalar accessors; throw DomainError unless is_scalar().
    cplx a() const;
    cplx b() const;
    cplx c() const;
    cplx d() const;

    Eigen::VectorXcd eigenvalues() const;
    // All eigenvalues of A strictly in the open left half-plane.
    bool is_stable() const;

    static StateSpaceModel scalar(cplx A, cplx B, cplx C, cplx D);

private:
    Matrix A_, B_, C_, D_;
};

// A = -(i delta + kappa^2 / 2), B = -kappa, C = kappa, D = 1 for the paper
// convention; the gardiner convention flips the signs of B and C.
StateSpaceModel build_state_space(const ModelParams& mp, Convention convention = Convention::paper);

struct HamiltonianSummary {
    double h_sys_coeff;        // hbar * delta (J), multiplies a^dag a
    double h_int_coeff;        // hbar * kappa / sqrt(2 pi), post-RWA Markov integrand
    double h_int_markov;       // hbar * (Cc / 4 pi) sqrt(Z0 omega_R / Csys) sqrt(Omega)
    double bath_carrier;       // Omega, the bath frequency reference (rad/s)
    std::string bath_detuning_form;
};

HamiltonianSummary hamiltonian_summary(const CouplingParams& cp, const ModelParams& mp,
                                       double hbar = kHbar);

}  // namespace qionss::openqsys
