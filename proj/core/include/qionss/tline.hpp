#pragma once

#include <span>
#include <string>

#include "qionss/linear_op.hpp"

namespace qionss::tline {

enum class Direction { right, left };

// +1 for right movers, -1 for left movers.
inline double direction_sign(Direction d) { return d == Direction::right ? 1.0 : -1.0; }

// Lossless line: per-length inductance and capacitance plus the quantization
// length ell over which the line is taken to be periodic.
struct TLineParams {
    double Lp;   // H/m
    double Cp;   // F/m
    double ell;  // m
};

TLineParams make_tline_params(double Lp, double Cp, double ell);

// Signed wavenumber (sign = propagation direction) and omega_k = v_p |k|.
struct ModeSpec {
    double k;
    double omega_k;

    Direction direction() const { return k > 0.0 ? Direction::right : Direction::left; }
};

// Semiclassical value beta substituted for the rotated mode operator b'_k.
struct CoherentModeAmplitude {
    ModeSpec mode;
    cplx beta;
};

double phase_velocity(const TLineParams& t);
double char_impedance(const TLineParams& t);

// Mode with wavenumber k (non-zero, finite).
ModeSpec make_mode(const TLineParams& t, double k);

// n-th mode of the periodic spectrum, k_n = 2 pi n / ell, n != 0.
ModeSpec periodic_mode(const TLineParams& t, int n);

// Canonical-pair label used for mode k unless the caller supplies one.
std::string mode_label(const ModeSpec& m);

struct ModeOps {
    LinearOpExpr b;
    LinearOpExpr b_dag;
};

// b_k = sqrt(w_k C' ell / 2 hbar) Phi_k + i sqrt(1 / (2 C' ell hbar w_k)) Q_k.
ModeOps tline_mode_ops(const TLineParams& t, const ModeSpec& m, const BasisPtr& basis = si_basis());
ModeOps tline_mode_ops(const TLineParams& t, const ModeSpec& m, const BasisPtr& basis,
                       const std::string& label);

// pi/2 phase offset that aligns the mode with microwave phasor conventions: b' = i b.
LinearOpExpr rotate_mode(const LinearOpExpr& b);

// Semiclassical traveling voltage for a set of same-direction modes. Real-valued.
double voltage_wave(const TLineParams& t, std::span<const CoherentModeAmplitude> amps, double z,
                    double time, double hbar = kHbar);

// Same sum before taking the real part; the imaginary part is zero up to rounding.
cplx voltage_wave_complex(const TLineParams& t, std::span<const CoherentModeAmplitude> amps,
                          double z, double time, double hbar = kHbar);

double current_wave(const TLineParams& t, std::span<const CoherentModeAmplitude> amps, double z,
                    double time, double hbar = kHbar);

// Semiclassical node flux of the (unrotated) traveling modes, b_k = -i beta.
double flux_wave(const TLineParams& t, std::span<const CoherentModeAmplitude> amps, double z,
                 double time, double hbar = kHbar);

struct WaveResidual {
    double residual;    // v_p^2 d2Phi/dz2 - d2Phi/dt2
    double space_term;  // v_p^2 d2Phi/dz2
    double time_term;   // d2Phi/dt2
    double scale;       // sum of per-mode bounds on |d2Phi/dt2|, for relative errors
};

// Central differences with spatial step h and time step h / (2 v_p).
// Second-order accurate; the Courant number 1/2 keeps the two truncation
// errors from cancelling so that convergence is observable.
WaveResidual wave_equation_residual(const TLineParams& t,
                                    std::span<const CoherentModeAmplitude> amps, double z,
                                    double time, double h, double hbar = kHbar);

// 2 pi (L' C' ell^2)^(-1/4): maps discrete b'_k onto the continuum field b(omega)
// normalized to [b(w), b^dag(w')] = 2 pi delta(w - w').
double continuum_norm(const TLineParams& t);

// Per-mode voltage prefactor sqrt(hbar w / (2 C' ell)) of the discrete sum.
double discrete_voltage_prefactor(const TLineParams& t, double omega, double hbar = kHbar);

// continuum_norm / (2 pi) * sqrt(hbar w Z0 / 2); equals the discrete prefactor
// when the normalization is consistent.
double continuum_voltage_prefactor(const TLineParams& t, double omega, double hbar = kHbar);

}  // namespace qionss::tline
