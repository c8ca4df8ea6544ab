#pragma once

#include <optional>

#include "qionss/constants.hpp"
#include "qionss/linear_op.hpp"
#include "qionss/tline.hpp"

namespace qionss::rosetta {

using tline::Direction;

// Peak phasor V0 = magnitude * exp(i phase) of a traveling voltage wave
// (V0+ for right movers, V0- for left movers).
struct Phasor {
    double magnitude;  // V, >= 0
    double phase;      // rad, wrapped to [0, 2 pi)
    double omega;      // rad/s
    Direction direction;

    cplx complex_amplitude() const { return std::polar(magnitude, phase); }
};

// Wraps the phase into [0, 2 pi). A negative magnitude is folded into the phase.
Phasor make_phasor(double magnitude, double phase, double omega, Direction direction);
Phasor phasor_from_complex(cplx v0, double omega, Direction direction);

// Semiclassical scalar standing in for b^dag_k of the matching direction.
struct BosonAmplitude {
    cplx value;
    double omega;  // rad/s
    Direction direction;
};

struct WaveContext {
    double Cp;   // F/m
    double ell;  // m
    double Z0;   // ohm
    double vp;   // m/s
};

// Context derived from a line; Z0 and vp follow from L' and C'.
WaveContext context_from_line(const tline::TLineParams& line);

// Context from C', ell and Z0; vp = 1 / (Z0 C').
WaveContext context_from_impedance(double Cp, double ell, double Z0);

// Validates positivity and, when all four are given explicitly, that
// Z0 * vp * C' = 1 to within rel_tol.
WaveContext make_context(double Cp, double ell, double Z0, double vp, double rel_tol = 1e-9);

BosonAmplitude phasor_to_boson(const Phasor& p, const WaveContext& ctx, double hbar = kHbar);
Phasor boson_to_phasor(const BosonAmplitude& b, const WaveContext& ctx, double hbar = kHbar);

// Power-normalized wave a = V0+ / sqrt(Z0) (b = V0- / sqrt(Z0) for left movers), in sqrt(W).
cplx pozar_wave(const Phasor& p, const WaveContext& ctx);

// The same wave written through the boson amplitude: sqrt(2 hbar w vp / ell) b^dag exp(-i pi/2).
cplx pozar_wave_from_boson(const BosonAmplitude& b, const WaveContext& ctx, double hbar = kHbar);

// Semiclassical occupancy N = C' ell |V0|^2 / (2 hbar w).
double photon_number(const Phasor& p, const WaveContext& ctx, double hbar = kHbar);

// Peak voltage carrying exactly one photon on average at frequency omega.
double single_photon_voltage(double omega, const WaveContext& ctx, double hbar = kHbar);

// Conjugate row (the b_k form) obtained by complex conjugation of the printed b^dag_k row.
cplx boson_lowering_value(const BosonAmplitude& b);

}  // namespace qionss::rosetta
