#include "qionss/rosetta.hpp"

#include <cmath>

#include "qionss/errors.hpp"

namespace qionss::rosetta {

namespace {

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw DomainError(std::string(what) + " must be positive and finite");
    }
}

double wrap_phase(double phase) {
    double w = std::fmod(phase, kTwoPi);
    if (w < 0.0) {
        w += kTwoPi;
    }
    // fmod can land exactly on 2 pi after the shift for tiny negative inputs.
    if (w >= kTwoPi) {
        w = 0.0;
    }
    return w;
}

const WaveContext& checked(const WaveContext& ctx) {
    require_positive(ctx.Cp, "WaveContext: C'");
    require_positive(ctx.ell, "WaveContext: ell");
    require_positive(ctx.Z0, "WaveContext: Z0");
    require_positive(ctx.vp, "WaveContext: vp");
    return ctx;
}

// sqrt(2 hbar w / (C' ell)): volts per unit boson amplitude.
double volts_per_boson(double omega, const WaveContext& ctx, double hbar) {
    require_positive(omega, "omega");
    checked(ctx);
    return std::sqrt(2.0 * hbar * omega / (ctx.Cp * ctx.ell));
}

const cplx kPlusQuarterTurn{0.0, 1.0};
const cplx kMinusQuarterTurn{0.0, -1.0};

}  // namespace

Phasor make_phasor(double magnitude, double phase, double omega, Direction direction) {
    if (!std::isfinite(magnitude) || !std::isfinite(phase)) {
        throw DomainError("Phasor: magnitude and phase must be finite");
    }
    require_positive(omega, "omega");
    if (magnitude < 0.0) {
        magnitude = -magnitude;
        phase += kPi;
    }
    return {magnitude, wrap_phase(phase), omega, direction};
}

Phasor phasor_from_complex(cplx v0, double omega, Direction direction) {
    return make_phasor(std::abs(v0), std::arg(v0), omega, direction);
}

WaveContext context_from_line(const tline::TLineParams& line) {
    return checked({line.Cp, line.ell, tline::char_impedance(line), tline::phase_velocity(line)});
}

WaveContext context_from_impedance(double Cp, double ell, double Z0) {
    require_positive(Cp, "WaveContext: C'");
    require_positive(Z0, "WaveContext: Z0");
    return checked({Cp, ell, Z0, 1.0 / (Z0 * Cp)});
}

WaveContext make_context(double Cp, double ell, double Z0, double vp, double rel_tol) {
    const WaveContext ctx = checked({Cp, ell, Z0, vp});
    if (std::abs(Z0 * vp * Cp - 1.0) > rel_tol) {
        throw DomainError("WaveContext: Z0 * vp * C' must equal 1 (inconsistent line parameters)");
    }
    return ctx;
}

BosonAmplitude phasor_to_boson(const Phasor& p, const WaveContext& ctx, double hbar) {
    const double scale = volts_per_boson(p.omega, ctx, hbar);
    return {p.complex_amplitude() * kPlusQuarterTurn / scale, p.omega, p.direction};
}

Phasor boson_to_phasor(const BosonAmplitude& b, const WaveContext& ctx, double hbar) {
    const double scale = volts_per_boson(b.omega, ctx, hbar);
    return phasor_from_complex(scale * b.value * kMinusQuarterTurn, b.omega, b.direction);
}

cplx pozar_wave(const Phasor& p, const WaveContext& ctx) {
    require_positive(ctx.Z0, "pozar_wave: Z0");
    return p.complex_amplitude() / std::sqrt(ctx.Z0);
}

cplx pozar_wave_from_boson(const BosonAmplitude& b, const WaveContext& ctx, double hbar) {
    require_positive(b.omega, "omega");
    checked(ctx);
    return std::sqrt(2.0 * hbar * b.omega * ctx.vp / ctx.ell) * b.value * kMinusQuarterTurn;
}

double photon_number(const Phasor& p, const WaveContext& ctx, double hbar) {
    const double v = p.magnitude / volts_per_boson(p.omega, ctx, hbar);
    return v * v;
}

double single_photon_voltage(double omega, const WaveContext& ctx, double hbar) {
    return volts_per_boson(omega, ctx, hbar);
}

cplx boson_lowering_value(const BosonAmplitude& b) { return std::conj(b.value); }

}  // namespace qionss::rosetta
