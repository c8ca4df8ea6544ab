#include "qionss/tline.hpp"

#include <cmath>
#include <cstdio>

#include "qionss/constants.hpp"
#include "qionss/errors.hpp"

namespace qionss::tline {

namespace {

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw DomainError(std::string("TLineParams: ") + what + " must be positive and finite");
    }
}

const TLineParams& checked(const TLineParams& t) {
    require_positive(t.Lp, "L'");
    require_positive(t.Cp, "C'");
    require_positive(t.ell, "ell");
    return t;
}

void require_single_direction(std::span<const CoherentModeAmplitude> amps) {
    if (amps.empty()) {
        return;
    }
    const Direction d = amps.front().mode.direction();
    for (const auto& m : amps) {
        if (m.mode.direction() != d) {
            throw DomainError("traveling wave: modes mix propagation directions; evaluate each direction separately");
        }
    }
}

double phase_argument(const ModeSpec& m, double z, double time) { return m.omega_k * time - m.k * z; }

}  // namespace

TLineParams make_tline_params(double Lp, double Cp, double ell) { return checked({Lp, Cp, ell}); }

double phase_velocity(const TLineParams& t) {
    checked(t);
    return 1.0 / std::sqrt(t.Lp * t.Cp);
}

double char_impedance(const TLineParams& t) {
    checked(t);
    return std::sqrt(t.Lp / t.Cp);
}

ModeSpec make_mode(const TLineParams& t, double k) {
    if (k == 0.0 || !std::isfinite(k)) {
        throw DomainError("ModeSpec: wavenumber must be non-zero and finite");
    }
    return {k, phase_velocity(t) * std::abs(k)};
}

ModeSpec periodic_mode(const TLineParams& t, int n) {
    checked(t);
    if (n == 0) {
        throw DomainError("periodic_mode: n = 0 is not a propagating mode");
    }
    return make_mode(t, kTwoPi * n / t.ell);
}

std::string mode_label(const ModeSpec& m) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "k=%.17g", m.k);
    return buf;
}

ModeOps tline_mode_ops(const TLineParams& t, const ModeSpec& m, const BasisPtr& basis) {
    return tline_mode_ops(t, m, basis, mode_label(m));
}

ModeOps tline_mode_ops(const TLineParams& t, const ModeSpec& m, const BasisPtr& basis,
                       const std::string& label) {
    checked(t);
    if (!(m.omega_k > 0.0)) {
        throw DomainError("tline_mode_ops: omega_k must be positive");
    }
    const double hbar = basis->hbar();
    const double c_ell = t.Cp * t.ell;
    const double flux_coeff = std::sqrt(m.omega_k * c_ell / (2.0 * hbar));
    const double charge_coeff = std::sqrt(1.0 / (2.0 * c_ell * hbar * m.omega_k));

    LinearOpExpr b = flux_coeff * LinearOpExpr(basis, flux_of(label)) +
                     cplx{0.0, charge_coeff} * LinearOpExpr(basis, charge_of(label));
    LinearOpExpr b_dag = b.adjoint();
    return {std::move(b), std::move(b_dag)};
}

LinearOpExpr rotate_mode(const LinearOpExpr& b) { return cplx{0.0, 1.0} * b; }

cplx voltage_wave_complex(const TLineParams& t, std::span<const CoherentModeAmplitude> amps,
                          double z, double time, double hbar) {
    checked(t);
    require_single_direction(amps);
    cplx sum{};
    for (const auto& m : amps) {
        const double pref = discrete_voltage_prefactor(t, m.mode.omega_k, hbar);
        const double theta = phase_argument(m.mode, z, time);
        const cplx fwd = std::polar(1.0, -theta);
        const cplx bwd = std::polar(1.0, theta);
        sum += pref * (m.beta * fwd + std::conj(m.beta) * bwd);
    }
    return sum;
}

double voltage_wave(const TLineParams& t, std::span<const CoherentModeAmplitude> amps, double z,
                    double time, double hbar) {
    return voltage_wave_complex(t, amps, z, time, hbar).real();
}

double current_wave(const TLineParams& t, std::span<const CoherentModeAmplitude> amps, double z,
                    double time, double hbar) {
    checked(t);
    require_single_direction(amps);
    cplx sum{};
    for (const auto& m : amps) {
        const double pref = std::sqrt(hbar / (2.0 * m.mode.omega_k * t.Cp * t.ell));
        const double theta = phase_argument(m.mode, z, time);
        sum += pref * (std::conj(m.beta) * std::polar(1.0, theta) - m.beta * std::polar(1.0, -theta));
    }
    return (cplx{0.0, 1.0} / (t.Lp * t.ell) * sum).real();
}

double flux_wave(const TLineParams& t, std::span<const CoherentModeAmplitude> amps, double z,
                 double time, double hbar) {
    checked(t);
    double sum = 0.0;
    for (const auto& m : amps) {
        const double pref = std::sqrt(hbar / (2.0 * m.mode.omega_k * t.Cp * t.ell));
        const cplx b = cplx{0.0, -1.0} * m.beta;
        sum += 2.0 * pref * (b * std::polar(1.0, -phase_argument(m.mode, z, time))).real();
    }
    return sum;
}

WaveResidual wave_equation_residual(const TLineParams& t,
                                    std::span<const CoherentModeAmplitude> amps, double z,
                                    double time, double h, double hbar) {
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw DomainError("wave_equation_residual: step h must be positive");
    }
    const double vp = phase_velocity(t);
    const double tau = h / (2.0 * vp);
    auto phi = [&](double zz, double tt) { return flux_wave(t, amps, zz, tt, hbar); };

    const double centre = phi(z, time);
    const double d2z = (phi(z + h, time) - 2.0 * centre + phi(z - h, time)) / (h * h);
    const double d2t = (phi(z, time + tau) - 2.0 * centre + phi(z, time - tau)) / (tau * tau);

    double scale = 0.0;
    for (const auto& m : amps) {
        const double pref = std::sqrt(hbar / (2.0 * m.mode.omega_k * t.Cp * t.ell));
        scale += 2.0 * pref * std::abs(m.beta) * m.mode.omega_k * m.mode.omega_k;
    }
    const double space = vp * vp * d2z;
    return {space - d2t, space, d2t, scale};
}

double continuum_norm(const TLineParams& t) {
    checked(t);
    return kTwoPi * std::pow(t.Lp * t.Cp * t.ell * t.ell, -0.25);
}

double discrete_voltage_prefactor(const TLineParams& t, double omega, double hbar) {
    return std::sqrt(hbar * omega / (2.0 * t.Cp * t.ell));
}

double continuum_voltage_prefactor(const TLineParams& t, double omega, double hbar) {
    return continuum_norm(t) / kTwoPi * std::sqrt(hbar * omega * char_impedance(t) / 2.0);
}

}  // namespace qionss::tline
