#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "qionss/openqsys.hpp"
#include "qionss/simulate.hpp"

namespace qionss::cli {

// Syntax errors, unknown or mistyped keys, missing required fields.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& field, int line, const std::string& message);

    const std::string& field() const noexcept { return field_; }
    int line() const noexcept { return line_; }

private:
    std::string field_;
    int line_;
};

struct CircuitBlock {
    std::optional<double> L, C, Cc, Z0, Lp, Cp;
    double ell = 1.0;
};

struct DriveBlock {
    std::optional<double> Omega;
    double beta_re = 0.0;
    double beta_im = 0.0;
    response::InputKind kind = response::InputKind::constant_coherent;
    double omega_mod = 0.0;
    double t_on = 0.0;
    double t_off = 0.0;
    double noise = 1.0;
};

struct SimBlock {
    std::optional<double> t_end, dt;
    std::optional<std::size_t> n_traj;
    std::uint64_t seed = 1;
    double a0_re = 0.0;
    double a0_im = 0.0;
    response::Integrator integrator = response::Integrator::exact;
};

enum class SweepScale { linear, log };

struct SweepBlock {
    std::optional<double> omega_min, omega_max;
    std::size_t n_points = 401;
    SweepScale scale = SweepScale::log;
};

struct ModelOverrides {
    std::optional<double> kappa;
    std::optional<double> delta;
};

struct RunConfig {
    CircuitBlock circuit;
    DriveBlock drive;
    SimBlock sim;
    SweepBlock sweep;
    ModelOverrides model;
    openqsys::Convention convention = openqsys::Convention::paper;
};

// Accepts either `section.key = value` lines (# comments) or, when the first
// non-blank character is '{', a JSON object whose nested objects map onto the
// dotted keys. Throws ConfigError.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

// Model quantities resolved from a config.
struct ResolvedModel {
    double omega_R;
    double Omega;
    openqsys::ModelParams params;
    openqsys::Convention convention;
    std::optional<openqsys::CouplingParams> coupling;  // absent when kappa is overridden
    std::vector<std::string> warnings;
};

// Throws ConfigError for missing inputs and DomainError for physics violations.
ResolvedModel resolve_model(const RunConfig& cfg);

response::InputSignal resolve_input(const RunConfig& cfg);

}  // namespace qionss::cli
