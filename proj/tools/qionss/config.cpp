#include "qionss/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "qionss/errors.hpp"
#include "qionss/quantize_lc.hpp"

namespace qionss::cli {

namespace {

struct RawValue {
    std::string text;
    std::optional<double> number;  // set for JSON numbers
    int line = 0;
};

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

double as_number(const std::string& key, const RawValue& v) {
    if (v.number) {
        return *v.number;
    }
    double out = 0.0;
    const char* first = v.text.data();
    const char* last = first + v.text.size();
    if (!v.text.empty() && *first == '+') {
        ++first;
    }
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last || v.text.empty()) {
        throw ConfigError(key, v.line, "expected a number, got '" + v.text + "'");
    }
    if (!std::isfinite(out)) {
        throw ConfigError(key, v.line, "value must be finite");
    }
    return out;
}

std::uint64_t as_count(const std::string& key, const RawValue& v) {
    std::uint64_t out = 0;
    const char* first = v.text.data();
    const char* last = first + v.text.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec == std::errc{} && ptr == last && !v.text.empty()) {
        return out;
    }
    throw ConfigError(key, v.line, "expected a non-negative integer, got '" + v.text + "'");
}

using Setter = std::function<void(RunConfig&, const std::string&, const RawValue&)>;

template <class T>
Setter number_into(T RunConfig::*block, double T::*field) {
    return [block, field](RunConfig& c, const std::string& k, const RawValue& v) {
        (c.*block).*field = as_number(k, v);
    };
}

template <class T>
Setter optional_number_into(T RunConfig::*block, std::optional<double> T::*field) {
    return [block, field](RunConfig& c, const std::string& k, const RawValue& v) {
        (c.*block).*field = as_number(k, v);
    };
}

const std::map<std::string, Setter>& schema() {
    static const std::map<std::string, Setter> table = [] {
        std::map<std::string, Setter> t;
        t["circuit.L"] = optional_number_into(&RunConfig::circuit, &CircuitBlock::L);
        t["circuit.C"] = optional_number_into(&RunConfig::circuit, &CircuitBlock::C);
        t["circuit.Cc"] = optional_number_into(&RunConfig::circuit, &CircuitBlock::Cc);
        t["circuit.Z0"] = optional_number_into(&RunConfig::circuit, &CircuitBlock::Z0);
        t["circuit.Lp"] = optional_number_into(&RunConfig::circuit, &CircuitBlock::Lp);
        t["circuit.Cp"] = optional_number_into(&RunConfig::circuit, &CircuitBlock::Cp);
        t["circuit.ell"] = number_into(&RunConfig::circuit, &CircuitBlock::ell);

        t["drive.Omega"] = optional_number_into(&RunConfig::drive, &DriveBlock::Omega);
        t["drive.beta_re"] = number_into(&RunConfig::drive, &DriveBlock::beta_re);
        t["drive.beta_im"] = number_into(&RunConfig::drive, &DriveBlock::beta_im);
        t["drive.omega_mod"] = number_into(&RunConfig::drive, &DriveBlock::omega_mod);
        t["drive.t_on"] = number_into(&RunConfig::drive, &DriveBlock::t_on);
        t["drive.t_off"] = number_into(&RunConfig::drive, &DriveBlock::t_off);
        t["drive.noise"] = number_into(&RunConfig::drive, &DriveBlock::noise);
        t["drive.kind"] = [](RunConfig& c, const std::string& k, const RawValue& v) {
            auto kind = response::parse_input_kind(v.text);
            if (!kind) {
                throw ConfigError(k, v.line,
                                  "expected one of constant_coherent, sinusoid, pulse, vacuum; got '" + v.text + "'");
            }
            c.drive.kind = *kind;
        };

        t["sim.t_end"] = optional_number_into(&RunConfig::sim, &SimBlock::t_end);
        t["sim.dt"] = optional_number_into(&RunConfig::sim, &SimBlock::dt);
        t["sim.a0_re"] = number_into(&RunConfig::sim, &SimBlock::a0_re);
        t["sim.a0_im"] = number_into(&RunConfig::sim, &SimBlock::a0_im);
        t["sim.n_traj"] = [](RunConfig& c, const std::string& k, const RawValue& v) {
            c.sim.n_traj = static_cast<std::size_t>(as_count(k, v));
        };
        t["sim.seed"] = [](RunConfig& c, const std::string& k, const RawValue& v) { c.sim.seed = as_count(k, v); };
        t["sim.integrator"] = [](RunConfig& c, const std::string& k, const RawValue& v) {
            if (v.text == "exact") {
                c.sim.integrator = response::Integrator::exact;
            } else if (v.text == "rk4") {
                c.sim.integrator = response::Integrator::rk4;
            } else {
                throw ConfigError(k, v.line, "expected exact or rk4; got '" + v.text + "'");
            }
        };

        t["sweep.omega_min"] = optional_number_into(&RunConfig::sweep, &SweepBlock::omega_min);
        t["sweep.omega_max"] = optional_number_into(&RunConfig::sweep, &SweepBlock::omega_max);
        t["sweep.n_points"] = [](RunConfig& c, const std::string& k, const RawValue& v) {
            c.sweep.n_points = static_cast<std::size_t>(as_count(k, v));
        };
        t["sweep.scale"] = [](RunConfig& c, const std::string& k, const RawValue& v) {
            if (v.text == "linear") {
                c.sweep.scale = SweepScale::linear;
            } else if (v.text == "log") {
                c.sweep.scale = SweepScale::log;
            } else {
                throw ConfigError(k, v.line, "expected linear or log; got '" + v.text + "'");
            }
        };

        t["model.kappa"] = optional_number_into(&RunConfig::model, &ModelOverrides::kappa);
        t["model.delta"] = optional_number_into(&RunConfig::model, &ModelOverrides::delta);

        t["convention"] = [](RunConfig& c, const std::string& k, const RawValue& v) {
            auto conv = openqsys::parse_convention(v.text);
            if (!conv) {
                throw ConfigError(k, v.line, "expected paper or gardiner; got '" + v.text + "'");
            }
            c.convention = *conv;
        };
        return t;
    }();
    return table;
}

void apply(RunConfig& cfg, std::map<std::string, int>& seen, const std::string& key, const RawValue& v) {
    const auto& table = schema();
    auto it = table.find(key);
    if (it == table.end()) {
        throw ConfigError(key, v.line, "unknown field");
    }
    if (auto [pos, inserted] = seen.emplace(key, v.line); !inserted) {
        throw ConfigError(key, v.line, "duplicate field (first set on line " + std::to_string(pos->second) + ")");
    }
    it->second(cfg, key, v);
}

RunConfig parse_key_value(const std::string& text) {
    RunConfig cfg;
    std::map<std::string, int> seen;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        const std::string body = trim(line);
        if (body.empty()) {
            continue;
        }
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("", lineno, "expected 'key = value'");
        }
        const std::string key = trim(std::string_view(body).substr(0, eq));
        std::string value = trim(std::string_view(body).substr(eq + 1));
        if (key.empty()) {
            throw ConfigError("", lineno, "missing key before '='");
        }
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
            value = value.substr(1, value.size() - 2);
        }
        apply(cfg, seen, key, {value, std::nullopt, lineno});
    }
    return cfg;
}

void flatten_json(const nlohmann::json& node, const std::string& prefix, RunConfig& cfg,
                  std::map<std::string, int>& seen) {
    for (const auto& [name, value] : node.items()) {
        const std::string key = prefix.empty() ? name : prefix + "." + name;
        if (value.is_object()) {
            flatten_json(value, key, cfg, seen);
        } else if (value.is_string()) {
            apply(cfg, seen, key, {value.get<std::string>(), std::nullopt, 0});
        } else if (value.is_number()) {
            apply(cfg, seen, key, {value.dump(), value.get<double>(), 0});
        } else {
            throw ConfigError(key, 0, "expected a number or string");
        }
    }
}

RunConfig parse_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        const auto upto = text.substr(0, std::min(text.size(), static_cast<std::size_t>(e.byte)));
        const int line = 1 + static_cast<int>(std::count(upto.begin(), upto.end(), '\n'));
        throw ConfigError("", line, std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ConfigError("", 1, "JSON config must be an object");
    }
    RunConfig cfg;
    std::map<std::string, int> seen;
    flatten_json(doc, "", cfg, seen);
    return cfg;
}

double require(const std::optional<double>& v, const char* field) {
    if (!v) {
        throw ConfigError(field, 0, "missing required field");
    }
    return *v;
}

}  // namespace

ConfigError::ConfigError(const std::string& field, int line, const std::string& message)
    : std::runtime_error([&] {
          std::string s = "config";
          if (line > 0) {
              s += ":" + std::to_string(line);
          }
          if (!field.empty()) {
              s += ": field '" + field + "'";
          }
          return s + ": " + message;
      }()),
      field_(field),
      line_(line) {}

RunConfig parse_config(const std::string& text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        return parse_json(text);
    }
    return parse_key_value(text);
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("", 0, "cannot read '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

ResolvedModel resolve_model(const RunConfig& cfg) {
    const double L = require(cfg.circuit.L, "circuit.L");
    const double C = require(cfg.circuit.C, "circuit.C");
    const auto lc = lc::make_lc_params(L, C);
    const double omega_R = lc::resonant_frequency(lc);
    const double Omega = cfg.drive.Omega.value_or(omega_R);
    if (!(Omega > 0.0)) {
        throw DomainError("drive.Omega must be positive");
    }

    ResolvedModel out{omega_R, Omega, {}, cfg.convention, std::nullopt, {}};
    const double delta = cfg.model.delta.value_or(openqsys::detuning(Omega, omega_R));

    if (cfg.model.kappa) {
        out.params = openqsys::make_model_params(*cfg.model.kappa, delta);
        return out;
    }

    const double Cc = require(cfg.circuit.Cc, "circuit.Cc");
    double Z0;
    if (cfg.circuit.Z0) {
        Z0 = *cfg.circuit.Z0;
        if (cfg.circuit.Lp && cfg.circuit.Cp) {
            const double derived = std::sqrt(*cfg.circuit.Lp / *cfg.circuit.Cp);
            if (std::abs(derived - Z0) > 1e-9 * std::abs(Z0)) {
                throw DomainError("circuit.Z0 disagrees with sqrt(circuit.Lp / circuit.Cp)");
            }
        }
    } else if (cfg.circuit.Lp && cfg.circuit.Cp) {
        if (!(*cfg.circuit.Lp > 0.0) || !(*cfg.circuit.Cp > 0.0)) {
            throw DomainError("circuit.Lp and circuit.Cp must be positive");
        }
        Z0 = std::sqrt(*cfg.circuit.Lp / *cfg.circuit.Cp);
    } else {
        throw ConfigError("circuit.Z0", 0, "missing required field (or give circuit.Lp and circuit.Cp)");
    }

    const auto cp = openqsys::make_coupling_params(Cc, Z0, C, omega_R, Omega);
    out.coupling = cp;
    out.warnings = openqsys::coupling_warnings(cp);
    out.params = openqsys::make_model_params(openqsys::markov_kappa(cp), delta);
    return out;
}

response::InputSignal resolve_input(const RunConfig& cfg) {
    const auto& d = cfg.drive;
    response::InputSignal u;
    u.kind = d.kind;
    u.beta = {d.beta_re, d.beta_im};
    u.omega_mod = d.omega_mod;
    u.t_on = d.t_on;
    u.t_off = d.t_off;
    u.noise_variance = d.noise;
    if (u.kind == response::InputKind::vacuum && u.beta != cplx{}) {
        throw ConfigError("drive.beta_re", 0, "vacuum drive must have zero beta");
    }
    if (u.kind == response::InputKind::pulse && u.t_off < u.t_on) {
        throw ConfigError("drive.t_off", 0, "pulse requires t_off >= t_on");
    }
    if (u.noise_variance < 0.0) {
        throw ConfigError("drive.noise", 0, "must be non-negative");
    }
    return u;
}

}  // namespace qionss::cli
