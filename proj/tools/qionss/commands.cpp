#include "qionss/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "qionss/config.hpp"
#include "qionss/errors.hpp"
#include "qionss/openqsys.hpp"
#include "qionss/rosetta.hpp"
#include "qionss/simulate.hpp"
#include "qionss/transfer_function.hpp"
#include "qionss/verify.hpp"

#ifndef QIONSS_VERSION
#define QIONSS_VERSION "0.0.0"
#endif

namespace qionss::cli {

std::string fmt_num(double x) {
    if (x == 0.0) {
        x = 0.0;  // drop the sign of -0
    }
    return fmt::format("{:.17g}", x);
}

namespace {

// Minimal ordered JSON object writer; values are preformatted.
class JsonObject {
public:
    JsonObject& number(const std::string& key, double v) { return raw(key, fmt_num(v)); }
    JsonObject& optional_number(const std::string& key, std::optional<double> v) {
        return raw(key, v ? fmt_num(*v) : "null");
    }
    JsonObject& string(const std::string& key, const std::string& v) { return raw(key, "\"" + v + "\""); }
    JsonObject& object(const std::string& key, const JsonObject& v) { return raw(key, v.str()); }
    JsonObject& raw(const std::string& key, const std::string& v) {
        fields_.emplace_back(key, v);
        return *this;
    }
    std::string str() const {
        std::string s = "{";
        for (std::size_t i = 0; i < fields_.size(); ++i) {
            s += (i ? ", \"" : "\"") + fields_[i].first + "\": " + fields_[i].second;
        }
        return s + "}";
    }

private:
    std::vector<std::pair<std::string, std::string>> fields_;
};

std::string timestamp_utc() {
    std::time_t now;
    if (const char* sde = std::getenv("SOURCE_DATE_EPOCH")) {
        now = static_cast<std::time_t>(std::strtoll(sde, nullptr, 10));
    } else {
        now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    }
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

JsonObject model_echo(const ResolvedModel& rm, const openqsys::StateSpaceModel& ssm) {
    JsonObject m;
    m.number("kappa", rm.params.kappa)
        .number("delta", rm.params.delta)
        .string("convention", std::string(openqsys::to_string(rm.convention)))
        .number("omega_R", rm.omega_R)
        .number("Omega", rm.Omega)
        .number("A_re", ssm.a().real())
        .number("A_im", ssm.a().imag())
        .number("B", ssm.b().real())
        .number("C", ssm.c().real())
        .number("D", ssm.d().real());
    return m;
}

void emit_envelope(const std::string& command, const ResolvedModel& rm, const openqsys::StateSpaceModel& ssm,
                   const CommandOptions& opts, std::optional<std::uint64_t> seed, std::ostream& err) {
    JsonObject env;
    env.string("tool", "qionss")
        .string("version", QIONSS_VERSION)
        .string("command", command)
        .object("model", model_echo(rm, ssm))
        .string("data", opts.out_path.value_or("stdout"))
        .optional_number("seed", seed ? std::optional<double>(static_cast<double>(*seed)) : std::nullopt)
        .string("timestamp", timestamp_utc());
    if (opts.envelope_path) {
        std::ofstream f(*opts.envelope_path);
        if (!f) {
            throw std::runtime_error("cannot write envelope to '" + *opts.envelope_path + "'");
        }
        f << env.str() << '\n';
    } else {
        err << env.str() << '\n';
    }
}

void emit_warnings(const ResolvedModel& rm, std::ostream& err) {
    for (const auto& w : rm.warnings) {
        err << "warning: " << w << '\n';
    }
}

// Runs body, mapping failures onto the documented exit codes.
template <class F>
int guarded(std::ostream& err, F&& body) {
    try {
        return body();
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitPhysicsError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfigError;
    }
}

// Writes to --out when given, otherwise to `out`.
template <class F>
void with_output(const CommandOptions& opts, std::ostream& out, F&& write) {
    if (opts.out_path) {
        std::ofstream f(*opts.out_path);
        if (!f) {
            throw std::runtime_error("cannot write '" + *opts.out_path + "'");
        }
        write(f);
    } else {
        write(out);
    }
}

}  // namespace

int cmd_model(const std::string& config_path, const CommandOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const RunConfig cfg = load_config(config_path);
        const ResolvedModel rm = resolve_model(cfg);
        emit_warnings(rm, err);
        const auto ssm = openqsys::build_state_space(rm.params, rm.convention);
        const auto pz = response::poles_zeros(response::transfer_function(ssm));

        std::optional<cplx> pole, zero;
        if (!pz.poles.empty()) {
            pole = pz.poles.front();
        }
        if (!pz.zeros.empty()) {
            zero = pz.zeros.front();
        }
        auto part = [](const std::optional<cplx>& z, bool imag) -> std::optional<double> {
            if (!z) {
                return std::nullopt;
            }
            return imag ? z->imag() : z->real();
        };

        JsonObject j;
        j.number("kappa", rm.params.kappa)
            .number("delta", rm.params.delta)
            .number("A_re", ssm.a().real())
            .number("A_im", ssm.a().imag())
            .number("B", ssm.b().real())
            .number("C", ssm.c().real())
            .number("D", ssm.d().real())
            .optional_number("pole_re", part(pole, false))
            .optional_number("pole_im", part(pole, true))
            .optional_number("zero_re", part(zero, false))
            .optional_number("zero_im", part(zero, true));
        with_output(opts, out, [&](std::ostream& o) { o << j.str() << '\n'; });
        emit_envelope("model", rm, ssm, opts, std::nullopt, err);
        return kExitOk;
    });
}

int cmd_freq(const std::string& config_path, const CommandOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const RunConfig cfg = load_config(config_path);
        const auto& sw = cfg.sweep;
        if (!sw.omega_min) {
            throw ConfigError("sweep.omega_min", 0, "missing required field");
        }
        if (!sw.omega_max) {
            throw ConfigError("sweep.omega_max", 0, "missing required field");
        }
        if (*sw.omega_min >= *sw.omega_max) {
            throw ConfigError("sweep.omega_min", 0, "must be below sweep.omega_max");
        }
        if (sw.n_points == 0) {
            throw ConfigError("sweep.n_points", 0, "must be at least 1");
        }
        if (sw.scale == SweepScale::log && !(*sw.omega_min > 0.0)) {
            throw ConfigError("sweep.omega_min", 0, "log scale requires a positive lower bound");
        }

        const ResolvedModel rm = resolve_model(cfg);
        emit_warnings(rm, err);
        const auto ssm = openqsys::build_state_space(rm.params, rm.convention);
        const auto tf = response::transfer_function(ssm);
        const auto grid = sw.scale == SweepScale::linear
                              ? response::linear_grid(*sw.omega_min, *sw.omega_max, sw.n_points)
                              : response::log_grid(*sw.omega_min, *sw.omega_max, sw.n_points);
        const auto rows = response::freq_response(tf, grid);

        with_output(opts, out, [&](std::ostream& o) {
            o << "omega_offset,omega_abs,H_re,H_im,mag,phase_rad,group_delay_s\n";
            for (const auto& r : rows) {
                o << fmt_num(r.omega) << ',' << fmt_num(rm.Omega + r.omega) << ',' << fmt_num(r.H.real()) << ','
                  << fmt_num(r.H.imag()) << ',' << fmt_num(r.magnitude) << ',' << fmt_num(r.phase) << ','
                  << fmt_num(r.group_delay) << '\n';
            }
        });
        emit_envelope("freq", rm, ssm, opts, std::nullopt, err);
        return kExitOk;
    });
}

int cmd_time(const std::string& config_path, const CommandOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const RunConfig cfg = load_config(config_path);
        if (!cfg.sim.t_end) {
            throw ConfigError("sim.t_end", 0, "missing required field");
        }
        if (!cfg.sim.dt) {
            throw ConfigError("sim.dt", 0, "missing required field");
        }
        if (!(*cfg.sim.dt > 0.0)) {
            throw ConfigError("sim.dt", 0, "must be positive");
        }
        if (!(*cfg.sim.t_end >= 0.0)) {
            throw ConfigError("sim.t_end", 0, "must be non-negative");
        }
        if (cfg.sim.n_traj && *cfg.sim.n_traj == 0) {
            throw ConfigError("sim.n_traj", 0, "must be at least 1");
        }

        const ResolvedModel rm = resolve_model(cfg);
        emit_warnings(rm, err);
        const auto input = resolve_input(cfg);
        const auto ssm = openqsys::build_state_space(rm.params, rm.convention);
        const auto grid = response::grid_until(0.0, *cfg.sim.t_end, *cfg.sim.dt);
        const cplx a0{cfg.sim.a0_re, cfg.sim.a0_im};

        const auto mean = response::simulate_mean(ssm, input, grid, a0, cfg.sim.integrator);
        std::optional<response::TimeSeries> ens_mean;
        std::vector<double> ens_var;
        if (cfg.sim.n_traj) {
            const auto ens = response::simulate_stochastic(ssm, input, grid, *cfg.sim.n_traj, cfg.sim.seed, a0,
                                                           opts.threads);
            ens_mean = ens.mean();
            ens_var = ens.variance();
        }

        with_output(opts, out, [&](std::ostream& o) {
            o << "t,a_re,a_im,bin_re,bin_im,bout_re,bout_im";
            if (ens_mean) {
                o << ",bout_mean_re,bout_mean_im,bout_var";
            }
            o << '\n';
            for (std::size_t k = 0; k < grid.size(); ++k) {
                const cplx a = mean.a.values[k];
                const cplx bin = mean.b_in.values[k];
                const cplx bout = mean.b_out.values[k];
                o << fmt_num(grid.time(k)) << ',' << fmt_num(a.real()) << ',' << fmt_num(a.imag()) << ','
                  << fmt_num(bin.real()) << ',' << fmt_num(bin.imag()) << ',' << fmt_num(bout.real()) << ','
                  << fmt_num(bout.imag());
                if (ens_mean) {
                    const cplx m = ens_mean->values[k];
                    o << ',' << fmt_num(m.real()) << ',' << fmt_num(m.imag()) << ',' << fmt_num(ens_var[k]);
                }
                o << '\n';
            }
        });
        emit_envelope("time", rm, ssm, opts,
                      cfg.sim.n_traj ? std::optional<std::uint64_t>(cfg.sim.seed) : std::nullopt, err);
        return kExitOk;
    });
}

int cmd_rosetta(const RosettaOptions& o, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        rosetta::Direction dir;
        if (o.direction == "right") {
            dir = rosetta::Direction::right;
        } else if (o.direction == "left") {
            dir = rosetta::Direction::left;
        } else {
            throw ConfigError("--direction", 0, "expected right or left");
        }
        const auto ctx = rosetta::context_from_impedance(o.cprime, o.ell, o.z0);
        const auto phasor = rosetta::make_phasor(o.v0_mag, o.v0_phase, o.omega, dir);
        const auto boson = rosetta::phasor_to_boson(phasor, ctx);
        const cplx wave = rosetta::pozar_wave(phasor, ctx);

        JsonObject j;
        j.string("direction", o.direction)
            .string("wave", dir == rosetta::Direction::right ? "a" : "b")
            .number("boson_re", boson.value.real())
            .number("boson_im", boson.value.imag())
            .number("photon_number", rosetta::photon_number(phasor, ctx))
            .number("pozar_a_re", wave.real())
            .number("pozar_a_im", wave.imag());
        if (o.invert) {
            const auto back = rosetta::boson_to_phasor(boson, ctx);
            j.number("v0_mag", back.magnitude).number("v0_phase", back.phase);
        }
        out << j.str() << '\n';
        return kExitOk;
    });
}

int cmd_verify(bool inject_b_sign_fault, unsigned threads, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        VerifyOptions vo;
        vo.flip_b_sign = inject_b_sign_fault;
        vo.threads = threads;
        const bool ok = print_report(run_verify(vo), out);
        return ok ? kExitOk : kExitVerifyFailed;
    });
}

namespace {

std::optional<unsigned> threads_from_env(std::ostream& err) {
    const char* raw = std::getenv("QIONSS_THREADS");
    if (!raw || !*raw) {
        return 0u;
    }
    char* end = nullptr;
    const long v = std::strtol(raw, &end, 10);
    if (*end != '\0' || v < 0) {
        err << "error: QIONSS_THREADS must be a non-negative integer\n";
        return std::nullopt;
    }
    return static_cast<unsigned>(v);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    const auto threads = threads_from_env(err);
    if (!threads) {
        return kExitConfigError;
    }

    CLI::App app{"Single-port quantum microwave network modeling: LC resonator coupled to a transmission line"};
    app.require_subcommand(1);

    CommandOptions copts;
    copts.threads = *threads;
    std::string config_path;
    std::string out_path;
    std::string envelope_path;

    auto add_config_command = [&](const char* name, const char* help) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("config", config_path, "Config file (dotted key = value, or JSON)")->required();
        sub->add_option("--envelope", envelope_path, "Write run metadata JSON here instead of stderr");
        return sub;
    };
    auto* model = add_config_command("model", "Print the resolved state-space model as JSON");
    auto* freq = add_config_command("freq", "Frequency response sweep as CSV");
    auto* time = add_config_command("time", "Time-domain mean (and optional ensemble) as CSV");
    for (auto* sub : {model, freq, time}) {
        sub->add_option("--out", out_path, "Write output to a file instead of stdout");
    }

    RosettaOptions ropts;
    std::vector<double> v0;
    auto* ros = app.add_subcommand("rosetta", "Convert a voltage phasor into boson / power-wave amplitudes");
    ros->add_option("--v0", v0, "Phasor magnitude (V) and phase (rad): MAG,PHASE")
        ->required()
        ->expected(2)
        ->delimiter(',');
    ros->add_option("--omega", ropts.omega, "Angular frequency (rad/s)")->required();
    ros->add_option("--cprime", ropts.cprime, "Capacitance per length (F/m)")->required();
    ros->add_option("--ell", ropts.ell, "Quantization length (m)")->required();
    ros->add_option("--z0", ropts.z0, "Characteristic impedance (ohm)")->required();
    ros->add_option("--direction", ropts.direction, "right (V0+) or left (V0-)");
    ros->add_flag("--invert", ropts.invert, "Also convert the boson amplitude back to a phasor");

    bool inject = false;
    std::string fault;
    auto* verify = app.add_subcommand("verify", "Run the built-in invariant suite");
    verify->add_option("--inject-fault", fault, "Test hook: b-sign")->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream sout, serr;
        const int code = app.exit(e, sout, serr);
        out << sout.str();
        err << serr.str();
        return code == 0 ? kExitOk : kExitConfigError;
    }

    if (!out_path.empty()) {
        copts.out_path = out_path;
    }
    if (!envelope_path.empty()) {
        copts.envelope_path = envelope_path;
    }

    if (*model) {
        return cmd_model(config_path, copts, out, err);
    }
    if (*freq) {
        return cmd_freq(config_path, copts, out, err);
    }
    if (*time) {
        return cmd_time(config_path, copts, out, err);
    }
    if (*ros) {
        ropts.v0_mag = v0.at(0);
        ropts.v0_phase = v0.at(1);
        return cmd_rosetta(ropts, out, err);
    }
    if (!fault.empty()) {
        if (fault != "b-sign") {
            err << "error: unknown fault '" << fault << "'\n";
            return kExitConfigError;
        }
        inject = true;
    }
    return cmd_verify(inject, copts.threads, out, err);
}

}  // namespace qionss::cli
