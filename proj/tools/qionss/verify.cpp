#include "qionss/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <ostream>
#include <random>

#include <fmt/format.h>

#include "qionss/openqsys.hpp"
#include "qionss/quantize_lc.hpp"
#include "qionss/rosetta.hpp"
#include "qionss/simulate.hpp"
#include "qionss/tline.hpp"
#include "qionss/transfer_function.hpp"

namespace qionss::cli {

namespace {

using openqsys::StateSpaceModel;

// Independent high-precision evaluation of the worked coupling example
// (Cc = 1 fF, Z0 = 50 ohm, omega_R = Omega = 2 pi 5 GHz, C = 1 pF).
constexpr double kKappaWorkedExample = 44.311346272637900682;

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    return std::exp(u(rng));
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

class Suite {
public:
    explicit Suite(const VerifyOptions& opts) : opts_(opts) {}

    StateSpaceModel model(double kappa, double delta) const {
        auto ssm = openqsys::build_state_space(openqsys::make_model_params(kappa, delta));
        if (!opts_.flip_b_sign) {
            return ssm;
        }
        return StateSpaceModel::scalar(ssm.a(), -ssm.b(), ssm.c(), ssm.d());
    }

    void check(std::string name, double tolerance, const std::function<double()>& measure) {
        double measured;
        std::string detail;
        try {
            measured = measure();
        } catch (const std::exception& e) {
            measured = std::numeric_limits<double>::infinity();
            detail = e.what();
        }
        const bool passed = std::isfinite(measured) && measured <= tolerance;
        results_.push_back({std::move(name), measured, tolerance, passed, std::move(detail)});
    }

    // Passes when measured lies inside [lo, hi]; reported against the distance to the band.
    void check_band(std::string name, double lo, double hi, const std::function<double()>& measure) {
        double measured;
        std::string detail;
        try {
            measured = measure();
        } catch (const std::exception& e) {
            measured = std::numeric_limits<double>::quiet_NaN();
            detail = e.what();
        }
        const bool passed = measured >= lo && measured <= hi;
        if (detail.empty()) {
            detail = fmt::format("expected within [{}, {}]", lo, hi);
        }
        results_.push_back({std::move(name), measured, hi, passed, std::move(detail)});
    }

    std::vector<CheckResult> take() { return std::move(results_); }

    const VerifyOptions& opts() const { return opts_; }

private:
    VerifyOptions opts_;
    std::vector<CheckResult> results_;
};

cplx sinusoid_gain(const StateSpaceModel& ssm, double omega_mod) {
    const double decay = -ssm.a().real();
    const double per_decay = 1000.0;
    double dt = 1.0 / (decay * per_decay);
    if (omega_mod != 0.0) {
        dt = std::min(dt, kTwoPi / (std::abs(omega_mod) * per_decay));
    }
    const auto grid = response::grid_until(0.0, 20.0 / decay, dt);
    const cplx beta{0.6, -0.3};
    const auto tr = response::simulate_mean(ssm, response::InputSignal::sinusoid(beta, omega_mod), grid);
    return tr.b_out.values.back() / tr.b_in.values.back();
}

double rms_abs(const response::TimeSeries& ts) {
    double acc = 0.0;
    for (const auto& v : ts.values) {
        acc += std::norm(v);
    }
    return std::sqrt(acc / static_cast<double>(ts.values.size()));
}

}  // namespace

std::vector<CheckResult> run_verify(const VerifyOptions& opts) {
    Suite s(opts);
    std::mt19937_64 rng(20241016);

    s.check("lc_ladder_commutator", 1e-12, [&] {
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const auto p = lc::make_lc_params(log_uniform(rng, 1e-12, 1e-6), log_uniform(rng, 1e-15, 1e-9));
            const auto ops = lc::lc_ladder_ops(p);
            worst = std::max(worst, std::abs(commutator(ops.a, ops.a_dag) - 1.0));
            worst = std::max(worst, std::abs(commutator(ops.a, ops.a)));
        }
        return worst;
    });

    s.check("canonical_flux_charge", 1e-12, [&] {
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const auto p = lc::make_lc_params(log_uniform(rng, 1e-12, 1e-6), log_uniform(rng, 1e-15, 1e-9));
            const auto fc = lc::flux_charge_from_ladder(p);
            worst = std::max(worst, std::abs(commutator(fc.flux, fc.charge) / cplx{0.0, kHbar} - 1.0));
        }
        return worst;
    });

    s.check("ladder_round_trip", 1e-14, [&] {
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const auto p = lc::make_lc_params(log_uniform(rng, 1e-12, 1e-6), log_uniform(rng, 1e-15, 1e-9));
            const double w = lc::resonant_frequency(p);
            const auto ops = lc::lc_ladder_ops(p);
            const auto fc = lc::flux_charge_from_ladder(p);
            const auto rebuilt = fc.flux / std::sqrt(2.0 * p.L * kHbar * w) +
                                 cplx{0.0, 1.0} * fc.charge / std::sqrt(2.0 * p.C * kHbar * w);
            double scale = 0.0;
            for (const auto& [op, c] : ops.a.coeffs()) {
                scale = std::max(scale, std::abs(c));
            }
            worst = std::max(worst, max_abs_difference(rebuilt, ops.a) / scale);
        }
        return worst;
    });

    s.check("tline_mode_commutator", 1e-12, [&] {
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const auto t = tline::make_tline_params(log_uniform(rng, 1e-8, 1e-5), log_uniform(rng, 1e-12, 1e-9),
                                                    log_uniform(rng, 1e-3, 10.0));
            const auto m = tline::periodic_mode(t, 1 + static_cast<int>(rng() % 1000));
            const auto ops = tline::tline_mode_ops(t, m);
            const auto rotated = tline::rotate_mode(ops.b);
            worst = std::max(worst, std::abs(commutator(ops.b, ops.b_dag) - 1.0));
            worst = std::max(worst, std::abs(commutator(rotated, rotated.adjoint()) - 1.0));
        }
        return worst;
    });

    s.check("classical_energy_identity", 1e-12, [&] {
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const auto p = lc::make_lc_params(log_uniform(rng, 1e-12, 1e-6), log_uniform(rng, 1e-15, 1e-9));
            const lc::ClassicalState st{uniform(rng, -1e-2, 1e-2), uniform(rng, -1.0, 1.0)};
            const auto modes = lc::classical_normal_modes(st, p);
            const double e = lc::classical_energy(st, p);
            if (e == 0.0) {
                continue;
            }
            worst = std::max(worst, std::abs(std::norm(modes.a) + std::norm(modes.a_conj) - e) / e);
        }
        return worst;
    });

    s.check("rosetta_round_trip", 1e-12, [&] {
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const auto ctx = rosetta::context_from_impedance(log_uniform(rng, 1e-12, 1e-9),
                                                             log_uniform(rng, 1e-3, 10.0), uniform(rng, 10.0, 100.0));
            const auto dir = (i % 2) ? rosetta::Direction::right : rosetta::Direction::left;
            const auto p = rosetta::make_phasor(log_uniform(rng, 1e-9, 1e-3), uniform(rng, 0.0, kTwoPi),
                                                log_uniform(rng, 1e9, 1e11), dir);
            const auto back = rosetta::boson_to_phasor(rosetta::phasor_to_boson(p, ctx), ctx);
            worst = std::max(worst, std::abs(back.complex_amplitude() - p.complex_amplitude()) / p.magnitude);
            if (back.direction != dir) {
                return std::numeric_limits<double>::infinity();
            }
        }
        return worst;
    });

    s.check("pozar_consistency", 1e-12, [&] {
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const auto line = tline::make_tline_params(log_uniform(rng, 1e-8, 1e-5), log_uniform(rng, 1e-12, 1e-9),
                                                       log_uniform(rng, 1e-3, 10.0));
            const auto ctx = rosetta::context_from_line(line);
            const rosetta::BosonAmplitude b{{uniform(rng, -5.0, 5.0), uniform(rng, -5.0, 5.0)},
                                            log_uniform(rng, 1e9, 1e11), rosetta::Direction::right};
            const cplx via_phasor = rosetta::pozar_wave(rosetta::boson_to_phasor(b, ctx), ctx);
            const cplx direct = rosetta::pozar_wave_from_boson(b, ctx);
            worst = std::max(worst, std::abs(via_phasor - direct) / std::abs(direct));
        }
        return worst;
    });

    s.check("markov_kappa_worked_example", 1e-10, [&] {
        const double wr = kTwoPi * 5e9;
        const auto cp = openqsys::make_coupling_params(1e-15, 50.0, 1e-12, wr, wr);
        return std::abs(openqsys::markov_kappa(cp) / kKappaWorkedExample - 1.0);
    });

    s.check("transfer_function_identity", 1e-14, [&] {
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const double kappa = log_uniform(rng, 0.1, 100.0);
            const double delta = uniform(rng, -5.0, 5.0) * kappa * kappa;
            const auto tf = response::transfer_function(s.model(kappa, delta));
            const double half = kappa * kappa / 2.0;
            const std::vector<cplx> num{{-half, delta}, 1.0};
            const std::vector<cplx> den{{half, delta}, 1.0};
            if (tf.num.coeffs().size() != 2 || tf.den.coeffs().size() != 2) {
                return std::numeric_limits<double>::infinity();
            }
            for (int k = 0; k < 2; ++k) {
                worst = std::max(worst, std::abs(tf.num.coeffs()[k] - num[k]) / std::max(1.0, std::abs(num[k])));
                worst = std::max(worst, std::abs(tf.den.coeffs()[k] - den[k]) / std::max(1.0, std::abs(den[k])));
            }
        }
        return worst;
    });

    s.check("all_pass_magnitude", 1e-12, [&] {
        double worst = 0.0;
        for (int i = 0; i < 5; ++i) {
            const double kappa = log_uniform(rng, 0.1, 100.0);
            const double delta = uniform(rng, -5.0, 5.0) * kappa * kappa;
            const auto tf = response::transfer_function(s.model(kappa, delta));
            const double span = 1e3 * kappa * kappa;
            for (const auto& pt : response::freq_response(tf, response::linear_grid(-span, span, 1000))) {
                worst = std::max(worst, std::abs(pt.magnitude - 1.0));
            }
        }
        return worst;
    });

    s.check("resonance_reflection", 1e-12, [&] {
        const auto tf = response::transfer_function(s.model(44.311346272637900682, 0.0));
        return std::abs(response::eval_tf(tf, 0.0) + 1.0);
    });

    s.check("steady_state_oracle", 1e-10, [&] {
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const double kappa = log_uniform(rng, 0.1, 100.0);
            const double delta = uniform(rng, -5.0, 5.0) * kappa * kappa;
            const cplx beta{uniform(rng, -2.0, 2.0), uniform(rng, -2.0, 2.0)};
            const auto ss = response::steady_state(s.model(kappa, delta), beta);
            const cplx expected = -kappa * beta / cplx{kappa * kappa / 2.0, delta};
            worst = std::max(worst, std::abs(ss.a_ss - expected) / std::abs(expected));
            worst = std::max(worst, std::abs(std::abs(ss.b_out_ss) - std::abs(beta)) / std::abs(beta));
        }
        return worst;
    });

    s.check("time_frequency_consistency", 1e-4, [&] {
        double worst = 0.0;
        for (int i = 0; i < 3; ++i) {
            const double kappa = log_uniform(rng, 0.5, 5.0);
            const double half = kappa * kappa / 2.0;
            const double delta = uniform(rng, -3.0, 3.0) * half;
            const double omega_mod = uniform(rng, -3.0, 3.0) * half;
            const auto ssm = s.model(kappa, delta);
            const cplx expected = response::eval_tf(response::transfer_function(ssm), cplx{0.0, omega_mod});
            worst = std::max(worst, std::abs(sinusoid_gain(ssm, omega_mod) - expected) / std::abs(expected));
        }
        return worst;
    });

    s.check("exact_vs_rk4", 1e-8, [&] {
        const auto ssm = s.model(1.3, 0.4);
        const double dt = 0.01 / std::abs(ssm.a());
        const auto grid = response::make_grid(0.0, dt, 2000);
        const auto u = response::InputSignal::pulse({1.0, 0.5}, 2.0, 6.0);
        const auto exact = response::simulate_mean(ssm, u, grid, {0.2, -0.1}, response::Integrator::exact);
        const auto rk4 = response::simulate_mean(ssm, u, grid, {0.2, -0.1}, response::Integrator::rk4);
        double worst = 0.0, scale = 0.0;
        for (std::size_t k = 0; k < grid.size(); ++k) {
            worst = std::max(worst, std::abs(exact.a.values[k] - rk4.a.values[k]));
            scale = std::max(scale, std::abs(exact.a.values[k]));
        }
        return worst / scale;
    });

    s.check_band("stochastic_convergence_ratio", 1.6, 2.6, [&] {
        const auto ssm = s.model(1.0, 0.0);
        const auto grid = response::make_grid(0.0, 0.01, 400);
        const auto vac = response::InputSignal::vacuum();
        const double small = rms_abs(response::simulate_stochastic(ssm, vac, grid, 50, 11, {}, s.opts().threads).mean());
        const double large = rms_abs(response::simulate_stochastic(ssm, vac, grid, 200, 12, {}, s.opts().threads).mean());
        return small / large;
    });

    s.check("noise_free_trajectory", 1e-6, [&] {
        const auto ssm = s.model(1.0, 0.3);
        const auto grid = response::make_grid(0.0, 1e-6, 2'000'000);
        auto u = response::InputSignal::constant({1.0, 0.0});
        u.noise_variance = 0.0;
        const auto det = response::simulate_mean(ssm, u, grid);
        const auto ens = response::simulate_stochastic(ssm, u, grid, 1, 3, {}, 1);
        double worst = 0.0, scale = 0.0;
        for (std::size_t k = 0; k < grid.size(); k += 1000) {
            worst = std::max(worst, std::abs(det.b_out.values[k] - ens.trajectories[0].values[k]));
            scale = std::max(scale, std::abs(det.b_out.values[k]));
        }
        return worst / scale;
    });

    s.check_band("wave_equation_second_order", 3.5, 4.5, [&] {
        const auto t = tline::make_tline_params(2.5e-7, 1e-10, 1.0);
        const auto mode = tline::periodic_mode(t, 3);
        const tline::CoherentModeAmplitude amp{mode, std::polar(1.0, 0.7)};
        const double wavelength = kTwoPi / mode.k;
        const auto coarse = tline::wave_equation_residual(t, {&amp, 1}, 0.1, 1e-10, wavelength / 100.0);
        const auto fine = tline::wave_equation_residual(t, {&amp, 1}, 0.1, 1e-10, wavelength / 200.0);
        return std::abs(coarse.residual / fine.residual);
    });

    return s.take();
}

bool print_report(const std::vector<CheckResult>& results, std::ostream& out) {
    std::size_t failed = 0;
    for (const auto& r : results) {
        if (!r.passed) {
            ++failed;
        }
        out << fmt::format("[{}] {:<32} measured={:<12.4e} tol={:.1e}", r.passed ? "PASS" : "FAIL", r.name,
                           r.measured, r.tolerance);
        if (!r.detail.empty()) {
            out << "  (" << r.detail << ")";
        }
        out << '\n';
    }
    out << fmt::format("{} checks, {} passed, {} failed\n", results.size(), results.size() - failed, failed);
    return failed == 0;
}

}  // namespace qionss::cli
