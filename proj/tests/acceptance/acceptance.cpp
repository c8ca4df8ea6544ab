// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "qionss/openqsys.hpp"
#include "qionss/quantize_lc.hpp"
#include "qionss/rosetta.hpp"
#include "qionss/simulate.hpp"
#include "qionss/transfer_function.hpp"

using namespace qionss;
using namespace qionss::openqsys;
using namespace qionss::response;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool passed;
    std::string detail;
};

struct Criterion {
    int id;
    std::string name;
    double time_limit_s;  // <= 0: none
    std::function<Outcome()> body;
};

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::exp(std::uniform_real_distribution<double>(std::log(lo), std::log(hi))(rng));
}

double rel(cplx got, cplx want) { return std::abs(got - want) / std::max(std::abs(want), 1e-300); }

Outcome commutators() {
    std::mt19937_64 rng(101);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const lc::LCParams p{log_uniform(rng, 1e-12, 1e-6), log_uniform(rng, 1e-15, 1e-9)};
        const auto ops = lc::lc_ladder_ops(p);
        const auto fc = lc::flux_charge_from_ladder(p);
        worst = std::max(worst, rel(commutator(ops.a, ops.a_dag), 1.0));
        worst = std::max(worst, rel(commutator(fc.flux, fc.charge), {0.0, kHbar}));
    }
    return {worst <= 1e-12, "worst rel " + sci(worst) + " <= 1e-12"};
}

Outcome energy_identity() {
    std::mt19937_64 rng(102);
    std::uniform_real_distribution<double> I(-1e-2, 1e-2), V(-1.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const lc::LCParams p{log_uniform(rng, 1e-12, 1e-6), log_uniform(rng, 1e-15, 1e-9)};
        const lc::ClassicalState s{I(rng), V(rng)};
        const auto m = lc::classical_normal_modes(s, p);
        const double e = lc::classical_energy(s, p);
        worst = std::max(worst, std::abs(std::norm(m.a) + std::norm(m.a_conj) - e) / e);
    }
    return {worst <= 1e-12, "worst rel " + sci(worst) + " <= 1e-12"};
}

Outcome tf_identity() {
    std::mt19937_64 rng(103);
    std::uniform_real_distribution<double> kd(0.0, 100.0), dd(-1e4, 1e4);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double k = kd(rng), d = dd(rng);
        const auto tf = transfer_function(build_state_space({k, d}));
        const std::vector<cplx> num{{-k * k / 2.0, d}, 1.0};
        const std::vector<cplx> den{{k * k / 2.0, d}, 1.0};
        const cplx lead = tf.den.leading();
        if (tf.num.coeffs().size() != 2 || tf.den.coeffs().size() != 2) return {false, "unexpected degree"};
        for (std::size_t j = 0; j < 2; ++j) {
            const double scale = std::max(1.0, std::abs(den[j]));
            worst = std::max(worst, std::abs(tf.num.coeffs()[j] / lead - num[j]) / scale);
            worst = std::max(worst, std::abs(tf.den.coeffs()[j] / lead - den[j]) / scale);
        }
    }
    return {worst <= 1e-14, "worst coefficient error " + sci(worst) + " <= 1e-14"};
}

Outcome all_pass() {
    const double k = 44.311346272637900682;
    const auto tf = transfer_function(build_state_space({k, 0.0}));
    const auto grid = linear_grid(-1e3 * k * k, 1e3 * k * k, 1000);
    double worst = 0.0;
    for (const auto& p : freq_response(tf, grid)) worst = std::max(worst, std::abs(p.magnitude - 1.0));
    const double h0 = std::abs(eval_tf(tf, 0.0) + 1.0);
    return {worst <= 1e-12 && h0 <= 1e-12, "max ||H|-1| " + sci(worst) + ", |H(0)+1| " + sci(h0) + " <= 1e-12"};
}

Outcome time_frequency() {
    std::mt19937_64 rng(105);
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
        const double k = log_uniform(rng, 5.0, 60.0);
        const double decay = k * k / 2.0;
        const double d = std::uniform_real_distribution<double>(-3.0, 3.0)(rng) * decay;
        const double w = std::uniform_real_distribution<double>(-3.0, 3.0)(rng) * decay;
        const auto m = build_state_space({k, d});
        const double dt = std::min(1.0 / (1000.0 * decay), kTwoPi / (1000.0 * std::max(std::abs(w), 1e-300)));
        const auto grid = grid_until(0.0, 20.0 / decay, dt);
        const auto u = InputSignal::sinusoid(1.0, w);
        const auto r = simulate_mean(m, u, grid);
        const cplx gain = r.b_out.values.back() / u.mean(grid.time(grid.steps));
        worst = std::max(worst, rel(gain, eval_tf(transfer_function(m), {0.0, w})));
    }
    return {worst <= 1e-4, "worst rel gain error " + sci(worst) + " <= 1e-4"};
}

Outcome steady_oracle() {
    std::mt19937_64 rng(106);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double k = log_uniform(rng, 0.1, 100.0), d = u(rng) * k * k;
        const cplx beta{u(rng), u(rng)};
        const auto s = steady_state(build_state_space({k, d}), beta);
        worst = std::max(worst, rel(s.a_ss, -k * beta / cplx{k * k / 2.0, d}));
        worst = std::max(worst, std::abs(std::abs(s.b_out_ss) - std::abs(beta)) / std::abs(beta));
    }
    double worst0 = 0.0;
    for (int i = 0; i < 100; ++i) {
        const cplx beta{u(rng), u(rng)};
        const auto s = steady_state(build_state_space({log_uniform(rng, 0.1, 100.0), 0.0}), beta);
        worst0 = std::max(worst0, std::abs(s.b_out_ss + beta));
    }
    return {worst <= 1e-10 && worst0 <= 1e-12,
            "worst rel " + sci(worst) + " <= 1e-10, |b_out + beta| " + sci(worst0) + " <= 1e-12"};
}

Outcome stochastic() {
    const double k = 44.311346272637900682;
    const double decay = k * k / 2.0;
    const auto m = build_state_space({k, 0.0});
    const auto grid = grid_until(0.0, 5.0 / decay, 0.01 / decay);

    std::vector<double> errs;
    for (std::size_t n : {100u, 400u, 1600u}) {
        const auto mean = simulate_stochastic(m, InputSignal::vacuum(), grid, n, 777).mean();
        double acc = 0.0;
        for (const auto& v : mean.values) acc += std::norm(v);
        errs.push_back(std::sqrt(acc / static_cast<double>(mean.values.size())));
    }
    const double r1 = errs[0] / errs[1], r2 = errs[1] / errs[2];
    const bool ratios_ok = r1 >= 1.6 && r1 <= 2.6 && r2 >= 1.6 && r2 <= 2.6;

    auto u = InputSignal::sinusoid({0.8, -0.3}, 300.0);
    u.noise_variance = 0.0;
    const auto fine = grid_until(0.0, 5.0 / decay, 1e-6 / decay);
    const auto traj = simulate_stochastic(m, u, fine, 1, 778).trajectories[0];
    const auto det = simulate_mean(m, u, fine).b_out;
    double worst = 0.0;
    for (std::size_t i = 0; i < fine.size(); ++i) worst = std::max(worst, std::abs(traj.values[i] - det.values[i]));

    char buf[160];
    std::snprintf(buf, sizeof buf, "ratios %.3f, %.3f in [1.6, 2.6]; noise-free deviation %s <= 1e-6", r1, r2,
                  sci(worst).c_str());
    return {ratios_ok && worst <= 1e-6, buf};
}

Outcome markov_kappa_example() {
    constexpr double oracle = 44.311346272637900682;
    const double k = markov_kappa(make_coupling_params(1e-15, 50.0, 1e-12, kTwoPi * 5e9, kTwoPi * 5e9));
    const double e = std::abs(k - oracle) / oracle;
    return {e <= 1e-10, "rel error " + sci(e) + " <= 1e-10"};
}

Outcome rosetta_round_trips() {
    using namespace qionss::rosetta;
    std::mt19937_64 rng(109);
    std::uniform_real_distribution<double> mag(0.0, 1e-4), ph(-7.0, 7.0), bz(-1e3, 1e3);
    const auto ctx = context_from_line({2.5e-7, 1e-10, 1.0});
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const auto dir = i % 2 ? Direction::left : Direction::right;
        const double omega = log_uniform(rng, 1e8, 1e12);
        const auto p = make_phasor(mag(rng), ph(rng), omega, dir);
        const auto b = phasor_to_boson(p, ctx);
        worst = std::max(worst, rel(boson_to_phasor(b, ctx).complex_amplitude(), p.complex_amplitude()));
        worst = std::max(worst, rel(pozar_wave_from_boson(b, ctx), pozar_wave(p, ctx)));
        const cplx bv{bz(rng), bz(rng)};
        worst = std::max(worst, rel(phasor_to_boson(boson_to_phasor({bv, omega, dir}, ctx), ctx).value, bv));
    }
    constexpr double one_photon = 2.5741154103769472706e-7;  // 50-digit reference at 5 GHz, C' = 100 pF/m
    const double n = photon_number(make_phasor(one_photon, 0.0, kTwoPi * 5e9, Direction::right), ctx);
    return {worst <= 1e-12 && std::abs(n - 1.0) <= 1e-10,
            "worst rel " + sci(worst) + " <= 1e-12, |N - 1| " + sci(std::abs(n - 1.0)) + " <= 1e-10"};
}

int exit_status(const std::string& cmd) {
    const int raw = std::system(cmd.c_str());
    return raw != -1 && WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

Outcome verify_gate() {
    const std::string bin = QIONSS_CLI_PATH;
    const int clean = exit_status(bin + " verify > /dev/null 2>&1");
    const int faulty = exit_status(bin + " verify --inject-fault b-sign > /dev/null 2>&1");
    return {clean == 0 && faulty == 1,
            "clean exit " + std::to_string(clean) + " (want 0), b-sign fault exit " + std::to_string(faulty) +
                " (want 1)"};
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "commutator suite", 1.0, commutators},
        {2, "classical energy identity", 0.0, energy_identity},
        {3, "transfer function identity", 0.0, tf_identity},
        {4, "all-pass / losslessness", 1.0, all_pass},
        {5, "time-frequency consistency", 10.0, time_frequency},
        {6, "steady-state oracle", 0.0, steady_oracle},
        {7, "stochastic convergence", 60.0, stochastic},
        {8, "markov kappa worked example", 0.0, markov_kappa_example},
        {9, "rosetta round trips", 0.0, rosetta_round_trips},
        {10, "verify gate", 120.0, verify_gate},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = Clock::now();
        Outcome o;
        try {
            o = c.body();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(Clock::now() - start).count();
        bool ok = o.passed;
        std::string timing = "time " + sci(secs) + " s";
        if (c.time_limit_s > 0.0) {
            timing += " < " + sci(c.time_limit_s) + " s";
            ok = ok && secs < c.time_limit_s;
        }
        if (!ok) ++failed;
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << "criterion " << c.id << " " << c.name << ": " << o.detail
                  << "; " << timing << "\n";
    }
    std::cout << criteria.size() - failed << "/" << criteria.size() << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}
