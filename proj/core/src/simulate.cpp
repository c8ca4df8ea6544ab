#include "qionss/simulate.hpp"

#include <atomic>
#include <cmath>
#include <random>
#include <thread>

#include "qionss/errors.hpp"

namespace qionss::response {

namespace {

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require_scalar(const openqsys::StateSpaceModel& ssm, const char* who) {
    if (!ssm.is_scalar()) {
        throw DomainError(std::string(who) + ": only 1x1 (single-mode, single-port) models are supported");
    }
}

void require_grid(const TimeGrid& g) {
    if (!(g.dt > 0.0) || !std::isfinite(g.dt) || !std::isfinite(g.t0)) {
        throw DomainError("TimeGrid: dt must be positive and t0 finite");
    }
}

void require_step_stiffness(cplx A, double dt, const char* who) {
    if (std::abs(A) * dt >= kMaxStepStiffness) {
        throw DomainError(std::string(who) + ": dt |A| must be below 0.1 for the stepping integrator");
    }
}

std::mt19937_64 trajectory_engine(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return std::mt19937_64(seq);
}

}  // namespace

std::string_view to_string(InputKind k) {
    switch (k) {
        case InputKind::constant_coherent: return "constant_coherent";
        case InputKind::sinusoid: return "sinusoid";
        case InputKind::pulse: return "pulse";
        case InputKind::vacuum: return "vacuum";
    }
    return "unknown";
}

std::optional<InputKind> parse_input_kind(std::string_view s) {
    for (InputKind k : {InputKind::constant_coherent, InputKind::sinusoid, InputKind::pulse, InputKind::vacuum}) {
        if (s == to_string(k)) {
            return k;
        }
    }
    return std::nullopt;
}

cplx InputSignal::mean(double t) const {
    switch (kind) {
        case InputKind::constant_coherent: return beta;
        case InputKind::sinusoid: return beta * std::polar(1.0, omega_mod * t);
        case InputKind::pulse: return (t >= t_on && t < t_off) ? beta : cplx{};
        case InputKind::vacuum: return {};
    }
    return {};
}

InputSignal InputSignal::constant(cplx beta) { return {InputKind::constant_coherent, beta}; }

InputSignal InputSignal::sinusoid(cplx beta, double omega_mod) {
    return {InputKind::sinusoid, beta, omega_mod};
}

InputSignal InputSignal::pulse(cplx beta, double t_on, double t_off) {
    return {InputKind::pulse, beta, 0.0, t_on, t_off};
}

InputSignal InputSignal::vacuum() { return {}; }

void validate(const InputSignal& u) {
    if (!finite(u.beta) || !std::isfinite(u.omega_mod) || !std::isfinite(u.t_on) ||
        !std::isfinite(u.t_off) || !std::isfinite(u.noise_variance)) {
        throw DomainError("InputSignal: parameters must be finite");
    }
    if (u.noise_variance < 0.0) {
        throw DomainError("InputSignal: noise_variance must be non-negative");
    }
    if (u.kind == InputKind::pulse && u.t_off < u.t_on) {
        throw DomainError("InputSignal: pulse requires t_off >= t_on");
    }
    if (u.kind == InputKind::vacuum && u.beta != cplx{}) {
        throw DomainError("InputSignal: vacuum input must have beta = 0");
    }
}

TimeGrid make_grid(double t0, double dt, std::size_t steps) {
    TimeGrid g{t0, dt, steps};
    require_grid(g);
    return g;
}

TimeGrid grid_until(double t0, double t_end, double dt) {
    require_grid({t0, dt, 0});
    if (!(t_end >= t0) || !std::isfinite(t_end)) {
        throw DomainError("TimeGrid: t_end must be finite and not before t0");
    }
    const double n = (t_end - t0) / dt;
    const auto steps = static_cast<std::size_t>(std::ceil(n - 1e-9 * std::max(1.0, n)));
    return {t0, dt, steps};
}

cplx phi1(cplx z) {
    if (std::abs(z) < 0.5) {
        cplx term = 1.0;
        cplx sum = 1.0;
        for (int k = 2; k < 40; ++k) {
            term *= z / static_cast<double>(k);
            sum += term;
            if (std::abs(term) <= 1e-18 * std::abs(sum)) {
                break;
            }
        }
        return sum;
    }
    return (std::exp(z) - 1.0) / z;
}

MeanTrajectory simulate_mean(const openqsys::StateSpaceModel& ssm, const InputSignal& u,
                             const TimeGrid& grid, cplx a0, Integrator integrator) {
    require_scalar(ssm, "simulate_mean");
    require_grid(grid);
    validate(u);
    if (!finite(a0)) {
        throw DomainError("simulate_mean: initial state must be finite");
    }
    const cplx A = ssm.a(), B = ssm.b(), C = ssm.c(), D = ssm.d();
    const double dt = grid.dt;
    if (integrator == Integrator::rk4) {
        require_step_stiffness(A, dt, "simulate_mean(rk4)");
    }

    const cplx propagator = std::exp(A * dt);
    const cplx input_gain = phi1(A * dt) * dt * B;

    const std::size_t n = grid.size();
    MeanTrajectory out;
    for (TimeSeries* ts : {&out.a, &out.b_in, &out.b_out}) {
        ts->t0 = grid.t0;
        ts->dt = dt;
        ts->values.resize(n);
    }

    cplx a = a0;
    for (std::size_t k = 0; k < n; ++k) {
        const double t = grid.time(k);
        const cplx bin = u.mean(t);
        out.a.values[k] = a;
        out.b_in.values[k] = bin;
        out.b_out.values[k] = C * a + D * bin;
        if (k + 1 == n) {
            break;
        }

        const cplx held = u.mean(t + 0.5 * dt);
        if (integrator == Integrator::exact) {
            a = propagator * a + input_gain * held;
        } else {
            auto f = [&](cplx x) { return A * x + B * held; };
            const cplx k1 = f(a);
            const cplx k2 = f(a + 0.5 * dt * k1);
            const cplx k3 = f(a + 0.5 * dt * k2);
            const cplx k4 = f(a + dt * k3);
            a += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
    }
    return out;
}

TimeSeries TrajectoryEnsemble::mean() const {
    TimeSeries m;
    if (trajectories.empty()) {
        return m;
    }
    m.t0 = trajectories.front().t0;
    m.dt = trajectories.front().dt;
    m.values.assign(trajectories.front().values.size(), cplx{});
    for (const auto& tr : trajectories) {
        for (std::size_t k = 0; k < m.values.size(); ++k) {
            m.values[k] += tr.values[k];
        }
    }
    const double inv = 1.0 / static_cast<double>(trajectories.size());
    for (auto& v : m.values) {
        v *= inv;
    }
    return m;
}

std::vector<double> TrajectoryEnsemble::variance() const {
    if (trajectories.empty()) {
        return {};
    }
    const TimeSeries m = mean();
    std::vector<double> var(m.values.size(), 0.0);
    if (trajectories.size() < 2) {
        return var;
    }
    for (const auto& tr : trajectories) {
        for (std::size_t k = 0; k < var.size(); ++k) {
            var[k] += std::norm(tr.values[k] - m.values[k]);
        }
    }
    const double inv = 1.0 / static_cast<double>(trajectories.size() - 1);
    for (auto& v : var) {
        v *= inv;
    }
    return var;
}

unsigned resolve_threads(unsigned requested) {
    if (requested > 0) {
        return requested;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

TrajectoryEnsemble simulate_stochastic(const openqsys::StateSpaceModel& ssm, const InputSignal& u,
                                       const TimeGrid& grid, std::size_t n_traj, std::uint64_t seed,
                                       cplx a0, unsigned threads) {
    require_scalar(ssm, "simulate_stochastic");
    require_grid(grid);
    validate(u);
    if (n_traj == 0) {
        throw DomainError("simulate_stochastic: n_traj must be at least 1");
    }
    if (!finite(a0)) {
        throw DomainError("simulate_stochastic: initial state must be finite");
    }
    const cplx A = ssm.a(), B = ssm.b(), C = ssm.c(), D = ssm.d();
    const double dt = grid.dt;
    require_step_stiffness(A, dt, "simulate_stochastic");

    const double quad_sigma = std::sqrt(u.noise_variance * dt / 2.0);
    const std::size_t n = grid.size();

    TrajectoryEnsemble ens;
    ens.seed = seed;
    ens.dW_variance = dt;
    ens.trajectories.resize(n_traj);

    auto run_one = [&](std::size_t j) {
        auto engine = trajectory_engine(seed, j);
        std::normal_distribution<double> normal(0.0, 1.0);
        TimeSeries& ts = ens.trajectories[j];
        ts.t0 = grid.t0;
        ts.dt = dt;
        ts.values.resize(n);

        cplx a = a0;
        for (std::size_t k = 0; k < n; ++k) {
            const double t = grid.time(k);
            const double re = normal(engine);
            const double im = normal(engine);
            const cplx dW = quad_sigma * cplx{re, im};
            ts.values[k] = C * a + D * (u.mean(t) + dW / dt);
            const cplx held = u.mean(t + 0.5 * dt);
            a += (A * a + B * held) * dt + B * dW;
        }
    };

    const unsigned workers = std::min<std::size_t>(resolve_threads(threads), n_traj);
    if (workers <= 1) {
        for (std::size_t j = 0; j < n_traj; ++j) {
            run_one(j);
        }
        return ens;
    }
    std::atomic<std::size_t> next{0};
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t j = next++; j < n_traj; j = next++) {
                    run_one(j);
                }
            });
        }
    }
    return ens;
}

SteadyState steady_state(const openqsys::StateSpaceModel& ssm, cplx beta) {
    require_scalar(ssm, "steady_state");
    const cplx A = ssm.a();
    if (A == cplx{}) {
        throw DomainError("undamped, no steady state");
    }
    const cplx a_ss = -(ssm.b() * beta) / A;
    return {a_ss, ssm.c() * a_ss + ssm.d() * beta};
}

}  // namespace qionss::response
