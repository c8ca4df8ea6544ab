#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <optional>
#include <vector>

#include "qionss/openqsys.hpp"

namespace qionss::response {

enum class InputKind { constant_coherent, sinusoid, pulse, vacuum };

std::string_view to_string(InputKind k);
std::optional<InputKind> parse_input_kind(std::string_view s);

// Mean part of the incident field b_in(t) in the rotating frame:
//   constant_coherent  beta
//   sinusoid           beta * exp(i omega_mod t)
//   pulse              beta on [t_on, t_off), zero elsewhere
//   vacuum             zero
// noise_variance scales the vacuum fluctuations used by simulate_stochastic
// (1 = vacuum level, 0 = noise-free).
struct InputSignal {
    InputKind kind = InputKind::vacuum;
    cplx beta{};
    double omega_mod = 0.0;
    double t_on = 0.0;
    double t_off = 0.0;
    double noise_variance = 1.0;

    cplx mean(double t) const;

    static InputSignal constant(cplx beta);
    static InputSignal sinusoid(cplx beta, double omega_mod);
    static InputSignal pulse(cplx beta, double t_on, double t_off);
    static InputSignal vacuum();
};

// Throws DomainError for non-finite parameters, t_off < t_on, negative noise,
// or a vacuum signal with non-zero beta.
void validate(const InputSignal& u);

// Uniform grid t_k = t0 + k dt for k = 0..steps.
struct TimeGrid {
    double t0 = 0.0;
    double dt = 0.0;
    std::size_t steps = 0;

    std::size_t size() const noexcept { return steps + 1; }
    double time(std::size_t k) const noexcept { return t0 + dt * static_cast<double>(k); }
};

TimeGrid make_grid(double t0, double dt, std::size_t steps);
// Smallest grid from t0 with step dt that reaches t_end.
TimeGrid grid_until(double t0, double t_end, double dt);

struct TimeSeries {
    double t0 = 0.0;
    double dt = 0.0;
    std::vector<cplx> values;

    double time(std::size_t k) const noexcept { return t0 + dt * static_cast<double>(k); }
};

struct MeanTrajectory {
    TimeSeries a;
    TimeSeries b_in;
    TimeSeries b_out;
};

enum class Integrator {
    exact,  // piecewise-constant-input LTI propagator
    rk4,    // classical Runge-Kutta on the same held input; needs dt |A| < 0.1
};

// Largest dt |A| accepted by the stepping integrators (rk4, Euler-Maruyama).
inline constexpr double kMaxStepStiffness = 0.1;

// (exp(z) - 1) / z with the removable singularity at z = 0.
cplx phi1(cplx z);

// Mean dynamics <a>' = A <a> + B u(t), b_out = C <a> + D b_in. Within each step the
// input is held at its midpoint value u(t_k + dt / 2); b_in and b_out are reported
// with the instantaneous input u(t_k). Scalar (1 x 1) models only.
MeanTrajectory simulate_mean(const openqsys::StateSpaceModel& ssm, const InputSignal& u,
                             const TimeGrid& grid, cplx a0 = {}, Integrator integrator = Integrator::exact);

struct TrajectoryEnsemble {
    std::vector<TimeSeries> trajectories;  // b_out samples, one series per trajectory
    std::uint64_t seed = 0;
    double dW_variance = 0.0;  // E|dW|^2 per step for unit noise (= dt)

    TimeSeries mean() const;
    // Unbiased sample variance of |b_out - mean|^2 per grid point (zero for one trajectory).
    std::vector<double> variance() const;
};

// Worker count for ensembles: `requested`, or hardware concurrency when 0.
unsigned resolve_threads(unsigned requested);

// Euler-Maruyama for da = (A a + B u) dt + B dW with complex Wiener increments,
// E|dW|^2 = noise_variance * dt split evenly over the two quadratures. The
// reported b_out sample at t_k is C a_k + D (u(t_k) + dW_k / dt), i.e. the
// output increment per unit time. Trajectory j draws from a generator seeded by
// (seed, j), so the ensemble does not depend on the worker count.
TrajectoryEnsemble simulate_stochastic(const openqsys::StateSpaceModel& ssm, const InputSignal& u,
                                       const TimeGrid& grid, std::size_t n_traj, std::uint64_t seed,
                                       cplx a0 = {}, unsigned threads = 0);

struct SteadyState {
    cplx a_ss;
    cplx b_out_ss;
};

// a_ss = -A^(-1) B beta, b_out_ss = C a_ss + D beta.
// Throws DomainError("undamped, no steady state") when A = 0.
SteadyState steady_state(const openqsys::StateSpaceModel& ssm, cplx beta);

}  // namespace qionss::response
