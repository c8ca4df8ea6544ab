#pragma once

#include <span>
#include <vector>

#include "qionss/openqsys.hpp"
#include "qionss/polynomial.hpp"

namespace qionss::response {

// H(s) = num(s) / den(s), defined on Re(s) > region_abscissa.
struct TransferFunction {
    Polynomial num;
    Polynomial den;
    double region_abscissa;  // largest real part among the poles (-inf when none)
};

// Throws DomainError for a zero denominator or deg(num) > deg(den).
TransferFunction make_transfer_function(Polynomial num, Polynomial den);

// C (sI - A)^(-1) B + D for a single-port model of any state dimension,
// built from the characteristic polynomial and adjugate (Faddeev-LeVerrier).
// Multiport models are rejected with DomainError.
TransferFunction transfer_function(const openqsys::StateSpaceModel& ssm);

// num(s) / den(s). Throws DomainError when s is (numerically) a pole.
cplx eval_tf(const TransferFunction& tf, cplx s);

struct PoleZero {
    std::vector<cplx> poles;
    std::vector<cplx> zeros;

    // All poles strictly in the open left half-plane.
    bool stable() const;
};

// Roots of den and num with common pole/zero pairs cancelled.
PoleZero poles_zeros(const TransferFunction& tf, double cancel_rel_tol = 1e-12);

struct FreqPoint {
    double omega;        // rotating-frame offset (rad/s)
    cplx H;
    double magnitude;
    double phase;        // unwrapped along the grid (rad)
    double group_delay;  // -d(phase)/d(omega) (s)
};

// H evaluated on s = i omega. Group delay is analytic (-Re H'/H) where num and den
// are well away from zero, otherwise a central difference with step span / 1e4.
std::vector<FreqPoint> freq_response(const TransferFunction& tf, std::span<const double> grid);

// Evenly spaced grid; a single point sits at the midpoint of [lo, hi].
std::vector<double> linear_grid(double lo, double hi, std::size_t n);
// Logarithmically spaced grid over 0 < lo < hi; a single point sits at sqrt(lo hi).
std::vector<double> log_grid(double lo, double hi, std::size_t n);

}  // namespace qionss::response
