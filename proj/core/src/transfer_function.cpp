#include "qionss/transfer_function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qionss/constants.hpp"
#include "qionss/errors.hpp"

namespace qionss::response {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Value of p(s) counts as zero when it is within rounding noise of the evaluation.
bool numerically_zero(const Polynomial& p, cplx s, cplx value) {
    return std::abs(value) <= 64.0 * kEps * p.magnitude_bound(std::abs(s));
}

double principal_arg(cplx z) {
    const double a = std::arg(z);
    return a == -kPi ? kPi : a;
}

}  // namespace

TransferFunction make_transfer_function(Polynomial num, Polynomial den) {
    if (den.is_zero()) {
        throw DomainError("TransferFunction: denominator is identically zero");
    }
    if (num.degree() > den.degree()) {
        throw DomainError("TransferFunction: improper (deg num > deg den)");
    }
    double abscissa = -std::numeric_limits<double>::infinity();
    for (const cplx& p : den.roots()) {
        abscissa = std::max(abscissa, p.real());
    }
    return {std::move(num), std::move(den), abscissa};
}

TransferFunction transfer_function(const openqsys::StateSpaceModel& ssm) {
    if (ssm.ports() != 1) {
        throw DomainError("transfer_function: only single-port models are supported");
    }
    using Matrix = openqsys::StateSpaceModel::Matrix;
    const auto n = ssm.states();
    const Matrix& A = ssm.A();

    // Faddeev-LeVerrier: det(sI - A) = sum c_k s^k with c_n = 1, and
    // adj(sI - A) = sum_{k=1..n} M_k s^(n-k).
    std::vector<cplx> charpoly(n + 1);
    charpoly[n] = 1.0;
    std::vector<cplx> adj_b(n);  // coefficients of C adj(sI - A) B
    Matrix M = Matrix::Zero(n, n);
    const Matrix I = Matrix::Identity(n, n);
    for (Eigen::Index k = 1; k <= n; ++k) {
        M = A * M + charpoly[n - k + 1] * I;
        adj_b[n - k] = (ssm.C() * M * ssm.B())(0, 0);
        charpoly[n - k] = -(A * M).trace() / static_cast<double>(k);
    }

    const cplx d = ssm.D()(0, 0);
    std::vector<cplx> num(n + 1);
    for (Eigen::Index k = 0; k <= n; ++k) {
        num[k] = d * charpoly[k];
        if (k < n) {
            num[k] += adj_b[k];
        }
    }
    return make_transfer_function(Polynomial(std::move(num)), Polynomial(std::move(charpoly)));
}

cplx eval_tf(const TransferFunction& tf, cplx s) {
    const cplx den = tf.den(s);
    if (den == cplx{} || numerically_zero(tf.den, s, den)) {
        throw DomainError("eval_tf: s is a pole of the transfer function");
    }
    return tf.num(s) / den;
}

bool PoleZero::stable() const {
    return std::all_of(poles.begin(), poles.end(), [](cplx p) { return p.real() < 0.0; });
}

PoleZero poles_zeros(const TransferFunction& tf, double cancel_rel_tol) {
    PoleZero out;
    out.poles = tf.den.roots();
    std::vector<cplx> zeros = tf.num.is_zero() ? std::vector<cplx>{} : tf.num.roots();

    for (const cplx& z : zeros) {
        auto match = std::find_if(out.poles.begin(), out.poles.end(), [&](cplx p) {
            const double scale = std::max({std::abs(p), std::abs(z), std::numeric_limits<double>::min()});
            return std::abs(p - z) <= cancel_rel_tol * scale;
        });
        if (match != out.poles.end()) {
            out.poles.erase(match);
        } else {
            out.zeros.push_back(z);
        }
    }
    return out;
}

std::vector<FreqPoint> freq_response(const TransferFunction& tf, std::span<const double> grid) {
    std::vector<FreqPoint> out;
    out.reserve(grid.size());
    if (grid.empty()) {
        return out;
    }

    const auto [lo, hi] = std::minmax_element(grid.begin(), grid.end());
    double fd_step = (*hi - *lo) / 1e4;
    if (!(fd_step > 0.0)) {
        fd_step = std::max(std::abs(*lo), 1.0) * 1e-6;
    }

    const Polynomial dnum = tf.num.derivative();
    const Polynomial dden = tf.den.derivative();
    auto H_at = [&](double w) { return eval_tf(tf, cplx{0.0, w}); };

    double prev_phase = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double w = grid[i];
        const cplx s{0.0, w};
        const cplx n = tf.num(s);
        const cplx d = tf.den(s);
        const cplx H = eval_tf(tf, s);

        double phase = principal_arg(H);
        if (i > 0) {
            phase = prev_phase + std::remainder(phase - prev_phase, kTwoPi);
        }
        prev_phase = phase;

        double delay;
        if (!numerically_zero(tf.num, s, n) && n != cplx{}) {
            delay = -(dnum(s) / n - dden(s) / d).real();
        } else {
            const double up = principal_arg(H_at(w + fd_step));
            const double down = principal_arg(H_at(w - fd_step));
            delay = -std::remainder(up - down, kTwoPi) / (2.0 * fd_step);
        }
        out.push_back({w, H, std::abs(H), phase, delay});
    }
    return out;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t n) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi) {
        throw DomainError("linear_grid: need finite bounds with lo <= hi");
    }
    if (n == 0) {
        return {};
    }
    if (n == 1) {
        return {0.5 * (lo + hi)};
    }
    std::vector<double> g(n);
    const double step = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        g[i] = lo + step * static_cast<double>(i);
    }
    g.back() = hi;
    return g;
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
    if (!(lo > 0.0) || !(hi > 0.0)) {
        throw DomainError("log_grid: bounds must be positive");
    }
    if (!std::isfinite(hi) || lo > hi) {
        throw DomainError("log_grid: need finite bounds with lo <= hi");
    }
    if (n == 0) {
        return {};
    }
    if (n == 1) {
        return {std::sqrt(lo * hi)};
    }
    std::vector<double> g(n);
    const double a = std::log(lo);
    const double step = (std::log(hi) - a) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        g[i] = std::exp(a + step * static_cast<double>(i));
    }
    g.front() = lo;
    g.back() = hi;
    return g;
}

}  // namespace qionss::response
