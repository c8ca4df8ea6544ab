#include "qionss/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "qionss/errors.hpp"

namespace qionss {

Polynomial::Polynomial(std::vector<cplx> ascending) : c_(std::move(ascending)) { trim(); }

Polynomial::Polynomial(std::initializer_list<cplx> ascending) : c_(ascending) { trim(); }

void Polynomial::trim() {
    while (!c_.empty() && c_.back() == cplx{}) {
        c_.pop_back();
    }
}

cplx Polynomial::leading() const {
    if (c_.empty()) {
        throw DomainError("Polynomial: zero polynomial has no leading coefficient");
    }
    return c_.back();
}

cplx Polynomial::operator()(cplx s) const {
    cplx acc{};
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        acc = acc * s + *it;
    }
    return acc;
}

double Polynomial::magnitude_bound(double abs_s) const {
    double acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        acc = acc * abs_s + std::abs(*it);
    }
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (c_.size() <= 1) {
        return {};
    }
    std::vector<cplx> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) {
        d[k - 1] = static_cast<double>(k) * c_[k];
    }
    return Polynomial(std::move(d));
}

std::vector<cplx> Polynomial::roots() const {
    const int n = degree();
    if (n < 0) {
        throw DomainError("Polynomial::roots: zero polynomial");
    }
    if (n == 0) {
        return {};
    }
    if (n == 1) {
        return {-c_[0] / c_[1]};
    }
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i) {
        companion(i, i - 1) = 1.0;
    }
    for (int i = 0; i < n; ++i) {
        companion(i, n - 1) = -c_[i] / c_[n];
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    const Eigen::VectorXcd ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<cplx> out(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t k = 0; k < a.c_.size(); ++k) {
        out[k] += a.c_[k];
    }
    for (std::size_t k = 0; k < b.c_.size(); ++k) {
        out[k] += b.c_[k];
    }
    return Polynomial(std::move(out));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) {
        return {};
    }
    std::vector<cplx> out(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        for (std::size_t j = 0; j < b.c_.size(); ++j) {
            out[i + j] += a.c_[i] * b.c_[j];
        }
    }
    return Polynomial(std::move(out));
}

Polynomial operator*(cplx f, const Polynomial& p) {
    std::vector<cplx> out = p.c_;
    for (auto& c : out) {
        c *= f;
    }
    return Polynomial(std::move(out));
}

}  // namespace qionss
