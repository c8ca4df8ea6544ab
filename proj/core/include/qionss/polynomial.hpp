#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

namespace qionss {

using cplx = std::complex<double>;

// Complex polynomial with ascending coefficients: c[0] + c[1] s + ... .
// Trailing zero coefficients are trimmed; the zero polynomial has no coefficients.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<cplx> ascending);
    Polynomial(std::initializer_list<cplx> ascending);

    const std::vector<cplx>& coeffs() const noexcept { return c_; }
    bool is_zero() const noexcept { return c_.empty(); }
    // -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    cplx leading() const;

    cplx operator()(cplx s) const;
    // Sum of |c_k| |s|^k: the natural scale for rounding error in operator().
    double magnitude_bound(double abs_s) const;

    Polynomial derivative() const;

    // Degree 1 in closed form, otherwise eigenvalues of the companion matrix.
    std::vector<cplx> roots() const;

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(cplx f, const Polynomial& p);

private:
    void trim();
    std::vector<cplx> c_;
};

}  // namespace qionss
