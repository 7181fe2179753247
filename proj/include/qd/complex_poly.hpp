#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "qd/config.hpp"

namespace qd {

using Complex = std::complex<double>;

class PolyError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Dense complex polynomial, coefficients lowest degree first.
class ComplexPolynomial {
  public:
    ComplexPolynomial() : coeffs_{Complex(0.0)} {}
    explicit ComplexPolynomial(std::vector<Complex> coeffs);

    static ComplexPolynomial from_roots(const std::vector<Complex>& roots,
                                        Complex leading = Complex(1.0));
    // p(z) = (z^2-1)(z-a)(z-conj a), the real quartic family
    static ComplexPolynomial quartic_family(Complex a);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<Complex>& coeffs() const { return coeffs_; }
    Complex leading() const { return coeffs_.back(); }

    Complex operator()(Complex z) const;
    // value and first derivative in one pass
    void eval2(Complex z, Complex& p, Complex& dp) const;
    ComplexPolynomial derivative() const;
    ComplexPolynomial operator*(const ComplexPolynomial& other) const;

    bool is_real(double tol = 1e-12) const;
    bool is_monic(double tol = 1e-12) const;

  private:
    std::vector<Complex> coeffs_;
};

// Companion-matrix eigenvalues followed by one Newton polish per root.
// Throws PolyError for a constant polynomial.
std::vector<Complex> roots(const ComplexPolynomial& p,
                           const Tolerances& tol = {});

// Cluster a root multiset into (representative, multiplicity) pairs.
std::vector<std::pair<Complex, int>> cluster_roots(
    const std::vector<Complex>& rts, double gap);

}  // namespace qd
