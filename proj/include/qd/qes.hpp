#pragma once

#include "qd/complex_poly.hpp"

namespace qd {

// Quartic oscillator with polynomial-times-exp(-tau) eigenfunctions:
// tau(z) = z^3/3 - b m^{2/3} z and T_m(y) = y'' - 2 tau' y' + 2(m-1) z y
// preserves polynomials of degree < m.
struct SpectralProblem {
    int m;
    double b;
};

struct EigenPair {
    Complex beta;                 // beta = lambda + b^2 m^{4/3}
    std::vector<Complex> coeffs;  // monomial coefficients of p_m, length m,
                                  // highest nonzero coefficient = 1
};

struct RootMeasure {
    std::vector<Complex> points;  // roots of p_m scaled by m^{-1/3}
    double weight = 0.0;          // 1/m per point
    double total_mass() const { return weight * points.size(); }
};

enum class SelectRule { MaxReal, MinReal, MaxModulus, Index };

using DenseMatrix = std::vector<std::vector<Complex>>;  // row-major

// Matrix of T_m on the basis {1, z, ..., z^{m-1}}; column k is the image of
// z^k: k(k-1) z^{k-2} + 2 b m^{2/3} k z^{k-1} + 2(m-1-k) z^{k+1}.
DenseMatrix operator_matrix(const SpectralProblem& prob);

// All m eigenpairs, sorted by descending Re beta (ties by Im beta).
std::vector<EigenPair> eigenpairs(const SpectralProblem& prob);

EigenPair select_state(const std::vector<EigenPair>& pairs, SelectRule rule,
                       int index = 0);

RootMeasure rescaled_measure(const SpectralProblem& prob,
                             const EigenPair& pair,
                             const Tolerances& tol = {});

struct RiccatiResidual {
    Complex exact;      // rho^2 + rho'/m - 2(z^2-b) rho + 2(m-1)z/m
                        //   - beta/m^{4/3}; an algebraic identity, vanishes
                        //   to rounding
    Complex published;  // same with 2z in place of 2(m-1)z/m; O(|z|/m)
};
RiccatiResidual riccati_residual(const SpectralProblem& prob,
                                 const EigenPair& pair, Complex z,
                                 const Tolerances& tol = {});

// beta_m / m^{4/3} for each m in the (increasing) list.
std::vector<Complex> beta_limit_estimate(double b, const std::vector<int>& ms,
                                         SelectRule rule = SelectRule::MaxReal);

}  // namespace qd
