#pragma once

#include "qd/complex_poly.hpp"
#include "qd/path.hpp"

namespace qd {

class QuadError : public std::runtime_error {
  public:
    QuadError(const std::string& what, double achieved = 0.0, int index = -1)
        : std::runtime_error(what), achieved_error(achieved), sample_index(index) {}
    double achieved_error;
    int sample_index;  // offending path sample, when relevant
};

// Pick the square root of pz continuous with ref (nearest of the two signs).
inline Complex sqrt_continuous(Complex pz, Complex ref) {
    Complex v = std::sqrt(pz);
    if (std::abs(v - ref) > std::abs(v + ref)) v = -v;
    return v;
}

// Single-valued sqrt(p) along the path, continued from start_branch.
// Throws QuadError("branch point proximity") if a sample comes too close
// to a zero of p.
BranchedSqrtTrace sqrt_along(const ComplexPolynomial& p,
                             const OrientedPath& path, Complex start_branch,
                             const Tolerances& tol = {});

// Adaptive Gauss-Kronrod integral of sqrt(p) dz along the path with branch
// continuity enforced at every quadrature node. Endpoint samples that sit on
// (or near) a zero of p get a w^2 substitution on the terminal sub-segment.
Complex period_integral(const ComplexPolynomial& p, const OrientedPath& path,
                        Complex start_branch, const Tolerances& tol = {});

// Same, but the zeros of p are supplied by the caller (saves the root solve
// when the factorization is known).
Complex period_integral(const ComplexPolynomial& p, const OrientedPath& path,
                        Complex start_branch, const std::vector<Complex>& zeros,
                        const Tolerances& tol = {});

// Conjugate-symmetric arc from conj(a) to a for the quartic family
// (z^2-1)(z-a)(z-conj a). The arc crosses the real axis at a point where p
// is positive, so the continued branch satisfies sqrt(p(conj z)) =
// conj(sqrt(p(z))) and the real part of the period vanishes. A straight
// vertical segment would cross the cut [-1,1] when |Re a| < 1; the arc is
// routed around +-1 in that case.
OrientedPath conjugate_pair_path(Complex a);

// -res_inf(sqrt p) = (alpha^3 - 4 alpha beta + 8 gamma)/16 for a monic
// quartic p = z^4 + alpha z^3 + beta z^2 + gamma z + delta.
Complex residue_at_infinity(const ComplexPolynomial& p);

// Necessary condition for two short trajectories joining two pairs of zeros:
// Im(alpha^3 - 4 alpha beta + 8 gamma) = 0. Necessary only, never used as a
// classifier on its own.
bool pairing_condition_holds(const ComplexPolynomial& p, double tol = 1e-10);

}  // namespace qd
