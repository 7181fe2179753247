#pragma once

#include "qd/quad_diff.hpp"

namespace qd {

// C^2(z) + r(z) C(z) + s(z) = 0 with r quadratic, s linear: the algebraic
// equation satisfied by the limiting Cauchy transform of the rescaled root
// measures. r(z) = a z^2 + b z + c, s(z) = e z + f, a != 0.
struct QuadraticAlgebraicEq {
    Complex a, b, c;  // r(z) = a z^2 + b z + c
    Complex e, f;     // s(z) = e z + f

    // r = -2(z^2 - b_param), s = 2z - beta: the equation produced by the
    // rescaled quartic-oscillator spectral problem.
    static QuadraticAlgebraicEq from_spectral(double b_param, Complex beta) {
        return {Complex(-2.0), Complex(0.0), Complex(2.0 * b_param),
                Complex(2.0), -beta};
    }

    ComplexPolynomial r_poly() const { return ComplexPolynomial({c, b, a}); }
    ComplexPolynomial s_poly() const { return ComplexPolynomial({f, e}); }
    // discriminant Q = r^2 - 4s, a quartic with leading coefficient a^2
    ComplexPolynomial discriminant() const;
};

struct DiscriminantQD {
    QuadraticDifferential qd;  // -p dz^2 with p = Q / factor monic
    double factor;             // positive real leading coefficient of Q
    bool degenerate;           // some zero of Q has multiplicity > 1
};

// The quadratic differential -Q dz^2, monic-normalized. Throws
// std::invalid_argument when a = 0 (Q not quartic) or when a^2 is not a
// positive real number (the trajectory structure is only invariant under
// positive real scaling; rotate coordinates first).
DiscriminantQD discriminant_qd(const QuadraticAlgebraicEq& eq,
                               const Tolerances& tol = {});

struct MassReport {
    Complex numeric;        // numeric 1/z Laurent coefficient of the
                            // decaying solution branch
    double mass;            // its real part (the mass when e/a is real)
    Complex analytic;       // -e/a, the closed form of the same coefficient
    Complex doubled;        // -2e/a, the un-halved variant kept for
                            // cross-reference; always exactly 2x analytic
    bool e_over_a_real;     // Im(e/a) below tolerance
};

// Laurent coefficient extraction at R = 1e6 (1 + max coefficient modulus)
// with a two-point Richardson step (2 m(2R) - m(R), m(R) = R C(R)).
MassReport total_mass(const QuadraticAlgebraicEq& eq,
                      const Tolerances& tol = {});

struct DensitySample {
    Complex t;        // point on the arc
    Complex raw;      // sqrt(Q(t)) dt / (2 pi i |dt|), before the real check
    double density;   // real part of raw (per unit arclength)
};

// Plemelj-Sokhotsky jump density (1/2pi i) sqrt(Q) dt along the arc, per
// unit arclength. The branch of sqrt(Q) is continued along the arc; the
// overall sign is the branch choice of the caller's arc orientation.
// Throws std::invalid_argument if the arc is not a trajectory of -Q dz^2
// (|Re int sqrt(Q)| along the arc beyond tolerance).
std::vector<DensitySample> plemelj_density(const QuadraticAlgebraicEq& eq,
                                           const Trajectory& arc,
                                           const Tolerances& tol = {});

struct ArcReport {
    Complex endpoint_a, endpoint_b;
    double mass;  // |(1/2 pi i) int_arc sqrt(Q) dz|
    int sign;     // sign of the sampled density for the traced orientation
};

struct MotherBodyCandidate {
    double mass = 0.0;           // sum of arc masses
    bool e_over_a_real = false;
    std::vector<ArcReport> arcs;
    bool accepted = false;
    std::string violated;  // empty when accepted; otherwise the failed
                           // condition: "mass not real", "density not real",
                           // "density sign change", "support deficit",
                           // "mass mismatch"
};

// Assemble densities over the short trajectories of `graph` (which must be
// the critical graph of discriminant_qd(eq)) and accept iff every density
// is real and single-signed, e/a is real, and the arc masses sum to
// total_mass(eq).
MotherBodyCandidate verify_candidate(const QuadraticAlgebraicEq& eq,
                                     const CriticalGraph& graph,
                                     const Tolerances& tol = {});

}  // namespace qd
