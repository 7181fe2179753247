#include "qd/mother_body.hpp"

#include <cmath>
#include <stdexcept>

namespace qd {

namespace {

// Solution branches of C^2 + r C + s = 0 at one point, cancellation-safe:
// the large root is computed by the stable sign choice, the small (decaying)
// one as s over the large root.
Complex small_root(Complex r, Complex s) {
    const Complex disc = std::sqrt(r * r - 4.0 * s);
    const Complex plus = r + disc;
    const Complex minus = r - disc;
    const Complex big2 = std::abs(plus) >= std::abs(minus) ? plus : minus;
    if (std::abs(big2) == 0.0) return Complex(0.0);  // r = s = 0
    const Complex big = -big2 / 2.0;
    return s / big;
}

}  // namespace

ComplexPolynomial QuadraticAlgebraicEq::discriminant() const {
    const ComplexPolynomial r2 = r_poly() * r_poly();
    std::vector<Complex> q = r2.coeffs();
    q.resize(5, Complex(0.0));
    q[0] -= 4.0 * f;
    q[1] -= 4.0 * e;
    return ComplexPolynomial(std::move(q));
}

DiscriminantQD discriminant_qd(const QuadraticAlgebraicEq& eq,
                               const Tolerances& tol) {
    if (std::abs(eq.a) == 0.0)
        throw std::invalid_argument("discriminant is not quartic (a = 0)");
    const Complex lead = eq.a * eq.a;
    if (std::abs(lead.imag()) > 1e-12 * std::abs(lead) || lead.real() <= 0.0)
        throw std::invalid_argument(
            "leading coefficient a^2 is not positive real; rotate "
            "coordinates before building the quadratic differential");
    const double factor = lead.real();
    std::vector<Complex> c = eq.discriminant().coeffs();
    for (Complex& x : c) x /= factor;
    DiscriminantQD out{QuadraticDifferential::from_polynomial(
                           ComplexPolynomial(std::move(c)), tol),
                       factor, false};
    for (const auto& [z, mult] : out.qd.zeros)
        if (mult > 1) out.degenerate = true;
    return out;
}

MassReport total_mass(const QuadraticAlgebraicEq& eq, const Tolerances& tol) {
    (void)tol;
    double max_coef = 0.0;
    for (Complex c : {eq.a, eq.b, eq.c, eq.e, eq.f})
        max_coef = std::max(max_coef, std::abs(c));
    const double R = 1e6 * (1.0 + max_coef);
    const auto laurent = [&](double radius) {
        const Complex z(radius);
        const Complex r = (eq.a * z + eq.b) * z + eq.c;
        const Complex s = eq.e * z + eq.f;
        return radius * small_root(r, s);
    };
    // m(R) = nu + c2/R + O(R^-2); the two-point Richardson step removes the
    // 1/R term
    const Complex nu = 2.0 * laurent(2.0 * R) - laurent(R);
    MassReport rep;
    rep.numeric = nu;
    rep.mass = nu.real();
    rep.analytic = std::abs(eq.a) > 0.0 ? -eq.e / eq.a : Complex(0.0);
    rep.doubled = 2.0 * rep.analytic;
    const Complex ea = -rep.analytic;
    rep.e_over_a_real = std::abs(ea.imag()) < 1e-10 * (1.0 + std::abs(ea));
    return rep;
}

std::vector<DensitySample> plemelj_density(const QuadraticAlgebraicEq& eq,
                                           const Trajectory& arc,
                                           const Tolerances& tol) {
    if (arc.points.size() < 2)
        throw std::invalid_argument("arc needs at least two points");
    const ComplexPolynomial Q = eq.discriminant();
    const Complex two_pi_i(0.0, 2.0 * M_PI);

    // samples inside the capture region next to a zero of Q come from the
    // tracer's terminal chord, whose direction carries no tangent accuracy;
    // the density vanishes there, so they are omitted from the output
    const std::vector<Complex> qz = roots(Q, tol);
    double min_gap = 1e300;
    for (std::size_t i = 0; i < qz.size(); ++i)
        for (std::size_t j = i + 1; j < qz.size(); ++j)
            min_gap = std::min(min_gap, std::abs(qz[i] - qz[j]));
    const double exclude = 10.0 * tol.capture_rel * min_gap;

    // deduplicate and branch-continue sqrt(Q) along the vertices
    std::vector<Complex> pts;
    pts.reserve(arc.points.size());
    for (Complex z : arc.points)
        if (pts.empty() || std::abs(z - pts.back()) > 0.0) pts.push_back(z);
    if (pts.size() < 2)
        throw std::invalid_argument("arc needs at least two distinct points");

    std::vector<Complex> w(pts.size());
    Complex drift(0.0);
    double length = 0.0;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        w[k] = k == 0 ? std::sqrt(Q(pts[0]))
                      : sqrt_continuous(Q(pts[k]), w[k - 1]);
        if (k > 0) {
            const Complex dz = pts[k] - pts[k - 1];
            drift += 0.5 * (w[k] + w[k - 1]) * dz;
            length += std::abs(dz);
        }
    }
    // a horizontal trajectory of -Q dz^2 is a level set of Re int sqrt(Q)
    const double drift_tol = 1e-4 * (1.0 + std::abs(drift)) + 1e-6 * length;
    if (std::abs(drift.real()) > drift_tol)
        throw std::invalid_argument(
            "arc is not a trajectory of the discriminant differential");

    // canonical global branch sign, independent of traversal direction:
    // fix the sign of sqrt(Q) at the lexicographically smallest vertex so
    // that a reversed arc sees the same branch (and hence a negated density)
    std::size_t pivot = 0;
    for (std::size_t k = 1; k < pts.size(); ++k) {
        if (pts[k].real() < pts[pivot].real() ||
            (pts[k].real() == pts[pivot].real() &&
             pts[k].imag() < pts[pivot].imag()))
            pivot = k;
    }
    if (w[pivot].real() < 0.0 ||
        (w[pivot].real() == 0.0 && w[pivot].imag() < 0.0))
        for (Complex& v : w) v = -v;

    // the vertices sit on the level set to projection accuracy, where the
    // exact unit tangent is +-i conj(w)/|w|; the chord only resolves the
    // +- orientation (a chord tangent itself would inject O(h^2) noise into
    // the identically-real density)
    std::vector<DensitySample> out;
    out.reserve(pts.size());
    for (std::size_t k = 0; k < pts.size(); ++k) {
        bool near_zero = false;
        for (Complex z : qz)
            if (std::abs(pts[k] - z) < exclude) near_zero = true;
        if (near_zero || std::abs(w[k]) == 0.0) continue;
        const Complex chord =
            pts[std::min(k + 1, pts.size() - 1)] - pts[k == 0 ? 0 : k - 1];
        Complex u = Complex(0.0, 1.0) * std::conj(w[k]) / std::abs(w[k]);
        if ((u * std::conj(chord)).real() < 0.0) u = -u;
        DensitySample s;
        s.t = pts[k];
        s.raw = w[k] * u / two_pi_i;
        s.density = s.raw.real();
        out.push_back(s);
    }
    return out;
}

MotherBodyCandidate verify_candidate(const QuadraticAlgebraicEq& eq,
                                     const CriticalGraph& graph,
                                     const Tolerances& tol) {
    MotherBodyCandidate cand;
    const MassReport mass = total_mass(eq, tol);
    cand.e_over_a_real = mass.e_over_a_real;
    const DiscriminantQD disc = discriminant_qd(eq, tol);
    const double sqrt_factor = std::sqrt(disc.factor);

    std::vector<Complex> zeros;
    for (const auto& [z, mult] : graph.qd.zeros) zeros.push_back(z);

    std::string density_violation;
    for (const ShortTrajectory& st : short_trajectories(graph)) {
        const auto samples = plemelj_density(eq, *st.traj, tol);
        double maxd = 0.0;
        for (const auto& s : samples) maxd = std::max(maxd, std::abs(s.raw));
        int sign = 0;
        bool real_ok = true, sign_ok = true;
        for (const auto& s : samples) {
            if (std::abs(s.raw.imag()) > 1e-8 * (1.0 + maxd)) real_ok = false;
            if (std::abs(s.density) < 1e-9 * (1.0 + maxd)) continue;
            const int sgn = s.density > 0.0 ? 1 : -1;
            if (sign == 0) sign = sgn;
            else if (sign != sgn) sign_ok = false;
        }
        if (!real_ok && density_violation.empty())
            density_violation = "density not real";
        else if (!sign_ok && density_violation.empty())
            density_violation = "density sign change";

        // arc mass: |(1/2 pi i) int sqrt(Q) dz|, endpoint singularities
        // handled by the quadrature layer; the integral only depends on the
        // homotopy class of the polyline, not on tracer wiggle
        OrientedPath path;
        path.samples.push_back(graph.vertices[st.zero_a].first);
        for (Complex z : st.traj->points) {
            if (std::abs(z - path.samples.back()) > 1e-12) path.samples.push_back(z);
        }
        const Complex zb = graph.vertices[st.zero_b].first;
        if (std::abs(zb - path.samples.back()) > 1e-12) path.samples.push_back(zb);
        const Complex period = period_integral(graph.qd.p, path, Complex(0.0),
                                               zeros, tol);
        ArcReport arc;
        arc.endpoint_a = path.samples.front();
        arc.endpoint_b = path.samples.back();
        arc.mass = std::abs(period) * sqrt_factor / (2.0 * M_PI);
        arc.sign = sign;
        cand.arcs.push_back(arc);
        cand.mass += arc.mass;
    }

    if (!cand.e_over_a_real) {
        cand.violated = "mass not real";
    } else if (!density_violation.empty()) {
        cand.violated = density_violation;
    } else if (std::abs(mass.mass) > 1e-8 && cand.mass < 1e-8) {
        cand.violated = "support deficit";
    } else if (std::abs(cand.mass - mass.mass) >
               1e-6 * (1.0 + std::abs(mass.mass))) {
        cand.violated = "mass mismatch";
    }
    cand.accepted = cand.violated.empty();
    return cand;
}

}  // namespace qd
