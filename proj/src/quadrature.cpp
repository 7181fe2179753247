#include "qd/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace qd {

namespace {

// 7-15 Gauss-Kronrod nodes/weights on [-1, 1]
constexpr int kNumNodes = 15;
constexpr double kNodes[kNumNodes] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898, 0.0,                0.207784955007898,
    0.405845151377397,  0.586087235467691,  0.741531185599394,
    0.864864423359769,  0.949107912342759,  0.991455371120813};
constexpr double kWeightsK[kNumNodes] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728, 0.204432940075298,
    0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529};
constexpr double kWeightsG[kNumNodes] = {
    0.0, 0.129484966168870, 0.0, 0.279705391489277, 0.0, 0.381830050505119,
    0.0, 0.417959183673469, 0.0, 0.381830050505119, 0.0, 0.279705391489277,
    0.0, 0.129484966168870, 0.0};

struct PanelResult {
    Complex integral;
    double error;
    Complex end_value;  // branch of sqrt(p) at the right endpoint
    bool rough;         // node-to-node jump too large for safe tracking
};

// Integrand: sqrt(p(z(t))) * dz/dt over t in [t0, t1], branch threaded left
// to right from seed. A zero seed means "no reference" (start at a zero of
// p); the principal value at the first node is taken instead.
class PanelIntegrator {
  public:
    PanelIntegrator(const ComplexPolynomial& p,
                    std::function<Complex(double)> zmap,
                    std::function<Complex(double)> dzmap)
        : p_(p), z_(std::move(zmap)), dz_(std::move(dzmap)) {}

    PanelResult panel(double t0, double t1, Complex seed) const {
        const double mid = 0.5 * (t0 + t1);
        const double half = 0.5 * (t1 - t0);
        Complex ig(0.0), ik(0.0);
        Complex prev = seed;
        bool have_prev = std::abs(seed) > 0.0;
        bool rough = false;
        for (int i = 0; i < kNumNodes; ++i) {
            const double t = mid + half * kNodes[i];
            const Complex pz = p_(z_(t));
            Complex v = have_prev ? sqrt_continuous(pz, prev) : std::sqrt(pz);
            if (have_prev && std::abs(v - prev) >
                                 0.8 * std::max(std::abs(v), std::abs(prev)) &&
                std::abs(prev) > 0.0)
                rough = true;
            prev = v;
            have_prev = true;
            const Complex f = v * dz_(t);
            ik += kWeightsK[i] * f;
            ig += kWeightsG[i] * f;
        }
        ik *= half;
        ig *= half;
        const Complex endv = sqrt_continuous(p_(z_(t1)), prev);
        return {ik, std::abs(ik - ig), endv, rough};
    }

    // Adaptive bisection until abs error per panel meets its share of tol.
    Complex integrate(double t0, double t1, Complex seed, double tol,
                      int max_depth, double& achieved, Complex& end_value) const {
        achieved = 0.0;
        Complex total = adapt(t0, t1, seed, tol, max_depth, achieved, end_value);
        return total;
    }

  private:
    Complex adapt(double t0, double t1, Complex seed, double tol, int depth,
                  double& err_acc, Complex& end_value) const {
        PanelResult r = panel(t0, t1, seed);
        // relative floor: absolute targets are unreachable once the values
        // themselves dwarf machine precision
        const double accept = std::max(tol, 1e-14 * std::abs(r.integral));
        if ((!r.rough && r.error < accept) || depth <= 0) {
            err_acc += r.error;
            end_value = r.end_value;
            return r.integral;
        }
        const double mid = 0.5 * (t0 + t1);
        Complex left_end;
        Complex left =
            adapt(t0, mid, seed, 0.5 * tol, depth - 1, err_acc, left_end);
        Complex right =
            adapt(mid, t1, left_end, 0.5 * tol, depth - 1, err_acc, end_value);
        return left + right;
    }

    const ComplexPolynomial& p_;
    std::function<Complex(double)> z_;
    std::function<Complex(double)> dz_;
};

double dist_point_segment(Complex q, Complex a, Complex b) {
    const Complex ab = b - a;
    const double len2 = std::norm(ab);
    if (len2 == 0.0) return std::abs(q - a);
    double t = ((q - a) * std::conj(ab)).real() / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(q - (a + t * ab));
}

// Continue the branch of sqrt(p) from a to b by stepwise refinement.
Complex walk_branch(const ComplexPolynomial& p, Complex a, Complex b,
                    Complex branch_at_a) {
    int pieces = 8;
    while (pieces <= 1 << 16) {
        Complex cand = branch_at_a;
        bool ok = true;
        for (int j = 1; j <= pieces; ++j) {
            const Complex z = a + (b - a) * (static_cast<double>(j) / pieces);
            const Complex v = sqrt_continuous(p(z), cand);
            if (std::abs(v - cand) >
                0.5 * std::max(std::abs(v), std::abs(cand))) {
                ok = false;
                break;
            }
            cand = v;
        }
        if (ok) return cand;
        pieces *= 2;
    }
    return sqrt_continuous(p(b), branch_at_a);
}

// Integrate sqrt(p) over the straight segment [a, b]; sing_a/sing_b request
// the w^2 endpoint substitution at the corresponding end.
Complex segment_integral(const ComplexPolynomial& p, Complex a, Complex b,
                         bool sing_a, bool sing_b, Complex seed, double tol,
                         int max_depth, double& achieved, Complex& end_value) {
    if (sing_a && sing_b) {
        const Complex mid = 0.5 * (a + b);
        Complex mid_value;
        double e1 = 0.0, e2 = 0.0;
        Complex left = segment_integral(p, a, mid, true, false, seed, 0.5 * tol,
                                        max_depth, e1, mid_value);
        Complex right = segment_integral(p, mid, b, false, true, mid_value,
                                         0.5 * tol, max_depth, e2, end_value);
        achieved = e1 + e2;
        return left + right;
    }
    if (sing_b) {
        // reverse, substitute at the (now left) singular end, negate
        Complex start_value;
        double e = 0.0;
        // branch continuity runs b -> a; thread the seed through the reversed
        // orientation by seeding with the value expected at b (unknown when b
        // is a zero: pass 0) and fixing the global sign against `seed` at a.
        Complex flipped_end;
        Complex val = segment_integral(p, b, a, true, false, Complex(0.0), tol,
                                       max_depth, e, flipped_end);
        achieved = e;
        // flipped_end is the branch at a as continued from b; align with seed
        if (std::abs(seed) > 0.0 &&
            std::abs(flipped_end - seed) > std::abs(flipped_end + seed)) {
            val = -val;
            flipped_end = -flipped_end;
        }
        // branch at b: zero when b sits exactly on a zero of p, otherwise
        // continued from a along the segment
        end_value = std::abs(p(b)) < 1e-300
                        ? Complex(0.0)
                        : walk_branch(p, a, b, flipped_end);
        (void)start_value;
        return -val;
    }
    if (sing_a) {
        const Complex c = b - a;
        PanelIntegrator integ(
            p, [a, c](double w) { return a + c * (w * w); },
            [c](double w) { return 2.0 * c * w; });
        // seed is ambiguous at the zero itself; let the first node decide
        Complex val = integ.integrate(0.0, 1.0, Complex(0.0), tol, max_depth,
                                      achieved, end_value);
        // if the caller had a meaningful branch at a (near- but not exactly-
        // zero start), align the sign with it
        if (std::abs(seed) > 1e-150) {
            const Complex at_start = sqrt_continuous(p(a), seed);
            // recompute first-node branch implied by end_value is awkward;
            // align via the value at a small offset instead
            const Complex probe = a + 1e-6 * c;
            const Complex vprobe = sqrt_continuous(p(probe), at_start);
            const Complex vprobe2 = sqrt_continuous(p(probe), end_value);
            if (std::abs(vprobe + vprobe2) < std::abs(vprobe - vprobe2)) {
                val = -val;
                end_value = -end_value;
            }
        }
        return val;
    }
    PanelIntegrator integ(
        p, [a, b](double t) { return a + t * (b - a); },
        [a, b](double) { return b - a; });
    return integ.integrate(0.0, 1.0, seed, tol, max_depth, achieved, end_value);
}

}  // namespace

OrientedPath OrientedPath::circle(Complex center, double radius, int n) {
    OrientedPath path;
    path.closed = true;
    path.samples.reserve(n + 1);
    for (int k = 0; k <= n; ++k) {
        const double th = 2.0 * M_PI * k / n;
        path.samples.push_back(center + radius * Complex(std::cos(th),
                                                         std::sin(th)));
    }
    return path;
}

BranchedSqrtTrace sqrt_along(const ComplexPolynomial& p,
                             const OrientedPath& path, Complex start_branch,
                             const Tolerances& tol) {
    if (path.samples.size() < 2)
        throw QuadError("path needs at least two samples");
    std::vector<Complex> zs;
    if (p.degree() >= 1) zs = roots(p, tol);
    double scale = 1.0;
    for (Complex z : zs) scale = std::max(scale, std::abs(z));
    const double clearance = tol.branch_clearance * scale;

    const Complex p0 = p(path.start());
    if (std::abs(start_branch * start_branch - p0) >
        1e-8 * (1.0 + std::abs(p0)))
        throw QuadError("start_branch does not square to p at path start");

    BranchedSqrtTrace trace;
    trace.path = path;
    trace.values.reserve(path.samples.size());
    Complex prev = start_branch;
    trace.values.push_back(prev);
    for (std::size_t k = 1; k < path.samples.size(); ++k) {
        for (Complex z : zs) {
            if (dist_point_segment(z, path.samples[k - 1], path.samples[k]) <
                clearance)
                throw QuadError("branch point proximity", 0.0,
                                static_cast<int>(k));
        }
        // refine between samples until the branch walk is unambiguous
        const Complex a = path.samples[k - 1];
        const Complex b = path.samples[k];
        int pieces = 1;
        bool ok = false;
        Complex cand = prev;
        while (!ok && pieces <= 1 << 16) {
            cand = prev;
            ok = true;
            for (int j = 1; j <= pieces; ++j) {
                const Complex z = a + (b - a) * (static_cast<double>(j) / pieces);
                const Complex v = sqrt_continuous(p(z), cand);
                if (std::abs(v - cand) >
                    0.5 * std::max(std::abs(v), std::abs(cand))) {
                    ok = false;
                    pieces *= 2;
                    break;
                }
                cand = v;
            }
        }
        prev = cand;
        trace.values.push_back(prev);
    }
    return trace;
}

Complex period_integral(const ComplexPolynomial& p, const OrientedPath& path,
                        Complex start_branch, const Tolerances& tol) {
    std::vector<Complex> zs;
    if (p.degree() >= 1) zs = roots(p, tol);
    return period_integral(p, path, start_branch, zs, tol);
}

Complex period_integral(const ComplexPolynomial& p, const OrientedPath& path,
                        Complex start_branch, const std::vector<Complex>& zeros,
                        const Tolerances& tol) {
    if (path.samples.size() < 2)
        throw QuadError("path needs at least two samples");
    double scale = 1.0;
    for (Complex z : zeros) scale = std::max(scale, std::abs(z));
    const double clearance = tol.branch_clearance * scale;

    Complex total(0.0);
    Complex branch = start_branch;
    double err_total = 0.0;
    const double tol_per_seg =
        tol.quadrature_abs / static_cast<double>(path.samples.size() - 1);
    for (std::size_t k = 1; k < path.samples.size(); ++k) {
        const Complex a = path.samples[k - 1];
        const Complex b = path.samples[k];
        const double len = std::abs(b - a);
        if (len == 0.0) continue;
        const double sing_radius = 0.1 * len;
        bool sing_a = false, sing_b = false;
        for (Complex z : zeros) {
            if (std::abs(z - a) < sing_radius) sing_a = true;
            if (std::abs(z - b) < sing_radius) sing_b = true;
        }
        for (Complex z : zeros) {
            if (std::abs(z - a) < sing_radius || std::abs(z - b) < sing_radius)
                continue;
            if (dist_point_segment(z, a, b) < clearance)
                throw QuadError("branch point proximity", 0.0,
                                static_cast<int>(k));
        }
        double achieved = 0.0;
        Complex end_value;
        total += segment_integral(p, a, b, sing_a, sing_b, branch, tol_per_seg,
                                  tol.max_quad_depth, achieved, end_value);
        err_total += achieved;
        branch = end_value;
    }
    if (err_total > 100.0 * tol.quadrature_abs * (1.0 + std::abs(total)))
        throw QuadError("quadrature did not converge", err_total);
    return total;
}

OrientedPath conjugate_pair_path(Complex a) {
    const double x = a.real();
    if (std::abs(x) > 1.2) return OrientedPath::segment(std::conj(a), a);
    const double side = x >= 0.0 ? 1.0 : -1.0;
    const Complex mid(side * (2.0 + std::abs(a)), 0.0);
    return OrientedPath{{std::conj(a), mid, a}, false};
}

Complex residue_at_infinity(const ComplexPolynomial& p) {
    if (p.degree() != 4 || !p.is_monic(1e-12))
        throw PolyError("residue_at_infinity requires a monic quartic");
    const Complex alpha = p.coeffs()[3];
    const Complex beta = p.coeffs()[2];
    const Complex gamma = p.coeffs()[1];
    return (alpha * alpha * alpha - 4.0 * alpha * beta + 8.0 * gamma) / 16.0;
}

bool pairing_condition_holds(const ComplexPolynomial& p, double tol) {
    return std::abs((16.0 * residue_at_infinity(p)).imag()) < tol;
}

}  // namespace qd
