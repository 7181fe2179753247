#include "qd/gamma_curve.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace qd {

namespace {

ComplexPolynomial pole_free_quartic(Complex z) {
    return ComplexPolynomial::from_roots(
        {z, std::conj(z), Complex(1.0), Complex(-1.0)});
}

std::vector<Complex> quartic_zeros(Complex z) {
    return {z, std::conj(z), Complex(1.0), Complex(-1.0)};
}

}  // namespace

FGSplit fg_split(double x, double y, const Tolerances& tol) {
    if (!(x > 1.0) || !(y > 0.0))
        throw std::domain_error("fg_split requires x > 1 and y > 0");
    const Complex z(x, y);
    const auto p = pole_free_quartic(z);
    const auto zs = quartic_zeros(z);
    // [1, x]: integrand is the positive real square root (principal branch)
    const Complex horiz = period_integral(
        p, OrientedPath::segment(Complex(1.0), Complex(x)), Complex(0.0), zs,
        tol);
    // vertical leg x -> x+iy, seeded by the positive root at the corner
    const Complex corner_seed(y * std::sqrt(x * x - 1.0), 0.0);
    const Complex vert = period_integral(
        p, OrientedPath::segment(Complex(x), z), corner_seed, zs, tol);
    return {horiz.real(), vert.real()};
}

double gamma_value(Complex z, const Tolerances& tol) {
    // |gamma| is symmetric in both axes; fold into the closed first quadrant
    if (z.imag() < 0.0) z = std::conj(z);
    if (z.real() < 0.0) z = -std::conj(z);
    const double x = z.real(), y = z.imag();
    if (y == 0.0 && x <= 1.0) return 0.0;  // the segment leg is purely
                                           // imaginary under the root
    if (x > 1.0 && y > 0.0) {
        const auto [F, G] = fg_split(x, y, tol);
        return F + G;
    }
    const auto p = pole_free_quartic(z);
    const auto zs = quartic_zeros(z);
    if (y == 0.0) {  // x > 1 on the real axis
        return period_integral(p,
                               OrientedPath::segment(Complex(1.0), Complex(x)),
                               Complex(0.0), zs, tol)
            .real();
    }
    // 0 <= x <= 1: the horizontal leg [0, x] contributes no real part, so
    // only the vertical leg remains; p is negative at its foot
    const Complex seed(0.0, y * std::sqrt(std::max(0.0, 1.0 - x * x)));
    return period_integral(p, OrientedPath::segment(Complex(x), z), seed, zs,
                           tol)
        .real();
}

namespace {

double asymptote_f(double x) {
    const double cot = std::cos(x) / std::sin(x);
    const double s = std::sin(x);
    return std::sinh(2.0 / (3.0 * cot * s * s * s) - cot / s) - cot;
}

}  // namespace

double solve_asymptote_angle() {
    double lo = 0.2, hi = 1.5;
    double flo = asymptote_f(lo);
    if (!(flo < 0.0) || !(asymptote_f(hi) > 0.0))
        throw std::runtime_error("asymptote bracket failed");
    for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (asymptote_f(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

namespace {

// Continuation of gamma_value = 0 from 1 in the first quadrant.
std::vector<Complex> trace_first_quadrant(const RunConfig& cfg,
                                          double radius) {
    std::vector<Complex> pts{Complex(1.0)};
    // The three zeros 1, z, conj z coalesce as z -> 1, so the local period
    // scales like |z-1|^{5/2} and the branch leaves 1 at a fixed angle
    // (~1.13797); locate it by bisection on a small circle.
    const double r0 = 0.004;
    double lo = 0.3, hi = 1.5;
    double flo = gamma_value(Complex(1.0) + r0 * std::polar(1.0, lo), cfg.tol);
    if (flo * gamma_value(Complex(1.0) + r0 * std::polar(1.0, hi), cfg.tol) >
        0.0)
        throw TraceError("branch root bracket failed", Complex(1.0));
    for (int it = 0; it < 50; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm =
            gamma_value(Complex(1.0) + r0 * std::polar(1.0, mid), cfg.tol);
        if (fm * flo <= 0.0)
            hi = mid;
        else {
            lo = mid;
            flo = fm;
        }
    }
    const Complex t0 = std::polar(1.0, 0.5 * (lo + hi));
    Complex z = Complex(1.0) + r0 * t0;
    Complex tangent = t0;
    double h = 1e-2;
    auto correct = [&](Complex guess, Complex normal, double step) {
        // 1-D Newton transverse to the tangent
        for (int it = 0; it < 30; ++it) {
            const double scale3 = std::pow(1.0 + std::abs(guess), 3);
            const double delta = 1e-7 * (1.0 + std::abs(guess));
            const double gp = gamma_value(guess + delta * normal, cfg.tol);
            const double gm = gamma_value(guess - delta * normal, cfg.tol);
            const double g0 = 0.5 * (gp + gm);
            const double dg = (gp - gm) / (2.0 * delta);
            if (std::abs(dg) < 1e-300)
                throw TraceError("flat corrector", guess);
            double t = -g0 / dg;
            if (std::abs(t) > 0.75 * std::max(step, 1e-3))
                throw TraceError("corrector divergence", guess);
            guess += t * normal;
            if (std::abs(g0) < 1e-10 * scale3 && std::abs(t) < 1e-10 * (1.0 + std::abs(guess)))
                return guess;
        }
        throw TraceError("corrector divergence", guess);
    };
    z = correct(z, Complex(0.0, 1.0) * tangent, r0);
    pts.push_back(z);
    while (std::abs(z) < radius) {
        bool ok = false;
        while (!ok) {
            const Complex guess = z + h * tangent;
            try {
                const Complex next =
                    correct(guess, Complex(0.0, 1.0) * tangent, h);
                tangent = (next - z) / std::abs(next - z);
                z = next;
                pts.push_back(z);
                ok = true;
                h = std::min(1.5 * h, 0.02 + 0.01 * std::abs(z));
            } catch (const TraceError&) {
                h *= 0.5;
                if (h < 1e-8) throw;
            }
        }
    }
    return pts;
}

const std::vector<Complex>& cached_first_quadrant() {
    static const std::vector<Complex> pts =
        trace_first_quadrant(RunConfig{}, 50.0);
    return pts;
}

}  // namespace

GammaBranch trace_branch(GammaLabel label, const RunConfig& cfg,
                         double radius) {
    GammaBranch br;
    br.label = label;
    br.polyline = trace_first_quadrant(cfg, radius);
    const double xstar = solve_asymptote_angle();
    switch (label) {
        case GammaLabel::Gamma1Plus:
            br.asymptote_angle = xstar;
            break;
        case GammaLabel::Gamma1Minus:
            for (Complex& z : br.polyline) z = std::conj(z);
            br.asymptote_angle = -xstar;
            break;
        case GammaLabel::GammaM1Plus:
            for (Complex& z : br.polyline) z = -std::conj(z);
            br.asymptote_angle = M_PI - xstar;
            break;
        case GammaLabel::GammaM1Minus:
            for (Complex& z : br.polyline) z = -z;
            br.asymptote_angle = xstar - M_PI;
            break;
    }
    return br;
}

RegionClass classify_region(Complex a, const RunConfig& cfg) {
    if (a.imag() == 0.0)
        throw TraceError("parameter must be non-real");
    const bool lower = a.imag() < 0.0;
    const bool left = a.real() < 0.0;
    Complex w = a;
    if (lower) w = std::conj(w);
    if (left) w = -std::conj(w);

    if (std::abs(w.imag()) < cfg.tol.on_curve && w.real() <= 1.0)
        return {Region::OnSegment, std::nullopt};
    if (std::abs(gamma_value(w, cfg.tol)) < cfg.tol.on_curve) {
        GammaLabel label = !left && !lower ? GammaLabel::Gamma1Plus
                           : !left         ? GammaLabel::Gamma1Minus
                           : !lower        ? GammaLabel::GammaM1Plus
                                           : GammaLabel::GammaM1Minus;
        return {Region::OnGamma, label};
    }

    // even-odd test: rightward ray from w against the first-quadrant branch
    std::vector<Complex> poly = cached_first_quadrant();
    poly.push_back(1e9 * std::polar(1.0, solve_asymptote_angle()));
    int crossings = 0;
    for (std::size_t k = 1; k < poly.size(); ++k) {
        const Complex p = poly[k - 1], q = poly[k];
        if ((p.imag() > w.imag()) == (q.imag() > w.imag())) continue;
        const double xint =
            p.real() + (w.imag() - p.imag()) * (q.real() - p.real()) /
                           (q.imag() - p.imag());
        if (xint > w.real()) ++crossings;
    }
    if (crossings % 2 == 1)
        return {lower ? Region::OmegaMinus : Region::OmegaPlus, std::nullopt};
    return {left ? Region::Omega2 : Region::Omega1, std::nullopt};
}

}  // namespace qd
