#include <random>

#include "doctest.h"
#include "qd/quadrature.hpp"

using qd::Complex;
using qd::ComplexPolynomial;
using qd::OrientedPath;

TEST_CASE("sqrt_along of a constant polynomial is constant") {
    ComplexPolynomial one({Complex(1.0)});
    auto path = OrientedPath{{Complex(0.0), Complex(1.0, 1.0), Complex(2.0)},
                             false};
    auto trace = qd::sqrt_along(one, path, Complex(1.0));
    for (Complex v : trace.values) CHECK(std::abs(v - Complex(1.0)) < 1e-14);
}

TEST_CASE("monodromy around one simple zero flips the sign") {
    auto p = ComplexPolynomial::from_roots({Complex(0.0), Complex(3.0)});
    auto loop = OrientedPath::circle(Complex(0.0), 1.0);
    Complex start = std::sqrt(p(loop.start()));
    auto trace = qd::sqrt_along(p, loop, start);
    CHECK(std::abs(trace.values.back() + start) < 1e-8);
}

TEST_CASE("monodromy around two simple zeros is trivial") {
    auto p = ComplexPolynomial::from_roots({Complex(-0.5), Complex(0.5)});
    auto loop = OrientedPath::circle(Complex(0.0), 2.0);
    Complex start = std::sqrt(p(loop.start()));
    auto trace = qd::sqrt_along(p, loop, start);
    CHECK(std::abs(trace.values.back() - start) < 1e-8);
}

TEST_CASE("branch continuity invariant holds along the trace") {
    auto p = ComplexPolynomial::quartic_family(Complex(0.5, 1.5));
    auto loop = OrientedPath::circle(Complex(0.0), 3.0, 64);
    Complex start = std::sqrt(p(loop.start()));
    auto trace = qd::sqrt_along(p, loop, start);
    for (std::size_t k = 1; k < trace.values.size(); ++k) {
        CHECK(std::abs(trace.values[k] - trace.values[k - 1]) <
              std::abs(trace.values[k] + trace.values[k - 1]));
        Complex pz = p(trace.path.samples[k]);
        CHECK(std::abs(trace.values[k] * trace.values[k] - pz) <
              1e-9 * (1.0 + std::abs(pz)));
    }
}

TEST_CASE("path through a zero is rejected with the offending index") {
    auto p = ComplexPolynomial::from_roots({Complex(0.0), Complex(2.0)});
    auto path = OrientedPath{{Complex(-1.0), Complex(1.0)}, false};
    try {
        qd::sqrt_along(p, path, std::sqrt(p(path.start())));
        FAIL("expected branch point proximity");
    } catch (const qd::QuadError& e) {
        CHECK(std::string(e.what()) == "branch point proximity");
        CHECK(e.sample_index == 1);
    }
}

TEST_CASE("period integral of 1 over [0,1] is 1") {
    ComplexPolynomial one({Complex(1.0)});
    auto v = qd::period_integral(one, OrientedPath::segment(Complex(0.0),
                                                            Complex(1.0)),
                                 Complex(1.0));
    CHECK(std::abs(v - Complex(1.0)) < 1e-12);
}

TEST_CASE("real part vanishes over the zero pairs of the quartic family") {
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> ux(-2.5, 2.5);
    std::uniform_real_distribution<double> uy(0.1, 2.5);
    for (int trial = 0; trial < 10; ++trial) {
        Complex a(ux(rng), uy(rng));
        auto p = ComplexPolynomial::quartic_family(a);
        std::vector<Complex> zeros{Complex(-1.0), Complex(1.0), a,
                                   std::conj(a)};
        auto seg = qd::period_integral(
            p, OrientedPath::segment(Complex(-1.0), Complex(1.0)),
            Complex(0.0), zeros);
        CHECK(std::abs(seg.real()) < 1e-10);
        auto conj_pair = qd::period_integral(p, qd::conjugate_pair_path(a),
                                             Complex(0.0), zeros);
        CHECK(std::abs(conj_pair.real()) < 1e-10);
    }
}

TEST_CASE("reversing the orientation negates the integral") {
    auto p = ComplexPolynomial::quartic_family(Complex(0.7, 1.1));
    auto path = OrientedPath{{Complex(2.5), Complex(2.5, 2.0),
                              Complex(-0.5, 2.5)},
                             false};
    Complex b0 = std::sqrt(p(path.start()));
    Complex fwd = qd::period_integral(p, path, b0);
    // branch at the far end, continued along the path
    auto trace = qd::sqrt_along(p, path, b0);
    Complex bwd = qd::period_integral(p, path.reversed(), trace.values.back());
    CHECK(std::abs(fwd + bwd) < 1e-9);
}

TEST_CASE("path independence for homotopic paths") {
    auto p = ComplexPolynomial::quartic_family(Complex(0.4, 1.3));
    Complex from(2.5, 0.5), to(-2.5, 0.5);
    Complex b0 = std::sqrt(p(from));
    auto direct = qd::period_integral(
        p, OrientedPath{{from, Complex(0.0, 2.6), to}, false}, b0);
    auto detour = qd::period_integral(
        p, OrientedPath{{from, Complex(2.5, 3.0), Complex(-2.5, 3.2), to},
                        false},
        b0);
    CHECK(std::abs(direct - detour) < 1e-9);
}

TEST_CASE("conjugate symmetry of periods for real polynomials") {
    auto p = ComplexPolynomial::quartic_family(Complex(0.9, 1.4));
    OrientedPath path{{Complex(2.5, 0.4), Complex(3.0, 1.2)}, false};
    OrientedPath conj_path{{std::conj(path.samples[0]),
                            std::conj(path.samples[1])},
                           false};
    Complex b0 = std::sqrt(p(path.start()));
    Complex v = qd::period_integral(p, path, b0);
    Complex vc = qd::period_integral(p, conj_path, std::conj(b0));
    CHECK(std::abs(vc - std::conj(v)) < 1e-9);
}

TEST_CASE("residue at infinity: closed forms") {
    // z^4
    ComplexPolynomial z4({Complex(0.0), Complex(0.0), Complex(0.0),
                          Complex(0.0), Complex(1.0)});
    CHECK(std::abs(qd::residue_at_infinity(z4)) < 1e-14);
    // (z^2-1)^2
    auto sq = ComplexPolynomial::from_roots(
        {Complex(-1.0), Complex(-1.0), Complex(1.0), Complex(1.0)});
    CHECK(std::abs(qd::residue_at_infinity(sq)) < 1e-14);
    // family with a = 1+i: alpha=-2, beta=1, gamma=2 -> value 1
    auto fam = ComplexPolynomial::quartic_family(Complex(1.0, 1.0));
    CHECK(std::abs(qd::residue_at_infinity(fam) - Complex(1.0)) < 1e-12);
    CHECK(qd::pairing_condition_holds(fam));
}

TEST_CASE("residue formula matches the numeric Laurent coefficient") {
    // coefficient of 1/z in sqrt(p) at large |z|, by contour integral
    auto p = ComplexPolynomial::quartic_family(Complex(1.0, 1.0));
    const double R = 50.0;
    const int n = 4096;
    Complex acc(0.0);
    Complex prev = Complex(R) * Complex(R);  // sqrt(p) ~ z^2
    for (int k = 0; k < n; ++k) {
        const double th = 2.0 * M_PI * (k + 0.5) / n;
        const Complex z = R * Complex(std::cos(th), std::sin(th));
        const Complex v = qd::sqrt_continuous(p(z), prev);
        prev = v;
        acc += v * z;  // f(z) z dtheta picks the 1/z coefficient
    }
    acc /= static_cast<double>(n);
    // -res_inf(sqrt p) equals the 1/z Laurent coefficient
    CHECK(std::abs(acc - qd::residue_at_infinity(p)) < 1e-8);
}

TEST_CASE("residue agrees with brute-force contour of sqrt(p)") {
    std::mt19937 rng(4242);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<Complex> seeds;
        for (int i = 0; i < 4; ++i) seeds.emplace_back(u(rng), u(rng));
        auto p = ComplexPolynomial::from_roots(seeds);
        const double R = 80.0;
        const int n = 8192;
        Complex acc(0.0);
        Complex prev = Complex(R) * Complex(R);
        for (int k = 0; k < n; ++k) {
            const double th = 2.0 * M_PI * (k + 0.5) / n;
            const Complex z = R * Complex(std::cos(th), std::sin(th));
            const Complex v = qd::sqrt_continuous(p(z), prev);
            prev = v;
            acc += v * z;
        }
        acc /= static_cast<double>(n);
        CHECK(std::abs(acc - qd::residue_at_infinity(p)) < 1e-8);
    }
}

TEST_CASE("degree and monicity are enforced") {
    ComplexPolynomial cubic({Complex(1.0), Complex(0.0), Complex(0.0),
                             Complex(1.0)});
    CHECK_THROWS_AS(qd::residue_at_infinity(cubic), qd::PolyError);
    ComplexPolynomial scaled({Complex(0.0), Complex(0.0), Complex(0.0),
                              Complex(0.0), Complex(2.0)});
    CHECK_THROWS_AS(qd::residue_at_infinity(scaled), qd::PolyError);
}
