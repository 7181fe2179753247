#include <algorithm>
#include <random>

#include "doctest.h"
#include "qd/complex_poly.hpp"

using qd::Complex;
using qd::ComplexPolynomial;

namespace {

// match each expected root to the nearest computed one, greedily
double max_match_distance(std::vector<Complex> got,
                          const std::vector<Complex>& expected) {
    double worst = 0.0;
    for (Complex e : expected) {
        auto it = std::min_element(got.begin(), got.end(),
                                   [e](Complex a, Complex b) {
                                       return std::abs(a - e) < std::abs(b - e);
                                   });
        worst = std::max(worst, std::abs(*it - e));
        got.erase(it);
    }
    return worst;
}

}  // namespace

TEST_CASE("roots of factored quadratics and quartics") {
    auto p = ComplexPolynomial::from_roots({Complex(-1.0), Complex(1.0)});
    CHECK(max_match_distance(qd::roots(p), {Complex(-1.0), Complex(1.0)}) <
          1e-12);

    auto q = ComplexPolynomial::from_roots(
        {Complex(-1.0), Complex(1.0), Complex(1.0, 1.0), Complex(1.0, -1.0)});
    CHECK(max_match_distance(qd::roots(q),
                             {Complex(-1.0), Complex(1.0), Complex(1.0, 1.0),
                              Complex(1.0, -1.0)}) < 1e-12);
}

TEST_CASE("construct-from-roots round trip, random degree 6") {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Complex> seeds;
        for (int i = 0; i < 6; ++i) seeds.emplace_back(u(rng), u(rng));
        auto p = ComplexPolynomial::from_roots(seeds);
        CHECK(max_match_distance(qd::roots(p), seeds) < 1e-10);
    }
}

TEST_CASE("root residual scaled by local derivative") {
    auto p = ComplexPolynomial::quartic_family(Complex(1.0, 1.0));
    auto dp = p.derivative();
    for (Complex r : qd::roots(p))
        CHECK(std::abs(p(r)) < 1e-10 * (1.0 + std::abs(dp(r))));
}

TEST_CASE("constant polynomial is rejected") {
    ComplexPolynomial c({Complex(3.0)});
    CHECK_THROWS_AS(qd::roots(c), qd::PolyError);
}

TEST_CASE("evaluation and derivative agree with horner") {
    ComplexPolynomial p({Complex(1.0), Complex(0.0), Complex(-2.0),
                         Complex(0.0), Complex(1.0)});  // z^4 - 2z^2 + 1
    Complex v, dv;
    p.eval2(Complex(2.0), v, dv);
    CHECK(std::abs(v - Complex(9.0)) < 1e-14);
    CHECK(std::abs(dv - Complex(24.0)) < 1e-14);
    CHECK(std::abs(p.derivative()(Complex(2.0)) - Complex(24.0)) < 1e-14);
}

TEST_CASE("quartic family is real and monic") {
    auto p = ComplexPolynomial::quartic_family(Complex(0.3, 1.7));
    CHECK(p.degree() == 4);
    CHECK(p.is_monic());
    CHECK(p.is_real());
}

TEST_CASE("cluster_roots groups a collided pair") {
    std::vector<Complex> rts{Complex(1.0), Complex(1.0 + 1e-9),
                             Complex(-1.0)};
    auto clusters = qd::cluster_roots(rts, 1e-6);
    REQUIRE(clusters.size() == 2);
    int total = 0;
    for (auto& [z, mult] : clusters) total += mult;
    CHECK(total == 3);
}
