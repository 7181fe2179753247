#include <algorithm>

#include "doctest.h"
#include "qd/quad_diff.hpp"

using qd::Complex;
using qd::ComplexPolynomial;
using qd::QuadraticDifferential;

namespace {

int zero_index(const QuadraticDifferential& qd, Complex z) {
    for (std::size_t i = 0; i < qd.zeros.size(); ++i)
        if (std::abs(qd.zeros[i].first - z) < 1e-6) return static_cast<int>(i);
    return -1;
}

bool has_short(const qd::CriticalGraph& g, Complex za, Complex zb) {
    for (const auto& s : qd::short_trajectories(g)) {
        Complex a = g.vertices[s.zero_a].first;
        Complex b = g.vertices[s.zero_b].first;
        if ((std::abs(a - za) < 1e-6 && std::abs(b - zb) < 1e-6) ||
            (std::abs(a - zb) < 1e-6 && std::abs(b - za) < 1e-6))
            return true;
    }
    return false;
}

}  // namespace

TEST_CASE("local rays at a simple zero of z^4 - 1") {
    ComplexPolynomial p({Complex(-1.0), Complex(0.0), Complex(0.0),
                         Complex(0.0), Complex(1.0)});
    auto qd = QuadraticDifferential::from_polynomial(p);
    int i = zero_index(qd, Complex(1.0));
    REQUIRE(i >= 0);
    auto rays = qd::local_rays(qd, i);
    REQUIRE(rays.size() == 3);
    // p'(1) = 4 > 0, so theta_k = pi/3 + 2 pi k/3
    CHECK(std::abs(rays[0] - M_PI / 3.0) < 1e-10);
    CHECK(std::abs(rays[1] - M_PI) < 1e-10);
    CHECK(std::abs(rays[2] - 5.0 * M_PI / 3.0) < 1e-10);
}

TEST_CASE("local rays at a double zero have four directions") {
    auto p = ComplexPolynomial::from_roots(
        {Complex(0.0), Complex(0.0), Complex(2.0), Complex(-2.0)});
    auto qd = QuadraticDifferential::from_polynomial(p);
    int i = zero_index(qd, Complex(0.0));
    REQUIRE(i >= 0);
    REQUIRE(qd.zeros[i].second == 2);
    auto rays = qd::local_rays(qd, i);
    REQUIRE(rays.size() == 4);
    // A = p''(0)/2 = -4: theta_k = (pi - pi)/4 + k pi/2
    for (int k = 0; k < 4; ++k)
        CHECK(std::abs(rays[k] - k * M_PI / 2.0) < 1e-10);
}

TEST_CASE("family construction and rejection") {
    CHECK_THROWS_AS(QuadraticDifferential::family(Complex(2.0)),
                    qd::TraceError);
    CHECK_THROWS_AS(QuadraticDifferential::family(Complex(1.0, 1e-12)),
                    qd::TraceError);
    auto qd = QuadraticDifferential::family(Complex(0.5, -1.0));
    CHECK(qd.zeros.size() == 4);
    CHECK(zero_index(qd, Complex(0.5, 1.0)) >= 0);  // folded upward
    CHECK(qd.p.is_real(1e-12));
}

TEST_CASE("trace from a regular point hits the bracketing zeros") {
    auto qd = QuadraticDifferential::family(Complex(1.0, 1.0));
    // (0, +-1) lies on the short trajectory [-1, 1]
    auto fwd = qd::trace(qd, Complex(0.0), Complex(1.0));
    REQUIRE(fwd.end.kind == qd::AnchorKind::CriticalPoint);
    CHECK(std::abs(qd.zeros[fwd.end.index].first - Complex(1.0)) < 1e-6);
    auto bwd = qd::trace(qd, Complex(0.0), Complex(-1.0));
    REQUIRE(bwd.end.kind == qd::AnchorKind::CriticalPoint);
    CHECK(std::abs(qd.zeros[bwd.end.index].first - Complex(-1.0)) < 1e-6);
    // natural-parameter progress is strictly monotone
    for (std::size_t k = 1; k < fwd.im_progress.size(); ++k)
        CHECK(fwd.im_progress[k] >= fwd.im_progress[k - 1] - 1e-12);
}

TEST_CASE("orthogonal trace leaves the horizontal level set") {
    auto qd = QuadraticDifferential::family(Complex(1.0, 1.0));
    auto v = qd::trace(qd, Complex(0.0), Complex(0.0, 1.0), {}, -1, true);
    CHECK(v.points.size() > 2);
    // a vertical trajectory through 0 cannot return to the real segment
    double max_im = 0.0;
    for (Complex z : v.points) max_im = std::max(max_im, std::abs(z.imag()));
    CHECK(max_im > 0.1);
}

TEST_CASE("face census across the four structure regions") {
    struct Case {
        Complex a;
        int strips;
        int shorts;
    };
    const Complex g1 = Complex(1.0) + 2.0 * std::polar(1.0, M_PI / 3.0);
    const Case cases[] = {
        {Complex(2.0, 0.2), 1, 2},   // right outer region
        {Complex(-2.0, 0.3), 1, 2},  // left outer region
        {Complex(0.0, 1.0), 2, 1},   // inner region
        {g1, 0, 3},                  // boundary curve through +1
    };
    for (const Case& c : cases) {
        CAPTURE(c.a.real());
        CAPTURE(c.a.imag());
        auto qd = QuadraticDifferential::family(c.a);
        auto graph = qd::critical_graph(qd);
        CHECK(graph.half_planes() == 6);
        CHECK(graph.strips() == c.strips);
        CHECK(static_cast<int>(graph.short_edge_indices().size()) ==
              c.shorts);
        CHECK(has_short(graph, Complex(-1.0), Complex(1.0)));
        for (const auto& f : graph.faces)
            CHECK(f.kind != qd::Face::Other);
    }
}

TEST_CASE("outer-region graph pairs the non-real zeros") {
    auto qd = QuadraticDifferential::family(Complex(2.0, 0.2));
    auto graph = qd::critical_graph(qd);
    CHECK(has_short(graph, Complex(2.0, 0.2), Complex(2.0, -0.2)));
}

TEST_CASE("boundary-curve graph joins +1 to both non-real zeros") {
    const Complex a = Complex(1.0) + 2.0 * std::polar(1.0, M_PI / 3.0);
    auto qd = QuadraticDifferential::family(a);
    auto graph = qd::critical_graph(qd);
    CHECK(has_short(graph, Complex(1.0), a));
    CHECK(has_short(graph, Complex(1.0), std::conj(a)));
}

TEST_CASE("graph is symmetric under conjugation") {
    auto qd = QuadraticDifferential::family(Complex(0.4, 1.3));
    auto graph = qd::critical_graph(qd);
    // for each edge polyline, the conjugate polyline is close to some edge
    for (const auto& e : graph.edges) {
        double best = 1e300;
        for (const auto& f : graph.edges) {
            double worst = 0.0;
            for (std::size_t k = 0; k < e.traj.points.size(); k += 7) {
                Complex zc = std::conj(e.traj.points[k]);
                double d = 1e300;
                for (Complex zf : f.traj.points)
                    d = std::min(d, std::abs(zf - zc));
                worst = std::max(worst, d);
            }
            best = std::min(best, worst);
        }
        CHECK(best < 5e-2);
    }
}

TEST_CASE("edges do not cross away from shared endpoints") {
    auto qd = QuadraticDifferential::family(Complex(0.0, 1.0));
    auto graph = qd::critical_graph(qd);
    auto seg_cross = [](Complex p1, Complex p2, Complex q1, Complex q2) {
        auto cross = [](Complex u, Complex v) {
            return u.real() * v.imag() - u.imag() * v.real();
        };
        double d1 = cross(p2 - p1, q1 - p1), d2 = cross(p2 - p1, q2 - p1);
        double d3 = cross(q2 - q1, p1 - q1), d4 = cross(q2 - q1, p2 - q1);
        return d1 * d2 < 0 && d3 * d4 < 0;
    };
    for (std::size_t i = 0; i < graph.edges.size(); ++i)
        for (std::size_t j = i + 1; j < graph.edges.size(); ++j) {
            const auto& pi = graph.edges[i].traj.points;
            const auto& pj = graph.edges[j].traj.points;
            for (std::size_t k = 1; k < pi.size(); ++k)
                for (std::size_t l = 1; l < pj.size(); ++l)
                    CHECK_FALSE(seg_cross(pi[k - 1], pi[k], pj[l - 1],
                                          pj[l]));
        }
}

TEST_CASE("angle-count identity holds on every face") {
    for (Complex a : {Complex(2.0, 0.2), Complex(0.0, 1.0),
                      Complex(-0.3, 0.8)}) {
        auto qd = QuadraticDifferential::family(a);
        auto graph = qd::critical_graph(qd);
        for (const auto& face : graph.faces) {
            auto rep = qd::teichmuller_check(graph, face);
            CHECK(rep.holds());
            // raw angles were already near their snapped values
            for (const auto& c : rep.corners)
                CHECK(std::abs(c.angle - c.angle_raw) < 0.2);
        }
    }
}

TEST_CASE("angle count rules out a zero-angle digon at a simple zero") {
    // two trajectories from a simple zero bounding a domain with no pole
    // access and no interior zero: lhs can never reach 2
    std::vector<qd::PolygonCorner> corners{{1, 0.0, 2.0 * M_PI / 3.0},
                                           {1, 0.0, 2.0 * M_PI / 3.0}};
    auto rep = qd::teichmuller_report(corners, 0);
    CHECK(rep.rhs == 2.0);
    CHECK(!rep.holds());
    CHECK(rep.lhs < 1.0);
}

TEST_CASE("four real zeros give two disjoint segment shorts") {
    auto p = ComplexPolynomial::from_roots(
        {Complex(-2.0), Complex(-1.0), Complex(1.0), Complex(2.0)});
    auto qd = QuadraticDifferential::from_polynomial(p);
    auto graph = qd::critical_graph(qd);
    auto shorts = qd::short_trajectories(graph);
    CHECK(shorts.size() == 2);
    CHECK(has_short(graph, Complex(-2.0), Complex(-1.0)));
    CHECK(has_short(graph, Complex(1.0), Complex(2.0)));
}

TEST_CASE("winding number of a square polyline") {
    std::vector<Complex> sq{Complex(1.0, 1.0), Complex(-1.0, 1.0),
                            Complex(-1.0, -1.0), Complex(1.0, -1.0),
                            Complex(1.0, 1.0)};
    CHECK(qd::winding_number(sq, Complex(0.0)) == 1);
    CHECK(qd::winding_number(sq, Complex(3.0)) == 0);
    std::reverse(sq.begin(), sq.end());
    CHECK(qd::winding_number(sq, Complex(0.0)) == -1);
}
