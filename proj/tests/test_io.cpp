#include "doctest.h"
#include "qd/io.hpp"

using qd::Complex;

TEST_CASE("double formatting is deterministic and round-trips") {
    CHECK(qd::fmt_double(0.0) == "0");
    CHECK(qd::fmt_double(-0.0) == "0");
    CHECK(qd::fmt_double(1.5) == "1.5");
    CHECK(qd::fmt_double(1.0 / 3.0) == qd::fmt_double(1.0 / 3.0));
    const double x = 0.1 + 0.2;
    CHECK(std::stod(qd::fmt_double(x)) == x);
}

TEST_CASE("polynomial JSON round-trip, lowest degree first") {
    const qd::ComplexPolynomial p({Complex(1.0, -2.0), Complex(0.0),
                                   Complex(0.5, 0.25)});
    const std::string j = qd::poly_json(p);
    CHECK(j == "[[1,-2],[0,0],[0.5,0.25]]");
    const auto q = qd::poly_from_json(j);
    REQUIRE(q.degree() == p.degree());
    for (int k = 0; k <= p.degree(); ++k)
        CHECK(q.coeffs()[k] == p.coeffs()[k]);
    CHECK_THROWS_AS(qd::poly_from_json("{\"a\":1}"), std::invalid_argument);
    CHECK_THROWS_AS(qd::poly_from_json("[[1]]"), std::invalid_argument);
}

TEST_CASE("classify report carries census and pairs") {
    const auto qd_ = qd::QuadraticDifferential::family(Complex(2.0, 0.2));
    const auto graph = qd::critical_graph(qd_);
    const auto rc = qd::classify_region(Complex(2.0, 0.2));
    const std::string rep = qd::classify_report_json(rc, graph);
    CHECK(rep.find("\"region\": \"Omega1\"") != std::string::npos);
    CHECK(rep.find("\"half_planes\": 6") != std::string::npos);
    CHECK(rep.find("\"strips\": 1") != std::string::npos);
    CHECK(rep.find("\"short_trajectory_pairs\"") != std::string::npos);
    // byte-identical rerun
    CHECK(rep == qd::classify_report_json(rc, qd::critical_graph(qd_)));
}

TEST_CASE("candidate JSON follows the schema") {
    qd::MotherBodyCandidate cand;
    cand.mass = 1.0;
    cand.e_over_a_real = true;
    cand.accepted = true;
    cand.arcs.push_back({Complex(0.0), Complex(1.0, 2.0), 0.5, 1});
    const std::string j = qd::candidate_json(cand);
    CHECK(j.find("\"mass\": 1") != std::string::npos);
    CHECK(j.find("\"e_over_a_real\": true") != std::string::npos);
    CHECK(j.find("\"endpoints\": [[0,0],[1,2]]") != std::string::npos);
    CHECK(j.find("\"verdict\": \"accepted\"") != std::string::npos);
    CHECK(j.find("\"violated\": null") != std::string::npos);
    cand.accepted = false;
    cand.violated = "mass mismatch";
    const std::string j2 = qd::candidate_json(cand);
    CHECK(j2.find("\"verdict\": \"rejected\"") != std::string::npos);
    CHECK(j2.find("\"violated\": \"mass mismatch\"") != std::string::npos);
}

TEST_CASE("CSV polylines") {
    const std::string csv =
        qd::polyline_csv({Complex(1.0, 2.0), Complex(-0.5, 0.0)});
    CHECK(csv == "re,im\n1,2\n-0.5,0\n");
}

TEST_CASE("graph CSV lists every edge with anchors") {
    const auto qd_ = qd::QuadraticDifferential::family(Complex(0.0, 1.0));
    const auto graph = qd::critical_graph(qd_);
    const std::string csv = qd::graph_csv(graph);
    CHECK(csv.rfind("edge,start_kind,start_index,end_kind,end_index,point,re,im\n",
                    0) == 0);
    CHECK(csv.find("zero") != std::string::npos);
    CHECK(csv.find("infinity") != std::string::npos);
    // deterministic
    CHECK(csv == qd::graph_csv(qd::critical_graph(qd_)));
}

TEST_CASE("SVG output is well-formed and y-flipped") {
    const auto qd_ = qd::QuadraticDifferential::family(Complex(2.0, 0.2));
    const auto graph = qd::critical_graph(qd_);
    const auto branch = qd::trace_branch(qd::GammaLabel::Gamma1Plus, {}, 5.0);
    const std::string svg = qd::graph_svg(graph, {branch});
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("viewBox=") != std::string::npos);
    CHECK(svg.find("<polyline") != std::string::npos);
    CHECK(svg.find("<circle") != std::string::npos);
    CHECK(svg.find("stroke-dasharray") != std::string::npos);
    // the zero at 2+0.2i renders with cy = -0.2 (y-flip)
    bool found = false;
    for (const auto& [z, mult] : graph.qd.zeros) {
        (void)mult;
        if (std::abs(z - Complex(2.0, 0.2)) < 1e-9) found = true;
    }
    CHECK(found);
    CHECK(svg.find("cy=\"-0.2") != std::string::npos);
    CHECK(svg == qd::graph_svg(qd::critical_graph(qd_), {branch}));
}

TEST_CASE("cloud SVG renders every cloud") {
    const auto qd_ = qd::QuadraticDifferential::family(Complex(0.0, 1.0));
    const auto graph = qd::critical_graph(qd_);
    const std::string svg =
        qd::cloud_svg(graph, {{Complex(0.1, 0.1)}, {Complex(-0.2, 0.4)}});
    CHECK(svg.find("#e69f00") != std::string::npos);
    CHECK(svg.find("#56b4e9") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
}
