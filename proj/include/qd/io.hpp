#pragma once

#include <string>

#include "qd/gamma_curve.hpp"
#include "qd/mother_body.hpp"
#include "qd/qes.hpp"

namespace qd {

// Deterministic shortest round-trip decimal rendering of a double; identical
// inputs always produce identical bytes.
std::string fmt_double(double x);

// Complex values serialize as [re, im]; polynomials as arrays of [re, im]
// pairs, lowest degree first.
std::string complex_json(Complex z);
std::string poly_json(const ComplexPolynomial& p);
ComplexPolynomial poly_from_json(const std::string& text);

const char* region_name(Region r);
const char* gamma_label_name(GammaLabel l);

// {region, short_trajectory_pairs, face_census: {half_planes, strips}}
std::string classify_report_json(const RegionClass& rc,
                                 const CriticalGraph& graph);

// {mass, e_over_a_real, arcs: [{endpoints, mass, sign}], verdict, violated}
std::string candidate_json(const MotherBodyCandidate& cand);

// CSV polyline: header "re,im" then one row per point.
std::string polyline_csv(const std::vector<Complex>& points);

// CSV of the critical graph's edges: edge index, kind, anchor data, then the
// per-edge polyline rows.
std::string graph_csv(const CriticalGraph& graph);

// SVG of the critical graph, optionally overlaid with Gamma branches.
// Viewport auto-fits 1.2x the hull of the zeros plus the overlay extent;
// the y axis points up (mathematical orientation).
std::string graph_svg(const CriticalGraph& graph,
                      const std::vector<GammaBranch>& overlay = {});

// Root-cloud overlay on the short trajectories of a graph (pipeline figure).
std::string cloud_svg(const CriticalGraph& graph,
                      const std::vector<std::vector<Complex>>& clouds);

}  // namespace qd
