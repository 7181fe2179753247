#pragma once

#include <array>
#include <optional>

#include "qd/quadrature.hpp"

namespace qd {

class TraceError : public std::runtime_error {
  public:
    TraceError(const std::string& what, Complex last = {})
        : std::runtime_error(what), last_point(last) {}
    Complex last_point;
};

// -p(z) dz^2 for a monic quartic p; infinity is a pole of order 8.
struct QuadraticDifferential {
    ComplexPolynomial p;
    std::vector<std::pair<Complex, int>> zeros;  // critical points, multiplicity

    static QuadraticDifferential from_polynomial(const ComplexPolynomial& p,
                                                 const Tolerances& tol = {});
    // p(z) = (z^2-1)(z-a)(z-conj a); rejects a real or a = +-1 (the paper's
    // family needs a strictly in the upper half plane; conjugate a is folded)
    static QuadraticDifferential family(Complex a, const Tolerances& tol = {});

    double scale() const;         // 1 + max |zero|
    double min_zero_gap() const;  // min pairwise distance between zeros
};

// The six critical directions at infinity: (2k+1) pi/6, k = 0..5.
std::array<double, 6> infinity_directions();

// Launch angles of the r+2 critical trajectories at zeros[index].
std::vector<double> local_rays(const QuadraticDifferential& qd, int index);

enum class AnchorKind { CriticalPoint, InfinityDirection, Open };

struct Anchor {
    AnchorKind kind = AnchorKind::Open;
    int index = -1;  // zero index or direction index k
};

struct Trajectory {
    std::vector<Complex> points;
    std::vector<double> im_progress;  // running Im of the period integral
    Anchor start, end;
    double angle_start = 0.0;   // outgoing direction at the start point
    double angle_end = 0.0;     // outgoing (reversed) direction at the end,
                                // or the escape-circle crossing angle
    double escape_angle = 0.0;  // arg z where |z| first crossed the escape
                                // radius (InfinityDirection anchors only)
    double arc_length = 0.0;
};

// Follow the horizontal trajectory of -p dz^2 through `start` in the given
// initial direction. `launch_zero` >= 0 marks a start on a zero paired with
// one of its rays. Orthogonal = trace the vertical foliation instead.
Trajectory trace(const QuadraticDifferential& qd, Complex start, Complex dir,
                 const RunConfig& cfg = {}, int launch_zero = -1,
                 bool orthogonal = false);

struct GraphEdge {
    Trajectory traj;
    Anchor a, b;           // == traj.start / traj.end
    double angle_a;        // rotation angle at origin vertex
    double angle_b;        // rotation angle at target vertex
    bool unbroken = true;  // short trajectories only: no third zero en route
};

struct Face {
    std::vector<int> darts;  // 2*edge + orient; orient 0 = a->b
    int infinity_accesses = 0;
    enum Kind { HalfPlane, Strip, Other } kind = Other;
};

struct CriticalGraph {
    QuadraticDifferential qd;
    std::vector<std::pair<Complex, int>> vertices;  // finite critical points
    std::vector<GraphEdge> edges;
    std::vector<Face> faces;

    int half_planes() const;
    int strips() const;
    // indices of edges with both anchors at finite critical points
    std::vector<int> short_edge_indices() const;
};

// Launch every ray from every zero, merge duplicate traversals, embed, and
// classify faces. Rays run in parallel when cfg.parallel is set.
CriticalGraph critical_graph(const QuadraticDifferential& qd,
                             const RunConfig& cfg = {});

struct ShortTrajectory {
    int zero_a, zero_b;
    const Trajectory* traj;
    bool unbroken;
};
std::vector<ShortTrajectory> short_trajectories(const CriticalGraph& graph);

struct PolygonCorner {
    int multiplicity;     // n_j; -8 for the pole at infinity
    double angle_raw;     // measured interior angle
    double angle;         // snapped to the structural multiple
};

struct PolygonReport {
    std::vector<PolygonCorner> corners;
    int interior_zeros = 0;
    double lhs = 0.0;  // sum of (1 - (n_j+2) t_j / 2pi)
    double rhs = 0.0;  // 2 + m
    bool holds(double tol = 1e-6) const;
};

// Teichmuller angle-count identity on a traced face.
PolygonReport teichmuller_check(const CriticalGraph& graph, const Face& face);

// Same identity for explicitly supplied corners (used to exhibit impossible
// polygons, e.g. two rays from one simple zero with wedge 2pi/3 and no
// interior zeros).
PolygonReport teichmuller_report(const std::vector<PolygonCorner>& corners,
                                 int interior_zeros);

// Winding number of a closed polyline around a point.
int winding_number(const std::vector<Complex>& polyline, Complex z);

}  // namespace qd
