#include "qd/quad_diff.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace qd {

namespace {

double wrap_2pi(double a) {
    a = std::fmod(a, 2.0 * M_PI);
    if (a < 0.0) a += 2.0 * M_PI;
    return a;
}

// ccw gap from angle `from` to angle `to`, in (0, 2pi]
double ccw_gap(double from, double to) {
    double g = wrap_2pi(to - from);
    if (g == 0.0) g = 2.0 * M_PI;
    return g;
}

double angle_dist(double a, double b) {
    double d = wrap_2pi(a - b);
    return std::min(d, 2.0 * M_PI - d);
}

}  // namespace

QuadraticDifferential QuadraticDifferential::from_polynomial(
    const ComplexPolynomial& p, const Tolerances& tol) {
    if (p.degree() != 4 || !p.is_monic(1e-10))
        throw TraceError("quadratic differential requires a monic quartic");
    auto rts = roots(p, tol);
    double scale = 1.0;
    for (Complex r : rts) scale = std::max(scale, std::abs(r));
    auto clusters = cluster_roots(rts, 1e-6 * scale);
    return QuadraticDifferential{p, std::move(clusters)};
}

QuadraticDifferential QuadraticDifferential::family(Complex a,
                                                    const Tolerances& tol) {
    if (std::abs(a.imag()) < 1e-9)
        throw TraceError("parameter must be non-real");
    if (a.imag() < 0.0) a = std::conj(a);
    if (std::min(std::abs(a - Complex(1.0)), std::abs(a + Complex(1.0))) <
        tol.capture_rel)
        throw TraceError("near-degenerate configuration");
    QuadraticDifferential qd;
    qd.p = ComplexPolynomial::quartic_family(a);
    qd.zeros = {{Complex(-1.0), 1}, {Complex(1.0), 1}, {a, 1},
                {std::conj(a), 1}};
    return qd;
}

double QuadraticDifferential::scale() const {
    double s = 0.0;
    for (auto& [z, m] : zeros) s = std::max(s, std::abs(z));
    return 1.0 + s;
}

double QuadraticDifferential::min_zero_gap() const {
    double gap = 2.0 * scale();
    for (std::size_t i = 0; i < zeros.size(); ++i)
        for (std::size_t j = i + 1; j < zeros.size(); ++j)
            gap = std::min(gap, std::abs(zeros[i].first - zeros[j].first));
    return gap;
}

std::array<double, 6> infinity_directions() {
    std::array<double, 6> d;
    for (int k = 0; k < 6; ++k) d[k] = (2 * k + 1) * M_PI / 6.0;
    return d;
}

std::vector<double> local_rays(const QuadraticDifferential& qd, int index) {
    const auto& [z0, mult] = qd.zeros.at(index);
    if (mult > 2) throw TraceError("unsupported zero multiplicity");
    // p(z) ~ A (z-z0)^r locally; rays solve Re(sqrt(A) dir^{(r+2)/2}) = 0
    // with outward orientation: theta = (pi - arg A)/(r+2) mod 2pi/(r+2)
    ComplexPolynomial d = qd.p;
    for (int k = 0; k < mult; ++k) d = d.derivative();
    Complex A = d(z0);
    for (int k = 2; k <= mult; ++k) A /= static_cast<double>(k);
    const int nrays = mult + 2;
    std::vector<double> rays(nrays);
    const double base = (M_PI - std::arg(A)) / nrays;
    for (int k = 0; k < nrays; ++k)
        rays[k] = wrap_2pi(base + 2.0 * M_PI * k / nrays);
    std::sort(rays.begin(), rays.end());
    return rays;
}

namespace {

struct FieldState {
    Complex z;
    Complex w;  // branch of sqrt(p(z)) along this trajectory
};

class Tracer {
  public:
    Tracer(const QuadraticDifferential& qd, const RunConfig& cfg,
           bool orthogonal)
        : qd_(qd), cfg_(cfg), orthogonal_(orthogonal) {
        for (auto& [z, m] : qd.zeros) zero_pts_.push_back(z);
        scale_ = qd.scale();
        capture_ = cfg.tol.capture_rel * qd.min_zero_gap();
        escape_ = cfg.tol.escape_mult * scale_;
    }

    Trajectory run(Complex start, Complex dir, int launch_zero) {
        Trajectory traj;
        dir /= std::abs(dir);
        FieldState s;
        if (launch_zero >= 0) {
            traj.points.push_back(zero_pts_[launch_zero]);
            traj.im_progress.push_back(0.0);
            s.z = zero_pts_[launch_zero] + 0.1 * capture_ * dir;
            traj.start = {AnchorKind::CriticalPoint, launch_zero};
        } else {
            s.z = start;
            traj.start = {AnchorKind::Open, -1};
        }
        traj.angle_start = std::arg(dir);
        s.w = pick_branch(s.z, dir);
        traj.points.push_back(s.z);
        traj.im_progress.push_back(traj.im_progress.empty()
                                       ? 0.0
                                       : traj.im_progress.back());

        double drift = 0.0;   // running Re (or Im, orthogonal) of int sqrt(p)
        double imacc = traj.im_progress.back();
        double arclen = launch_zero >= 0 ? 0.1 * capture_ : 0.0;
        int lock_count = 0, lock_k = -1;
        bool escaped = false;
        double h = 0.02 * scale_;
        const double h_min = 1e-12 * scale_;
        const double h_max = 0.05 * scale_;

        while (arclen < cfg_.tol.arc_budget) {
            const double d_near = nearest_zero_distance(s.z);
            const double h_cap = std::max(0.25 * d_near, 0.25 * capture_);
            h = std::clamp(h, h_min, std::min(h_max, h_cap));

            FieldState next;
            Complex step_integral;
            if (!rk_step(s, h, next, step_integral)) {
                h *= 0.5;
                if (h <= h_min)
                    throw TraceError("step-size underflow near singularity",
                                     s.z);
                continue;
            }

            drift += drift_part(step_integral);
            imacc += im_part(step_integral);
            // transversal correction back onto the level set
            {
                const Complex u = unit_tangent(next.w);
                const Complex n = Complex(0.0, 1.0) * u;
                const double denom = drift_part(next.w * n);
                if (std::abs(denom) > 1e-14) {
                    double delta = -drift / denom;
                    delta = std::clamp(delta, -0.1 * h, 0.1 * h);
                    next.z += delta * n;
                    next.w = sqrt_continuous(qd_.p(next.z), next.w);
                    drift += delta * denom;
                }
            }

            arclen += std::abs(next.z - s.z);
            s = next;
            traj.points.push_back(s.z);
            traj.im_progress.push_back(imacc);
            h *= 1.5;

            // capture at a finite critical point
            const int near_idx = nearest_zero(s.z);
            const double d = std::abs(s.z - zero_pts_[near_idx]);
            if (d < capture_ &&
                !(near_idx == launch_zero && arclen < 10.0 * capture_)) {
                traj.arc_length = arclen;
                if (try_capture(traj, s, near_idx, drift)) return traj;
                // genuine near-miss: tighten steps until we swing past
                h = std::min(h, 0.25 * d);
            }

            // escape toward one of the six directions at infinity
            if (std::abs(s.z) > escape_) {
                if (!escaped) {
                    escaped = true;
                    // interpolate the exact crossing of the escape circle:
                    // neighbouring trajectories into the same direction are
                    // separated by far less than one step here, so the
                    // crossing angle must be radius-consistent
                    const Complex zp =
                        traj.points[traj.points.size() - 2];
                    const Complex dzc = s.z - zp;
                    const double aa = std::norm(dzc);
                    const double bb = 2.0 * (zp * std::conj(dzc)).real();
                    const double cc = std::norm(zp) - escape_ * escape_;
                    double tcross = 1.0;
                    const double disc = bb * bb - 4.0 * aa * cc;
                    if (aa > 0.0 && disc >= 0.0)
                        tcross = std::clamp(
                            (-bb + std::sqrt(disc)) / (2.0 * aa), 0.0, 1.0);
                    traj.escape_angle = std::arg(zp + tcross * dzc);
                }
                const auto dirs = infinity_directions();
                int best = 0;
                for (int k = 1; k < 6; ++k)
                    if (angle_dist(std::arg(s.z), dirs[k]) <
                        angle_dist(std::arg(s.z), dirs[best]))
                        best = k;
                if (angle_dist(std::arg(s.z), dirs[best]) <
                    cfg_.tol.direction_cone) {
                    lock_count = (best == lock_k) ? lock_count + 1 : 1;
                    lock_k = best;
                    if (lock_count >= 3) {
                        traj.end = {AnchorKind::InfinityDirection, best};
                        traj.angle_end = std::arg(s.z);
                        traj.arc_length = arclen;
                        return traj;
                    }
                } else {
                    lock_count = 0;
                    lock_k = -1;
                }
            } else {
                escaped = false;
                lock_count = 0;
            }
        }
        traj.end = {AnchorKind::Open, -1};
        traj.arc_length = arclen;
        return traj;
    }

  private:
    Complex unit_tangent(Complex w) const {
        const Complex base = std::conj(w) / std::abs(w);
        return orthogonal_ ? base : Complex(0.0, 1.0) * base;
    }

    double drift_part(Complex v) const {
        return orthogonal_ ? v.imag() : v.real();
    }
    double im_part(Complex v) const {
        return orthogonal_ ? v.real() : v.imag();
    }

    Complex pick_branch(Complex z, Complex dir) const {
        const Complex w = std::sqrt(qd_.p(z));
        Complex u = unit_tangent(w);
        if ((u * std::conj(dir)).real() >= 0.0) return w;
        return -w;
    }

    int nearest_zero(Complex z) const {
        int best = 0;
        for (std::size_t i = 1; i < zero_pts_.size(); ++i)
            if (std::abs(z - zero_pts_[i]) < std::abs(z - zero_pts_[best]))
                best = static_cast<int>(i);
        return best;
    }
    double nearest_zero_distance(Complex z) const {
        return std::abs(z - zero_pts_[nearest_zero(z)]);
    }

    // classic RK4 on dz/ds = u(z); returns false when the branch tracking
    // across the stages is unsafe (step too large)
    bool rk_step(const FieldState& s, double h, FieldState& out,
                 Complex& step_integral) const {
        auto deriv = [&](Complex z, Complex wref,
                         Complex& w_out) -> std::optional<Complex> {
            const Complex pz = qd_.p(z);
            const Complex w = sqrt_continuous(pz, wref);
            if (std::abs(w - wref) >
                0.5 * std::max(std::abs(w), std::abs(wref)))
                return std::nullopt;
            w_out = w;
            return unit_tangent(w);
        };
        Complex w1 = s.w, w2, w3, w4;
        const Complex k1 = unit_tangent(s.w);
        auto k2 = deriv(s.z + 0.5 * h * k1, s.w, w2);
        if (!k2) return false;
        auto k3 = deriv(s.z + 0.5 * h * (*k2), w2, w3);
        if (!k3) return false;
        auto k4 = deriv(s.z + h * (*k3), w3, w4);
        if (!k4) return false;
        out.z = s.z + (h / 6.0) * (k1 + 2.0 * (*k2) + 2.0 * (*k3) + *k4);
        Complex w_end;
        auto k_end = deriv(out.z, w3, w_end);
        if (!k_end) return false;
        out.w = w_end;
        // Simpson estimate of int sqrt(p) dz over the step
        const Complex mid = s.z + 0.5 * h * (*k2);
        step_integral =
            (h / 6.0) * (s.w * k1 + 4.0 * (w2 * (*k2)) + w_end * (*k_end));
        (void)mid;
        (void)w1;
        (void)w4;
        return true;
    }

    // A capture is only accepted when the level-set value continued to the
    // zero itself vanishes; otherwise the trajectory merely passes close by.
    bool try_capture(Trajectory& traj, const FieldState& s, int idx,
                     double drift) {
        const Complex zeta = zero_pts_[idx];
        Complex chord(0.0);
        if (std::abs(s.z - zeta) > 0.0) {
            try {
                chord = period_integral(qd_.p,
                                        OrientedPath::segment(s.z, zeta), s.w,
                                        zero_pts_, cfg_.tol);
            } catch (const QuadError&) {
                return false;
            }
        }
        const double residual = drift + drift_part(chord);
        if (std::abs(residual) > cfg_.tol.anchor_drift * scale_) return false;
        traj.points.push_back(zeta);
        traj.im_progress.push_back(traj.im_progress.back() + im_part(chord));
        traj.end = {AnchorKind::CriticalPoint, idx};
        // snap the arrival direction to the nearest local ray of the target
        const double raw =
            std::arg(traj.points[traj.points.size() - 2] - zeta);
        traj.angle_end = raw;
        traj.arc_length += std::abs(s.z - zeta);
        return true;
    }

    const QuadraticDifferential& qd_;
    const RunConfig& cfg_;
    bool orthogonal_;
    std::vector<Complex> zero_pts_;
    double scale_ = 1.0, capture_ = 0.0, escape_ = 0.0;
};

}  // namespace

Trajectory trace(const QuadraticDifferential& qd, Complex start, Complex dir,
                 const RunConfig& cfg, int launch_zero, bool orthogonal) {
    Tracer tracer(qd, cfg, orthogonal);
    return tracer.run(start, dir, launch_zero);
}

int CriticalGraph::half_planes() const {
    return static_cast<int>(std::count_if(
        faces.begin(), faces.end(),
        [](const Face& f) { return f.kind == Face::HalfPlane; }));
}

int CriticalGraph::strips() const {
    return static_cast<int>(
        std::count_if(faces.begin(), faces.end(),
                      [](const Face& f) { return f.kind == Face::Strip; }));
}

std::vector<int> CriticalGraph::short_edge_indices() const {
    std::vector<int> out;
    for (std::size_t e = 0; e < edges.size(); ++e)
        if (edges[e].a.kind == AnchorKind::CriticalPoint &&
            edges[e].b.kind == AnchorKind::CriticalPoint)
            out.push_back(static_cast<int>(e));
    return out;
}

namespace {

constexpr int kInfVertex = -1;

int dart_origin(const std::vector<GraphEdge>& edges, int dart) {
    const GraphEdge& e = edges[dart / 2];
    const Anchor& anc = (dart % 2 == 0) ? e.a : e.b;
    return anc.kind == AnchorKind::CriticalPoint ? anc.index : kInfVertex;
}

double dart_angle(const std::vector<GraphEdge>& edges, int dart) {
    const GraphEdge& e = edges[dart / 2];
    const Anchor& anc = (dart % 2 == 0) ? e.a : e.b;
    const double raw = (dart % 2 == 0) ? e.angle_a : e.angle_b;
    // the chart at infinity (u = 1/z) reverses the rotational order
    return anc.kind == AnchorKind::InfinityDirection ? wrap_2pi(-raw)
                                                     : wrap_2pi(raw);
}

}  // namespace

CriticalGraph critical_graph(const QuadraticDifferential& qd,
                             const RunConfig& cfg) {
    const double capture = cfg.tol.capture_rel * qd.min_zero_gap();
    if (qd.min_zero_gap() < 2.0 * capture)
        throw TraceError("near-degenerate configuration");

    struct Ray {
        int zero;
        double angle;
    };
    std::vector<Ray> rays;
    for (std::size_t i = 0; i < qd.zeros.size(); ++i)
        for (double th : local_rays(qd, static_cast<int>(i)))
            rays.push_back({static_cast<int>(i), th});

    std::vector<Trajectory> traces(rays.size());
    std::vector<std::string> failures(rays.size());
#pragma omp parallel for schedule(dynamic) if (cfg.parallel)
    for (std::size_t r = 0; r < rays.size(); ++r) {
        try {
            traces[r] = trace(qd, qd.zeros[rays[r].zero].first,
                              std::polar(1.0, rays[r].angle), cfg,
                              rays[r].zero);
        } catch (const std::exception& e) {
            failures[r] = e.what();
        }
    }
    for (std::size_t r = 0; r < rays.size(); ++r) {
        if (!failures[r].empty())
            throw TraceError("ray trace failed: " + failures[r]);
        if (traces[r].end.kind == AnchorKind::Open)
            throw TraceError("budget exhausted",
                             traces[r].points.back());
    }

    CriticalGraph graph{qd, qd.zeros, {}, {}};

    // deduplicate finite edges: each one is traced once from either end
    std::vector<bool> consumed(rays.size(), false);
    for (std::size_t r = 0; r < rays.size(); ++r) {
        if (consumed[r]) continue;
        const Trajectory& t = traces[r];
        if (t.end.kind == AnchorKind::InfinityDirection) {
            GraphEdge e;
            e.traj = t;
            e.a = t.start;
            e.b = t.end;
            e.angle_a = t.angle_start;
            e.angle_b = t.escape_angle;
            graph.edges.push_back(std::move(e));
            consumed[r] = true;
            continue;
        }
        // find the partner traced from the far end
        const Complex mid = t.points[t.points.size() / 2];
        int partner = -1;
        for (std::size_t q = r + 1; q < rays.size(); ++q) {
            if (consumed[q]) continue;
            const Trajectory& u = traces[q];
            if (u.end.kind != AnchorKind::CriticalPoint) continue;
            if (u.start.index != t.end.index || u.end.index != t.start.index)
                continue;
            double best = 1e300;
            for (std::size_t k = 1; k < u.points.size(); ++k) {
                const Complex a = u.points[k - 1], b = u.points[k];
                const Complex ab = b - a;
                double s = ((mid - a) * std::conj(ab)).real() /
                           std::max(std::norm(ab), 1e-300);
                s = std::clamp(s, 0.0, 1.0);
                best = std::min(best, std::abs(mid - (a + s * ab)));
            }
            if (best < 20.0 * capture) {
                partner = static_cast<int>(q);
                break;
            }
        }
        if (partner < 0)
            throw TraceError("finite edge without a reverse traversal",
                             t.points.back());
        GraphEdge e;
        e.traj = t;
        e.a = t.start;
        e.b = t.end;
        e.angle_a = t.angle_start;
        e.angle_b = traces[partner].angle_start;  // exact ray angle at far end
        // unbroken: passes through no third zero
        for (std::size_t i = 0; i < qd.zeros.size(); ++i) {
            if (static_cast<int>(i) == e.a.index ||
                static_cast<int>(i) == e.b.index)
                continue;
            for (Complex zp : t.points)
                if (std::abs(zp - qd.zeros[i].first) < capture)
                    e.unbroken = false;
        }
        graph.edges.push_back(std::move(e));
        consumed[r] = true;
        consumed[partner] = true;
    }

    // rotation system: darts sorted counterclockwise around each vertex
    std::map<int, std::vector<int>> rotation;  // vertex -> darts
    const int ndarts = 2 * static_cast<int>(graph.edges.size());
    for (int d = 0; d < ndarts; ++d)
        rotation[dart_origin(graph.edges, d)].push_back(d);
    for (auto& [v, darts] : rotation)
        std::sort(darts.begin(), darts.end(), [&](int x, int y) {
            return dart_angle(graph.edges, x) < dart_angle(graph.edges, y);
        });
    auto next_ccw = [&](int d) {
        const auto& darts = rotation[dart_origin(graph.edges, d)];
        auto it = std::find(darts.begin(), darts.end(), d);
        ++it;
        return it == darts.end() ? darts.front() : *it;
    };

    // face traversal: follow dart, flip, take the next ccw dart
    std::vector<bool> seen(ndarts, false);
    for (int d0 = 0; d0 < ndarts; ++d0) {
        if (seen[d0]) continue;
        Face face;
        int d = d0;
        do {
            seen[d] = true;
            face.darts.push_back(d);
            d = next_ccw(d ^ 1);
        } while (d != d0);
        for (int fd : face.darts)
            if (dart_origin(graph.edges, fd) == kInfVertex)
                ++face.infinity_accesses;
        face.kind = face.infinity_accesses == 1   ? Face::HalfPlane
                    : face.infinity_accesses == 2 ? Face::Strip
                                                  : Face::Other;
        graph.faces.push_back(std::move(face));
    }

    // Euler check on the sphere: V - E + F = 2
    const int V = static_cast<int>(graph.vertices.size()) + 1;
    const int E = static_cast<int>(graph.edges.size());
    const int F = static_cast<int>(graph.faces.size());
    if (V - E + F != 2)
        throw TraceError("embedding is not planar (Euler check failed)");
    return graph;
}

std::vector<ShortTrajectory> short_trajectories(const CriticalGraph& graph) {
    std::vector<ShortTrajectory> out;
    for (int e : graph.short_edge_indices()) {
        const GraphEdge& edge = graph.edges[e];
        out.push_back({edge.a.index, edge.b.index, &edge.traj, edge.unbroken});
    }
    return out;
}

bool PolygonReport::holds(double tol) const {
    return std::abs(lhs - rhs) < tol;
}

PolygonReport teichmuller_report(const std::vector<PolygonCorner>& corners,
                                 int interior_zeros) {
    PolygonReport rep;
    rep.corners = corners;
    rep.interior_zeros = interior_zeros;
    for (const auto& c : rep.corners)
        rep.lhs += 1.0 - (c.multiplicity + 2) * c.angle / (2.0 * M_PI);
    rep.rhs = 2.0 + interior_zeros;
    return rep;
}

PolygonReport teichmuller_check(const CriticalGraph& graph, const Face& face) {
    std::vector<PolygonCorner> corners;
    const auto& edges = graph.edges;
    const int n = static_cast<int>(face.darts.size());
    for (int i = 0; i < n; ++i) {
        const int d_prev = face.darts[i];
        const int d_next = face.darts[(i + 1) % n];
        const int v = dart_origin(edges, d_next);
        const double from = dart_angle(edges, d_prev ^ 1);
        const double to = dart_angle(edges, d_next);
        double raw = ccw_gap(from, to);
        if (raw >= 2.0 * M_PI - 1e-9) raw = 0.0;  // doubled-back corner
        PolygonCorner c;
        if (v == kInfVertex) {
            c.multiplicity = -8;
            c.angle_raw = raw;
            c.angle = std::round(raw / (M_PI / 3.0)) * (M_PI / 3.0);
        } else {
            c.multiplicity = graph.vertices[v].second;
            const double unit = 2.0 * M_PI / (c.multiplicity + 2);
            c.angle_raw = raw;
            c.angle = std::round(raw / unit) * unit;
        }
        corners.push_back(c);
    }
    return teichmuller_report(corners, 0);
}

int winding_number(const std::vector<Complex>& polyline, Complex z) {
    double total = 0.0;
    for (std::size_t k = 1; k < polyline.size(); ++k) {
        const Complex a = polyline[k - 1] - z;
        const Complex b = polyline[k] - z;
        total += std::arg(b / a);
    }
    // close the loop if the polyline is not explicitly closed
    if (std::abs(polyline.front() - polyline.back()) > 0.0) {
        const Complex a = polyline.back() - z;
        const Complex b = polyline.front() - z;
        total += std::arg(b / a);
    }
    return static_cast<int>(std::lround(total / (2.0 * M_PI)));
}

}  // namespace qd
