#include "qd/io.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "json.hpp"

namespace qd {

std::string fmt_double(double x) {
    if (x == 0.0) x = 0.0;  // normalize -0
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

std::string complex_json(Complex z) {
    return "[" + fmt_double(z.real()) + "," + fmt_double(z.imag()) + "]";
}

std::string poly_json(const ComplexPolynomial& p) {
    std::string out = "[";
    for (std::size_t k = 0; k < p.coeffs().size(); ++k) {
        if (k) out += ",";
        out += complex_json(p.coeffs()[k]);
    }
    return out + "]";
}

ComplexPolynomial poly_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    if (!j.is_array()) throw std::invalid_argument("polynomial JSON must be an array");
    std::vector<Complex> c;
    for (const auto& item : j) {
        if (!item.is_array() || item.size() != 2)
            throw std::invalid_argument("coefficient must be a [re, im] pair");
        c.emplace_back(item[0].get<double>(), item[1].get<double>());
    }
    if (c.empty()) throw std::invalid_argument("empty polynomial");
    return ComplexPolynomial(std::move(c));
}

const char* region_name(Region r) {
    switch (r) {
        case Region::Omega1: return "Omega1";
        case Region::Omega2: return "Omega2";
        case Region::OmegaPlus: return "OmegaPlus";
        case Region::OmegaMinus: return "OmegaMinus";
        case Region::OnGamma: return "OnGamma";
        case Region::OnSegment: return "OnSegment";
    }
    return "?";
}

const char* gamma_label_name(GammaLabel l) {
    switch (l) {
        case GammaLabel::Gamma1Plus: return "Gamma1Plus";
        case GammaLabel::Gamma1Minus: return "Gamma1Minus";
        case GammaLabel::GammaM1Plus: return "GammaM1Plus";
        case GammaLabel::GammaM1Minus: return "GammaM1Minus";
    }
    return "?";
}

std::string classify_report_json(const RegionClass& rc,
                                 const CriticalGraph& graph) {
    std::string out = "{\n  \"region\": \"";
    out += region_name(rc.region);
    out += "\",\n  \"branch\": ";
    out += rc.branch ? ("\"" + std::string(gamma_label_name(*rc.branch)) + "\"")
                     : "null";
    out += ",\n  \"short_trajectory_pairs\": [";
    bool first = true;
    for (const auto& st : short_trajectories(graph)) {
        if (!first) out += ",";
        first = false;
        out += "[" + std::to_string(st.zero_a) + "," +
               std::to_string(st.zero_b) + "]";
    }
    out += "],\n  \"face_census\": {\"half_planes\": ";
    out += std::to_string(graph.half_planes());
    out += ", \"strips\": " + std::to_string(graph.strips());
    out += "}\n}\n";
    return out;
}

std::string candidate_json(const MotherBodyCandidate& cand) {
    std::string out = "{\n  \"mass\": " + fmt_double(cand.mass);
    out += ",\n  \"e_over_a_real\": ";
    out += cand.e_over_a_real ? "true" : "false";
    out += ",\n  \"arcs\": [";
    for (std::size_t k = 0; k < cand.arcs.size(); ++k) {
        const auto& a = cand.arcs[k];
        if (k) out += ",";
        out += "\n    {\"endpoints\": [" + complex_json(a.endpoint_a) + "," +
               complex_json(a.endpoint_b) + "], \"mass\": " +
               fmt_double(a.mass) + ", \"sign\": " + std::to_string(a.sign) +
               "}";
    }
    if (!cand.arcs.empty()) out += "\n  ";
    out += "],\n  \"verdict\": \"";
    out += cand.accepted ? "accepted" : "rejected";
    out += "\",\n  \"violated\": ";
    out += cand.violated.empty() ? "null" : ("\"" + cand.violated + "\"");
    out += "\n}\n";
    return out;
}

std::string polyline_csv(const std::vector<Complex>& points) {
    std::string out = "re,im\n";
    for (Complex z : points)
        out += fmt_double(z.real()) + "," + fmt_double(z.imag()) + "\n";
    return out;
}

namespace {

const char* anchor_str(const Anchor& a) {
    switch (a.kind) {
        case AnchorKind::CriticalPoint: return "zero";
        case AnchorKind::InfinityDirection: return "infinity";
        case AnchorKind::Open: return "open";
    }
    return "?";
}

}  // namespace

std::string graph_csv(const CriticalGraph& graph) {
    std::string out = "edge,start_kind,start_index,end_kind,end_index,point,re,im\n";
    for (std::size_t e = 0; e < graph.edges.size(); ++e) {
        const auto& edge = graph.edges[e];
        const std::string prefix =
            std::to_string(e) + "," + anchor_str(edge.a) + "," +
            std::to_string(edge.a.index) + "," + anchor_str(edge.b) + "," +
            std::to_string(edge.b.index) + ",";
        for (std::size_t k = 0; k < edge.traj.points.size(); ++k) {
            const Complex z = edge.traj.points[k];
            out += prefix + std::to_string(k) + "," + fmt_double(z.real()) +
                   "," + fmt_double(z.imag()) + "\n";
        }
    }
    return out;
}

namespace {

struct Box {
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    void add(Complex z) {
        xmin = std::min(xmin, z.real());
        xmax = std::max(xmax, z.real());
        ymin = std::min(ymin, z.imag());
        ymax = std::max(ymax, z.imag());
    }
    void expand(double factor) {
        const double cx = 0.5 * (xmin + xmax), cy = 0.5 * (ymin + ymax);
        const double hx = std::max(0.5 * (xmax - xmin), 0.5) * factor;
        const double hy = std::max(0.5 * (ymax - ymin), 0.5) * factor;
        xmin = cx - hx; xmax = cx + hx;
        ymin = cy - hy; ymax = cy + hy;
    }
};

// y is flipped (SVG's y grows downward, the plane's upward)
std::string svg_polyline(const std::vector<Complex>& pts, const char* style) {
    std::string out = "<polyline fill=\"none\" " + std::string(style) +
                      " points=\"";
    for (std::size_t k = 0; k < pts.size(); ++k) {
        if (k) out += " ";
        out += fmt_double(pts[k].real()) + "," + fmt_double(-pts[k].imag());
    }
    return out + "\"/>\n";
}

std::string svg_open(const Box& b) {
    const double w = b.xmax - b.xmin, h = b.ymax - b.ymin;
    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"";
    out += fmt_double(b.xmin) + " " + fmt_double(-b.ymax) + " " +
           fmt_double(w) + " " + fmt_double(h) + "\" width=\"640\" height=\"" +
           fmt_double(640.0 * h / w) + "\">\n";
    return out;
}

std::string svg_graph_body(const CriticalGraph& graph, double stroke) {
    std::string out;
    const std::string edge_style =
        "stroke=\"#1f4e79\" stroke-width=\"" + fmt_double(stroke) + "\"";
    const std::string short_style =
        "stroke=\"#c00000\" stroke-width=\"" + fmt_double(1.8 * stroke) + "\"";
    for (const auto& edge : graph.edges) {
        const bool is_short = edge.a.kind == AnchorKind::CriticalPoint &&
                              edge.b.kind == AnchorKind::CriticalPoint;
        out += svg_polyline(edge.traj.points,
                            (is_short ? short_style : edge_style).c_str());
    }
    for (const auto& [z, mult] : graph.vertices) {
        out += "<circle cx=\"" + fmt_double(z.real()) + "\" cy=\"" +
               fmt_double(-z.imag()) + "\" r=\"" + fmt_double(3.0 * stroke) +
               "\" fill=\"#000\"/>\n";
        (void)mult;
    }
    return out;
}

}  // namespace

std::string graph_svg(const CriticalGraph& graph,
                      const std::vector<GammaBranch>& overlay) {
    Box box;
    for (const auto& [z, mult] : graph.qd.zeros) {
        box.add(z);
        (void)mult;
    }
    box.expand(1.2);
    for (const auto& br : overlay)
        for (Complex z : br.polyline) box.add(z);
    const double stroke = (box.xmax - box.xmin) / 640.0;
    std::string out = svg_open(box);
    const std::string gamma_style =
        "stroke=\"#2e8b57\" stroke-dasharray=\"" + fmt_double(6.0 * stroke) +
        "\" stroke-width=\"" + fmt_double(stroke) + "\"";
    for (const auto& br : overlay)
        out += svg_polyline(br.polyline, gamma_style.c_str());
    out += svg_graph_body(graph, stroke);
    return out + "</svg>\n";
}

std::string cloud_svg(const CriticalGraph& graph,
                      const std::vector<std::vector<Complex>>& clouds) {
    Box box;
    for (const auto& [z, mult] : graph.qd.zeros) {
        box.add(z);
        (void)mult;
    }
    for (const auto& cloud : clouds)
        for (Complex z : cloud) box.add(z);
    box.expand(1.2);
    const double stroke = (box.xmax - box.xmin) / 640.0;
    std::string out = svg_open(box);
    out += svg_graph_body(graph, stroke);
    const char* colors[] = {"#e69f00", "#56b4e9", "#009e73",
                            "#cc79a7", "#d55e00", "#0072b2"};
    for (std::size_t c = 0; c < clouds.size(); ++c) {
        const std::string fill = colors[c % 6];
        for (Complex z : clouds[c])
            out += "<circle cx=\"" + fmt_double(z.real()) + "\" cy=\"" +
                   fmt_double(-z.imag()) + "\" r=\"" +
                   fmt_double((2.0 + 0.7 * c) * stroke) + "\" fill=\"" + fill +
                   "\" fill-opacity=\"0.8\"/>\n";
    }
    return out + "</svg>\n";
}

}  // namespace qd
