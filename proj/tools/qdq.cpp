// qdq: quadratic-differential toolkit front end.
//
// Subcommands: classify | gamma | spectrum | pipeline | trace.
// Exit codes: 0 success, 2 usage/precondition, 3 numerical failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qd/io.hpp"

namespace fs = std::filesystem;
using qd::Complex;

namespace {

// command-line complex numbers: "RE", "RE+IMi", "RE-IMi" (e.g. 2+0.2i)
Complex parse_complex(const std::string& text) {
    std::string s = text;
    if (s.empty()) throw CLI::ValidationError("empty complex literal");
    double re = 0.0, im = 0.0;
    if (s.back() == 'i') {
        s.pop_back();
        // split at the last +/- that is not an exponent sign or leading
        std::size_t split = std::string::npos;
        for (std::size_t k = s.size(); k-- > 1;) {
            if ((s[k] == '+' || s[k] == '-') &&
                s[k - 1] != 'e' && s[k - 1] != 'E') {
                split = k;
                break;
            }
        }
        try {
            if (split == std::string::npos) {
                im = s.empty() || s == "+" || s == "-"
                         ? (s == "-" ? -1.0 : 1.0)
                         : std::stod(s);
            } else {
                re = std::stod(s.substr(0, split));
                const std::string imtxt = s.substr(split);
                im = imtxt == "+" ? 1.0 : imtxt == "-" ? -1.0 : std::stod(imtxt);
            }
        } catch (const std::exception&) {
            throw CLI::ValidationError("bad complex literal: " + text);
        }
    } else {
        try {
            re = std::stod(s);
        } catch (const std::exception&) {
            throw CLI::ValidationError("bad complex literal: " + text);
        }
    }
    return Complex(re, im);
}

struct Options {
    std::string config_path;
    std::string out_dir = ".";
    std::string formats = "json,csv,svg";
    qd::RunConfig cfg;

    bool wants(const std::string& fmt) const {
        std::stringstream ss(formats);
        std::string tok;
        while (std::getline(ss, tok, ','))
            if (tok == fmt) return true;
        return false;
    }

    void load_config() {
        if (config_path.empty()) return;
        std::ifstream in(config_path);
        if (!in) throw CLI::ValidationError("cannot open config " + config_path);
        nlohmann::json j;
        in >> j;
        auto& t = cfg.tol;
        if (j.contains("quadrature_abs")) t.quadrature_abs = j["quadrature_abs"];
        if (j.contains("root_abs")) t.root_abs = j["root_abs"];
        if (j.contains("branch_clearance")) t.branch_clearance = j["branch_clearance"];
        if (j.contains("capture_rel")) t.capture_rel = j["capture_rel"];
        if (j.contains("anchor_drift")) t.anchor_drift = j["anchor_drift"];
        if (j.contains("on_curve")) t.on_curve = j["on_curve"];
        if (j.contains("escape_mult")) t.escape_mult = j["escape_mult"];
        if (j.contains("arc_budget")) t.arc_budget = j["arc_budget"];
        if (j.contains("parallel")) cfg.parallel = j["parallel"];
        if (j.contains("branch_radius")) cfg.branch_radius = j["branch_radius"];
        if (j.contains("seed")) cfg.seed = j["seed"];
        for (double v : {t.quadrature_abs, t.root_abs, t.capture_rel,
                         t.on_curve, t.escape_mult, t.arc_budget})
            if (!(v > 0.0))
                throw CLI::ValidationError("tolerances must be positive");
    }

    void write(const std::string& name, const std::string& content) const {
        fs::create_directories(out_dir);
        std::ofstream out(fs::path(out_dir) / name, std::ios::binary);
        out << content;
    }
};

std::vector<qd::GammaBranch> all_branches(const qd::RunConfig& cfg,
                                          double radius) {
    using qd::GammaLabel;
    std::vector<qd::GammaBranch> out;
    for (GammaLabel l : {GammaLabel::Gamma1Plus, GammaLabel::Gamma1Minus,
                         GammaLabel::GammaM1Plus, GammaLabel::GammaM1Minus})
        out.push_back(qd::trace_branch(l, cfg, radius));
    return out;
}

int cmd_classify(const Options& opt, const std::string& a_text) {
    const Complex a = parse_complex(a_text);
    if (std::abs(a.imag()) < 1e-12) {
        std::cerr << "classify: --a must be non-real (got " << a_text << ")\n";
        return 2;
    }
    const auto rc = qd::classify_region(a, opt.cfg);
    const auto qdiff = qd::QuadraticDifferential::family(a, opt.cfg.tol);
    const auto graph = qd::critical_graph(qdiff, opt.cfg);
    const std::string report = qd::classify_report_json(rc, graph);
    std::cout << report;
    if (opt.wants("json")) opt.write("classify.json", report);
    if (opt.wants("csv")) opt.write("classify_graph.csv", qd::graph_csv(graph));
    if (opt.wants("svg")) {
        const double radius = 1.5 * qdiff.scale();
        opt.write("classify.svg",
                  qd::graph_svg(graph, all_branches(opt.cfg, radius)));
    }
    return 0;
}

int cmd_gamma(const Options& opt) {
    const double xstar = qd::solve_asymptote_angle();
    const auto branches = all_branches(opt.cfg, opt.cfg.branch_radius);
    if (opt.wants("csv"))
        for (const auto& br : branches)
            opt.write(std::string("gamma_") + qd::gamma_label_name(br.label) +
                          ".csv",
                      qd::polyline_csv(br.polyline));
    std::string j = "{\n  \"asymptote_angle\": " + qd::fmt_double(xstar) +
                    ",\n  \"branch_asymptotes\": {";
    for (std::size_t k = 0; k < branches.size(); ++k) {
        if (k) j += ",";
        j += std::string("\n    \"") + qd::gamma_label_name(branches[k].label) +
             "\": " + qd::fmt_double(branches[k].asymptote_angle);
    }
    j += "\n  }\n}\n";
    std::cout << j;
    if (opt.wants("json")) opt.write("gamma.json", j);
    return 0;
}

int cmd_spectrum(const Options& opt, int m, double b, const std::string& rule,
                 int index) {
    if (m < 1) {
        std::cerr << "spectrum: --m must be >= 1\n";
        return 2;
    }
    const qd::SpectralProblem prob{m, b};
    const auto pairs = qd::eigenpairs(prob);
    qd::SelectRule r = qd::SelectRule::MaxReal;
    if (rule == "minreal") r = qd::SelectRule::MinReal;
    else if (rule == "maxmodulus") r = qd::SelectRule::MaxModulus;
    else if (rule == "index") r = qd::SelectRule::Index;
    else if (rule != "maxreal") {
        std::cerr << "spectrum: unknown rule " << rule << "\n";
        return 2;
    }
    const auto state = qd::select_state(pairs, r, index);
    const auto mu = qd::rescaled_measure(prob, state, opt.cfg.tol);

    // exact Riccati residual over a deterministic sample grid
    std::mt19937 rng(opt.cfg.seed);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    double max_resid = 0.0;
    int tested = 0;
    while (tested < 50 && m > 1) {
        const Complex z(u(rng), u(rng));
        try {
            const auto res = qd::riccati_residual(prob, state, z, opt.cfg.tol);
            max_resid = std::max(max_resid, std::abs(res.exact));
            ++tested;
        } catch (const std::invalid_argument&) {
        }
    }

    std::string j = "{\n  \"m\": " + std::to_string(m) +
                    ",\n  \"b\": " + qd::fmt_double(b) + ",\n  \"betas\": [";
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        if (k) j += ",";
        j += qd::complex_json(pairs[k].beta);
    }
    j += "],\n  \"selected_beta\": " + qd::complex_json(state.beta) +
         ",\n  \"cloud_mass\": " + qd::fmt_double(mu.total_mass()) +
         ",\n  \"max_exact_residual\": " + qd::fmt_double(max_resid) + "\n}\n";
    std::cout << j;
    if (opt.wants("json")) opt.write("spectrum.json", j);
    if (opt.wants("csv")) opt.write("spectrum_cloud.csv",
                                    qd::polyline_csv(mu.points));
    return 0;
}

double mean_distance_to_shorts(const std::vector<Complex>& cloud,
                               const qd::CriticalGraph& graph) {
    const auto shorts = qd::short_trajectories(graph);
    if (shorts.empty() || cloud.empty()) return -1.0;
    double total = 0.0;
    for (Complex z : cloud) {
        double best = 1e300;
        for (const auto& st : shorts) {
            const auto& pts = st.traj->points;
            for (std::size_t k = 1; k < pts.size(); ++k) {
                const Complex a = pts[k - 1], b = pts[k];
                const Complex ab = b - a;
                double t = (std::norm(ab) > 0.0)
                               ? ((z - a) * std::conj(ab)).real() / std::norm(ab)
                               : 0.0;
                t = std::clamp(t, 0.0, 1.0);
                best = std::min(best, std::abs(z - (a + t * ab)));
            }
        }
        total += best;
    }
    return total / static_cast<double>(cloud.size());
}

int cmd_pipeline(const Options& opt, double b, const std::string& m_text,
                 const std::string& rule) {
    std::vector<int> ms;
    std::stringstream ss(m_text);
    std::string tok;
    while (std::getline(ss, tok, ',')) ms.push_back(std::stoi(tok));
    if (ms.empty()) {
        std::cerr << "pipeline: --m list is empty\n";
        return 2;
    }
    for (std::size_t k = 1; k < ms.size(); ++k)
        if (ms[k] <= ms[k - 1]) {
            std::cerr << "pipeline: --m list must be strictly increasing\n";
            return 2;
        }
    qd::SelectRule r = qd::SelectRule::MaxReal;
    if (rule == "minreal") r = qd::SelectRule::MinReal;
    else if (rule == "maxmodulus") r = qd::SelectRule::MaxModulus;

    const auto seq = qd::beta_limit_estimate(b, ms, r);
    const Complex beta_limit = seq.back();

    const auto eq = qd::QuadraticAlgebraicEq::from_spectral(b, beta_limit);
    const auto disc = qd::discriminant_qd(eq, opt.cfg.tol);
    const auto graph = qd::critical_graph(disc.qd, opt.cfg);
    const auto cand = qd::verify_candidate(eq, graph, opt.cfg.tol);

    std::vector<std::vector<Complex>> clouds;
    std::vector<double> trend;
    for (int m : ms) {
        const qd::SpectralProblem prob{m, b};
        const auto state = qd::select_state(qd::eigenpairs(prob), r);
        const auto mu = qd::rescaled_measure(prob, state, opt.cfg.tol);
        clouds.push_back(mu.points);
        trend.push_back(mean_distance_to_shorts(mu.points, graph));
    }

    const int m_last = ms.back();
    std::string j = "{\n  \"b\": " + qd::fmt_double(b) + ",\n  \"ms\": [";
    for (std::size_t k = 0; k < ms.size(); ++k) {
        if (k) j += ",";
        j += std::to_string(ms[k]);
    }
    j += "],\n  \"beta_norm\": [";
    for (std::size_t k = 0; k < seq.size(); ++k) {
        if (k) j += ",";
        j += qd::complex_json(seq[k]);
    }
    j += "],\n  \"beta_limit\": " + qd::complex_json(beta_limit) +
         ",\n  \"face_census\": {\"half_planes\": " +
         std::to_string(graph.half_planes()) +
         ", \"strips\": " + std::to_string(graph.strips()) +
         "},\n  \"mean_distance\": [";
    for (std::size_t k = 0; k < trend.size(); ++k) {
        if (k) j += ",";
        j += qd::fmt_double(trend[k]);
    }
    j += "],\n  \"mass_consistency\": {\"m_ratio\": " +
         qd::fmt_double((m_last - 1.0) / m_last) +
         ", \"candidate_mass\": " + qd::fmt_double(cand.mass) +
         "},\n  \"candidate\": " + qd::candidate_json(cand) + "}\n";
    std::cout << j;
    if (opt.wants("json")) opt.write("pipeline.json", j);
    if (opt.wants("csv")) {
        std::string csv = "m,beta_re,beta_im,mean_distance\n";
        for (std::size_t k = 0; k < ms.size(); ++k)
            csv += std::to_string(ms[k]) + "," +
                   qd::fmt_double(seq[k].real()) + "," +
                   qd::fmt_double(seq[k].imag()) + "," +
                   qd::fmt_double(trend[k]) + "\n";
        opt.write("pipeline_trend.csv", csv);
    }
    if (opt.wants("svg")) opt.write("pipeline.svg", qd::cloud_svg(graph, clouds));
    return 0;
}

int cmd_trace(const Options& opt, const std::string& a_text,
              const std::string& start_text, const std::string& dir_text,
              bool orthogonal) {
    const Complex a = parse_complex(a_text);
    if (std::abs(a.imag()) < 1e-12) {
        std::cerr << "trace: --a must be non-real\n";
        return 2;
    }
    const Complex start = parse_complex(start_text);
    const Complex dir = parse_complex(dir_text);
    if (std::abs(dir) == 0.0) {
        std::cerr << "trace: --dir must be nonzero\n";
        return 2;
    }
    const auto qdiff = qd::QuadraticDifferential::family(a, opt.cfg.tol);
    const auto traj = qd::trace(qdiff, start, dir, opt.cfg, -1, orthogonal);
    const auto anchor_json = [](const qd::Anchor& an) {
        std::string kind = an.kind == qd::AnchorKind::CriticalPoint
                               ? "zero"
                               : an.kind == qd::AnchorKind::InfinityDirection
                                     ? "infinity"
                                     : "open";
        return "{\"kind\": \"" + kind +
               "\", \"index\": " + std::to_string(an.index) + "}";
    };
    std::string j = "{\n  \"points\": " + std::to_string(traj.points.size()) +
                    ",\n  \"arc_length\": " + qd::fmt_double(traj.arc_length) +
                    ",\n  \"start\": " + anchor_json(traj.start) +
                    ",\n  \"end\": " + anchor_json(traj.end) + "\n}\n";
    std::cout << j;
    if (opt.wants("json")) opt.write("trace.json", j);
    if (opt.wants("csv")) opt.write("trace.csv", qd::polyline_csv(traj.points));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quadratic differential / spectral pipeline toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    Options opt;
    app.add_option("--config", opt.config_path, "JSON tolerance overrides");
    app.add_option("--out", opt.out_dir, "output directory");
    app.add_option("--format", opt.formats, "comma list of json,csv,svg");

    std::string a_text, start_text = "0+0i", dir_text = "1+0i";
    std::string rule = "maxreal", m_list = "8,16,32";
    int m = 1, index = 0;
    double b = 1.0;
    bool orthogonal = false;

    auto* classify = app.add_subcommand("classify", "classify the family at a");
    classify->add_option("--a", a_text, "parameter a (RE+IMi)")->required();

    auto* gamma = app.add_subcommand("gamma", "trace the classification curve");

    auto* spectrum = app.add_subcommand("spectrum", "finite-m spectral data");
    spectrum->add_option("--m", m, "dimension m")->required();
    spectrum->add_option("--b", b, "potential parameter b");
    spectrum->add_option("--rule", rule, "maxreal|minreal|maxmodulus|index");
    spectrum->add_option("--index", index, "eigenpair index for --rule index");

    auto* pipeline = app.add_subcommand("pipeline", "full spectral pipeline");
    pipeline->add_option("--b", b, "potential parameter b")->required();
    pipeline->add_option("--m", m_list, "increasing comma list of m");
    pipeline->add_option("--rule", rule, "state selection rule");

    auto* trace_cmd = app.add_subcommand("trace", "raw trajectory trace");
    trace_cmd->add_option("--a", a_text, "parameter a (RE+IMi)")->required();
    trace_cmd->add_option("--start", start_text, "start point");
    trace_cmd->add_option("--dir", dir_text, "initial direction");
    trace_cmd->add_flag("--orthogonal", orthogonal, "vertical foliation");

    try {
        app.parse(argc, argv);
        opt.load_config();
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (classify->parsed()) return cmd_classify(opt, a_text);
        if (gamma->parsed()) return cmd_gamma(opt);
        if (spectrum->parsed()) return cmd_spectrum(opt, m, b, rule, index);
        if (pipeline->parsed()) return cmd_pipeline(opt, b, m_list, rule);
        if (trace_cmd->parsed())
            return cmd_trace(opt, a_text, start_text, dir_text, orthogonal);
    } catch (const qd::TraceError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const qd::QuadError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "precondition violated: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
