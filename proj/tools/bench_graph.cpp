// Benchmark: critical-graph construction with OpenMP ray parallelism vs the
// serial reference path, verifying both produce the same census.

#include <chrono>
#include <cstdio>
#include <vector>

#include "qd/quad_diff.hpp"

using qd::Complex;

namespace {

double run_case(Complex a, bool parallel, int reps, int& half_planes,
                int& strips, std::size_t& shorts) {
    qd::RunConfig cfg;
    cfg.parallel = parallel;
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto graph =
            qd::critical_graph(qd::QuadraticDifferential::family(a), cfg);
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best,
                        std::chrono::duration<double>(t1 - t0).count());
        half_planes = graph.half_planes();
        strips = graph.strips();
        shorts = qd::short_trajectories(graph).size();
    }
    return best;
}

}  // namespace

int main(int argc, char** argv) {
    const int reps = argc > 1 ? std::atoi(argv[1]) : 3;
    const std::vector<Complex> params = {
        Complex(2.0, 0.2), Complex(-2.0, 0.3), Complex(0.0, 1.0),
        Complex(0.4, 2.1), Complex(-1.3, 0.7),
    };
    std::printf("%-14s %10s %10s %8s  census\n", "a", "serial[s]",
                "openmp[s]", "speedup");
    for (Complex a : params) {
        int hp_s = 0, st_s = 0, hp_p = 0, st_p = 0;
        std::size_t sh_s = 0, sh_p = 0;
        const double ts = run_case(a, false, reps, hp_s, st_s, sh_s);
        const double tp = run_case(a, true, reps, hp_p, st_p, sh_p);
        if (hp_s != hp_p || st_s != st_p || sh_s != sh_p) {
            std::fprintf(stderr, "census mismatch for a = (%g, %g)\n",
                         a.real(), a.imag());
            return 1;
        }
        std::printf("%6.2f%+.2fi %10.4f %10.4f %8.2f  hp=%d strips=%d shorts=%zu\n",
                    a.real(), a.imag(), ts, tp, ts / tp, hp_s, st_s, sh_s);
    }
    return 0;
}
