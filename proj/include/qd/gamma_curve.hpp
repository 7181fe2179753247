#pragma once

#include <optional>

#include "qd/quad_diff.hpp"

namespace qd {

// The classification curve Gamma = { z : gamma_value(z) = 0 } together with
// [-1,1]; four unbounded branches attached to +-1, one per quadrant.
enum class GammaLabel { Gamma1Plus, Gamma1Minus, GammaM1Plus, GammaM1Minus };

struct GammaBranch {
    GammaLabel label;
    std::vector<Complex> polyline;
    double asymptote_angle = 0.0;  // limit of arg z along the branch
};

enum class Region { Omega1, Omega2, OmegaPlus, OmegaMinus, OnGamma, OnSegment };

struct RegionClass {
    Region region;
    std::optional<GammaLabel> branch;  // set for OnGamma
};

// Re of the branch-tracked integral of sqrt((t-z)(t-conj z)(t^2-1)) from 0
// to z; the zero set of this function cuts the plane into the four regions.
// Sign convention: positive square root along (1, Re z) when Re z > 1.
double gamma_value(Complex z, const Tolerances& tol = {});

// The two real pieces of gamma_value(x+iy) on the quarter plane x>1, y>0:
// F integrates along [1, x] (real positive), G along the vertical leg.
struct FGSplit {
    double F, G;
};
FGSplit fg_split(double x, double y, const Tolerances& tol = {});

// Unique root in (0, pi/2) of
//   sinh(2/(3 cot x sin^3 x) - cot x / sin x) = cot x,
// the polar angle of the branch asymptotes.
double solve_asymptote_angle();

// Predictor-corrector continuation of gamma_value = 0 from near the branch
// root out to the given radius.
GammaBranch trace_branch(GammaLabel label, const RunConfig& cfg = {},
                         double radius = 50.0);

// Locate a relative to the four regions. Non-real a only.
RegionClass classify_region(Complex a, const RunConfig& cfg = {});

}  // namespace qd
