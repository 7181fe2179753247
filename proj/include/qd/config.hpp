#pragma once

#include <cstddef>

namespace qd {

// Global numerical knobs. Every routine takes these by value (or uses the
// defaults), so concurrent callers can tune them independently.
struct Tolerances {
    double quadrature_abs = 1e-12;   // absolute target for adaptive panels
    double root_abs = 1e-10;         // polynomial root residual scale
    double branch_clearance = 1e-6;  // min path distance to a branch point,
                                     // relative to the spread of the zeros
    double capture_rel = 1e-3;       // capture radius, relative to min zero gap
    double anchor_drift = 1e-6;      // |Re integral| allowed for a true capture
    double on_curve = 1e-6;          // classification band around the Gamma curve
    double escape_mult = 10.0;       // escape radius = mult * (1 + max |zero|)
    double direction_cone = 0.0872664625997164789;  // pi/36
    double arc_budget = 200.0;       // max trajectory arc length
    int max_quad_depth = 40;
};

struct RunConfig {
    Tolerances tol;
    bool parallel = true;        // OpenMP over independent rays / samples
    double branch_radius = 50.0; // how far to continue the Gamma branches
    unsigned long seed = 20240901UL;
};

}  // namespace qd
