#pragma once

#include <vector>

#include "qd/complex_poly.hpp"

namespace qd {

// Ordered polyline in the plane; if closed, first sample equals the last.
struct OrientedPath {
    std::vector<Complex> samples;
    bool closed = false;

    static OrientedPath segment(Complex a, Complex b) {
        return OrientedPath{{a, b}, false};
    }
    static OrientedPath circle(Complex center, double radius, int n = 256);
    Complex start() const { return samples.front(); }
    Complex end() const { return samples.back(); }
    OrientedPath reversed() const {
        OrientedPath r{samples, closed};
        std::reverse(r.samples.begin(), r.samples.end());
        return r;
    }
};

// One branch-continuous value of sqrt(p) per path sample.
struct BranchedSqrtTrace {
    OrientedPath path;
    std::vector<Complex> values;
};

}  // namespace qd
