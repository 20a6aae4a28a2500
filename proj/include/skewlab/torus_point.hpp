#pragma once

// A point on the k-torus with exact fractional coordinates.

#include <cstddef>
#include <vector>

#include "skewlab/errors.hpp"
#include "skewlab/frac128.hpp"

namespace skewlab {

struct TorusPoint {
    std::vector<Frac128> x;

    TorusPoint() = default;
    explicit TorusPoint(std::size_t dim) : x(dim) {}
    explicit TorusPoint(std::vector<Frac128> coords) : x(std::move(coords)) {}

    std::size_t dim() const { return x.size(); }

    // 1-based coordinate access matching the usual x_1, ..., x_k labels.
    Frac128& coord(std::size_t i) {
        if (i < 1 || i > x.size()) throw BadIndex("TorusPoint::coord: index out of range");
        return x[i - 1];
    }
    const Frac128& coord(std::size_t i) const {
        if (i < 1 || i > x.size()) throw BadIndex("TorusPoint::coord: index out of range");
        return x[i - 1];
    }

    bool operator==(const TorusPoint& o) const { return x == o.x; }
};

// Max-metric distance on the torus: the largest coordinatewise distance to
// the nearest integer of the difference.
inline double torus_distance(const TorusPoint& a, const TorusPoint& b) {
    if (a.dim() != b.dim()) throw BadIndex("torus_distance: dimension mismatch");
    double d = 0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        const double c = dist_to_int(a.x[i] - b.x[i]);
        if (c > d) d = c;
    }
    return d;
}

}  // namespace skewlab
