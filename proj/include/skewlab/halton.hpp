#pragma once

// Seedless low-discrepancy sample points: the Halton sequence. The base-2
// coordinate is built bit-exactly (dyadic), higher bases go through double
// radical inverses. Index 0 maps to the origin; sweeps start at index 1.

#include <cstdint>
#include <vector>

#include "skewlab/errors.hpp"
#include "skewlab/frac128.hpp"

namespace skewlab {

// Radical inverse of i in the given base, in [0,1).
inline double radical_inverse(std::uint64_t i, unsigned base) {
    double inv = 1.0 / base;
    double value = 0.0;
    double scale = inv;
    while (i != 0) {
        value += static_cast<double>(i % base) * scale;
        i /= base;
        scale *= inv;
    }
    return value;
}

// Base-2 Halton point, exact: bit j of i becomes fractional bit j+1.
inline Frac128 halton1(std::uint64_t i) {
    u128 v = 0;
    for (int j = 0; j < 64 && (i >> j) != 0; ++j)
        if ((i >> j) & 1) v |= static_cast<u128>(1) << (127 - j);
    return Frac128::from_raw(v);
}

// d-dimensional Halton point with prime bases 2,3,5,...
inline std::vector<Frac128> halton_point(std::uint64_t i, int dim) {
    static constexpr unsigned primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    if (dim < 1 || dim > static_cast<int>(sizeof(primes) / sizeof(primes[0])))
        throw BadIndex("halton_point: dim out of range");
    std::vector<Frac128> p;
    p.reserve(static_cast<std::size_t>(dim));
    p.push_back(halton1(i));
    for (int c = 1; c < dim; ++c)
        p.push_back(Frac128::from_double(radical_inverse(i, primes[c])));
    return p;
}

}  // namespace skewlab
