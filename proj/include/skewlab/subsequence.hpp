#pragma once

// Selection of the frequency subsequence {n_r}: for each index r >= r0 the
// smallest admissible n with dist(n*alpha) inside the band
// [1/r^(2 eps), 1/r^eps). The scan walks n upward keeping n*alpha as an exact
// running Frac128 sum, so no precision is lost at large n.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "skewlab/errors.hpp"
#include "skewlab/frac128.hpp"

namespace skewlab {

struct SubsequenceEntry {
    std::int64_t r;
    std::int64_t n;
    double dist;  // dist_to_int(n * alpha), re-computable bit-for-bit
};

struct Subsequence {
    double eps = 0;
    std::int64_t r0 = 0;
    std::vector<SubsequenceEntry> entries;
};

inline double band_lower(std::int64_t r, double eps) {
    return std::pow(static_cast<double>(r), -2.0 * eps);
}

inline double band_upper(std::int64_t r, double eps) {
    return std::pow(static_cast<double>(r), -eps);
}

// Smallest r whose band meets (0, 1/2). dist(n*alpha) < 1/2 holds strictly
// for every n, so a band whose lower edge equals 1/2 exactly (r at an exact
// power of 2^(1/(2 eps))) is unattainable and the scan starts one index later.
inline std::int64_t first_band_index(double eps) {
    if (!(eps > 0) || !(eps < 0.25))
        throw BadIndex("first_band_index: eps must lie in (0, 1/4)");
    const double exponent = 1.0 / (2.0 * eps);
    if (exponent > 40.0) throw Error("first_band_index: eps too small, r0 exceeds 2^40");
    std::int64_t r = static_cast<std::int64_t>(std::floor(std::pow(2.0, exponent)));
    if (r < 1) r = 1;
    while (band_lower(r, eps) >= 0.5) ++r;
    while (r > 1 && band_lower(r - 1, eps) < 0.5) --r;
    return r;
}

// Recommended eps for a chain of length L, from the coefficient bound
// |G_i^(n_r)| <= r^(2 eps (i-1) - 1) / 4^(i-1) and square-summability of the
// last chain element.
inline double recommended_eps(int L) {
    return 1.0 / (8.0 * std::max(L - 1, 1));
}

inline Subsequence select_subsequence(Frac128 alpha, double eps, std::int64_t count,
                                      std::int64_t n_max = 100000000) {
    if (!(eps > 0) || !(eps < 0.25))
        throw BadIndex("select_subsequence: eps must lie in (0, 1/4)");
    if (count < 1) throw BadIndex("select_subsequence: count must be positive");
    if (n_max < 1 || n_max >= (static_cast<std::int64_t>(1) << 62))
        throw BadIndex("select_subsequence: n_max out of range");

    Subsequence out;
    out.eps = eps;
    out.r0 = first_band_index(eps);

    std::int64_t n = 0;
    Frac128 cur;  // n * alpha, exact
    out.entries.reserve(static_cast<std::size_t>(count));
    for (std::int64_t i = 0; i < count; ++i) {
        const std::int64_t r = out.r0 + i;
        const double lo = band_lower(r, eps);
        const double hi = band_upper(r, eps);
        bool found = false;
        double d = 0;
        // Successive n keep the selection strictly increasing and distinct.
        while (n < n_max) {
            ++n;
            cur = cur + alpha;
            d = cur.dist_to_int();
            if (lo <= d && d < hi) {
                found = true;
                break;
            }
        }
        if (!found)
            throw BandUnreachable(
                r, "select_subsequence: no n <= " + std::to_string(n_max) +
                       " lands in band for r = " + std::to_string(r));
        out.entries.push_back(SubsequenceEntry{r, n, d});
    }
    return out;
}

}  // namespace skewlab
