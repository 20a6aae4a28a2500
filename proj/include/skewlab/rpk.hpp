#pragma once

// Regional proximality of order k. A pair is certified at tolerance delta by
// witnesses within delta of each point together with an integer vector n of
// length k whose nonempty subset sums m = n . eps all bring the witness
// iterates within delta of each other. Finite systems get an exhaustive
// search; torus systems get a bounded deterministic witness search that can
// certify presence but never absence.

#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "skewlab/errors.hpp"
#include "skewlab/frac128.hpp"
#include "skewlab/skew_spec.hpp"
#include "skewlab/torus_point.hpp"

namespace skewlab {

struct FiniteSystem {
    int size = 0;
    std::vector<int> map;                      // permutation of {0..size-1}
    std::vector<std::vector<double>> metric;   // symmetric, zero diagonal

    void validate() const {
        if (size < 1 || map.size() != static_cast<std::size_t>(size))
            throw ParseError("FiniteSystem: map length must equal size");
        std::vector<bool> seen(static_cast<std::size_t>(size), false);
        for (int v : map) {
            if (v < 0 || v >= size || seen[static_cast<std::size_t>(v)])
                throw ParseError("FiniteSystem: map is not a permutation");
            seen[static_cast<std::size_t>(v)] = true;
        }
        if (metric.size() != static_cast<std::size_t>(size))
            throw ParseError("FiniteSystem: metric must be size x size");
        for (const auto& row : metric)
            if (row.size() != static_cast<std::size_t>(size))
                throw ParseError("FiniteSystem: metric must be size x size");
        for (int i = 0; i < size; ++i) {
            if (metric[i][i] != 0) throw ParseError("FiniteSystem: metric diagonal must be zero");
            for (int j = 0; j < size; ++j) {
                if (!(metric[i][j] >= 0)) throw ParseError("FiniteSystem: metric must be >= 0");
                if (metric[i][j] != metric[j][i])
                    throw ParseError("FiniteSystem: metric must be symmetric");
            }
        }
        for (int i = 0; i < size; ++i)
            for (int j = 0; j < size; ++j)
                for (int l = 0; l < size; ++l)
                    if (metric[i][j] > metric[i][l] + metric[l][j] + 1e-15)
                        throw ParseError("FiniteSystem: triangle inequality fails");
    }
};

struct RPCertificate {
    TorusPoint x, y;    // the certified pair
    double delta = 0;
    TorusPoint xp, yp;  // witnesses
    std::vector<std::int64_t> n;
};

struct RPSearchBounds {
    int k = 1;
    double delta = 0;
    std::int64_t n_bound = 0;
    std::int64_t grid = 1;
};

// NoWitnessFound is the empty-certificate value, not an exception: a bounded
// search that comes up dry proves nothing. The impossibility flag is set only
// when a conserved quantity rules every certificate out.
struct RPTorusResult {
    std::optional<RPCertificate> certificate;
    RPSearchBounds bounds;
    bool impossible = false;
    std::string note;
};

inline TorusPoint iterate(const SkewSpec& spec, TorusPoint p, std::int64_t m) {
    if (m >= 0)
        for (std::int64_t i = 0; i < m; ++i) step_inplace(spec, p);
    else
        for (std::int64_t i = 0; i < -m; ++i) step_inverse_inplace(spec, p);
    return p;
}

// Checks a certificate against the definition from scratch.
inline bool validate_certificate(const SkewSpec& spec, const RPCertificate& cert) {
    if (cert.x.dim() != spec.dim() || cert.y.dim() != spec.dim() ||
        cert.xp.dim() != spec.dim() || cert.yp.dim() != spec.dim())
        return false;
    if (cert.n.empty() || !(cert.delta > 0)) return false;
    if (!(torus_distance(cert.x, cert.xp) < cert.delta)) return false;
    if (!(torus_distance(cert.y, cert.yp) < cert.delta)) return false;
    const int k = static_cast<int>(cert.n.size());
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
        std::int64_t m = 0;
        for (int b = 0; b < k; ++b)
            if (mask & (1u << b)) m += cert.n[static_cast<std::size_t>(b)];
        const TorusPoint a = iterate(spec, cert.xp, m);
        const TorusPoint bpt = iterate(spec, cert.yp, m);
        if (!(torus_distance(a, bpt) < cert.delta)) return false;
    }
    return true;
}

namespace detail {

// Exact t/grid as a fraction of the circle (t may be negative).
inline Frac128 grid_ratio(std::int64_t t, std::int64_t grid) {
    const bool neg = t < 0;
    u128 tt = static_cast<u128>(neg ? -t : t) % static_cast<u128>(grid);
    if (tt == 0) return Frac128{};
    const Frac128 r = Frac128::from_raw(mul_div_pow2_128(tt, static_cast<u128>(grid)));
    return neg ? -r : r;
}

// Scan order 0, 1, -1, 2, -2, ... up to +-limit: nearest candidates first.
inline std::vector<std::int64_t> centered_order(std::int64_t limit) {
    std::vector<std::int64_t> out{0};
    for (std::int64_t t = 1; t <= limit; ++t) {
        out.push_back(t);
        out.push_back(-t);
    }
    return out;
}

// All nonempty-subset sums of n, deduplicated.
inline std::vector<std::int64_t> subset_sums(const std::vector<std::int64_t>& n) {
    std::set<std::int64_t> sums;
    const int k = static_cast<int>(n.size());
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
        std::int64_t m = 0;
        for (int b = 0; b < k; ++b)
            if (mask & (1u << b)) m += n[static_cast<std::size_t>(b)];
        sums.insert(m);
    }
    return {sums.begin(), sums.end()};
}

}  // namespace detail

// Deterministic witness search: witnesses move on a pitch-1/grid lattice
// around each point (only offsets below delta, so the anchor conditions hold
// by construction), n runs over the centered box. First hit is re-validated
// by direct iteration and returned. The base coordinate is a bare rotation,
// so the difference D = dist(x1 - y1) is conserved exactly; chaining the
// certificate inequalities through any witness pair forces D < 3 delta, and
// the search is skipped with the impossibility note when that fails.
inline RPTorusResult rp_certify_torus(const SkewSpec& spec, const TorusPoint& x,
                                      const TorusPoint& y, int k, double delta,
                                      std::int64_t n_bound, std::int64_t grid) {
    if (k < 1 || k > 2) throw BadIndex("rp_certify_torus: k must be 1 or 2");
    if (!(delta > 0)) throw BadIndex("rp_certify_torus: delta must be positive");
    if (n_bound < 0) throw BadIndex("rp_certify_torus: n_bound must be >= 0");
    if (grid < 1) throw BadIndex("rp_certify_torus: grid must be >= 1");
    if (x.dim() != spec.dim() || y.dim() != spec.dim())
        throw BadIndex("rp_certify_torus: point dimension mismatch");
    spec.validate();

    RPTorusResult result;
    result.bounds = RPSearchBounds{k, delta, n_bound, grid};

    const double D = dist_to_int(x.x[0] - y.x[0]);
    if (D >= 3.0 * delta) {
        result.impossible = true;
        result.note =
            "base coordinate difference " + std::to_string(D) +
            " is conserved by every step; a certificate would force it below 3*delta = " +
            std::to_string(3.0 * delta);
        return result;
    }

    std::int64_t T = static_cast<std::int64_t>(std::ceil(delta * static_cast<double>(grid))) - 1;
    while (T >= 0 && static_cast<double>(T) / static_cast<double>(grid) >= delta) --T;
    if (T < 0) T = 0;
    if (T >= grid) T = grid - 1;
    const auto offsets = detail::centered_order(T);
    const auto n_values = detail::centered_order(n_bound);
    const std::size_t d = spec.dim();
    const std::int64_t B = static_cast<std::int64_t>(k) * n_bound;

    // odometer over the offset choices for both witnesses (2d digits)
    std::vector<std::size_t> digit(2 * d, 0);
    std::vector<double> dist_table(static_cast<std::size_t>(2 * B + 1), 0.0);
    while (true) {
        TorusPoint xp = x, yp = y;
        for (std::size_t c = 0; c < d; ++c) {
            xp.x[c] = xp.x[c] + detail::grid_ratio(offsets[digit[c]], grid);
            yp.x[c] = yp.x[c] + detail::grid_ratio(offsets[digit[d + c]], grid);
        }
        {
            TorusPoint a = xp, b = yp;
            dist_table[static_cast<std::size_t>(B)] = torus_distance(a, b);
            for (std::int64_t m = 1; m <= B; ++m) {
                step_inplace(spec, a);
                step_inplace(spec, b);
                dist_table[static_cast<std::size_t>(B + m)] = torus_distance(a, b);
            }
            a = xp;
            b = yp;
            for (std::int64_t m = 1; m <= B; ++m) {
                step_inverse_inplace(spec, a);
                step_inverse_inplace(spec, b);
                dist_table[static_cast<std::size_t>(B - m)] = torus_distance(a, b);
            }
        }
        std::vector<std::int64_t> n(static_cast<std::size_t>(k), 0);
        std::vector<std::size_t> ndig(static_cast<std::size_t>(k), 0);
        while (true) {
            for (int b = 0; b < k; ++b) n[static_cast<std::size_t>(b)] = n_values[ndig[static_cast<std::size_t>(b)]];
            bool ok = true;
            for (const auto m : detail::subset_sums(n)) {
                if (!(dist_table[static_cast<std::size_t>(B + m)] < delta)) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                RPCertificate cert{x, y, delta, xp, yp, n};
                if (validate_certificate(spec, cert)) {
                    result.certificate = std::move(cert);
                    return result;
                }
            }
            std::size_t pos = 0;
            while (pos < ndig.size() && ++ndig[pos] == n_values.size()) ndig[pos++] = 0;
            if (pos == ndig.size()) break;
        }
        std::size_t pos = 0;
        while (pos < digit.size() && ++digit[pos] == offsets.size()) digit[pos++] = 0;
        if (pos == digit.size()) break;
    }
    return result;
}

// Exhaustive search on a finite metric system. Returns every ordered pair
// admitting a certificate at this delta with |n_i| <= n_bound.
inline std::set<std::pair<int, int>> rp_bruteforce_finite(const FiniteSystem& sys, int k,
                                                          double delta, std::int64_t n_bound) {
    if (k < 1) throw BadIndex("rp_bruteforce_finite: k must be >= 1");
    if (n_bound < 0) throw BadIndex("rp_bruteforce_finite: n_bound must be >= 0");
    if (sys.size > 64 || k > 3 || n_bound > 32)
        throw ComplexityGuard("rp_bruteforce_finite: limits are size <= 64, k <= 3, n_bound <= 32");
    sys.validate();
    const int N = sys.size;
    const std::int64_t B = static_cast<std::int64_t>(k) * n_bound;

    // permutation powers sigma^m for m in [-B, B]
    std::vector<std::vector<int>> pow(static_cast<std::size_t>(2 * B + 1),
                                      std::vector<int>(static_cast<std::size_t>(N)));
    std::vector<int> inv(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i) inv[static_cast<std::size_t>(sys.map[static_cast<std::size_t>(i)])] = i;
    for (int i = 0; i < N; ++i) pow[static_cast<std::size_t>(B)][static_cast<std::size_t>(i)] = i;
    for (std::int64_t m = 1; m <= B; ++m) {
        for (int i = 0; i < N; ++i) {
            pow[static_cast<std::size_t>(B + m)][static_cast<std::size_t>(i)] =
                sys.map[static_cast<std::size_t>(pow[static_cast<std::size_t>(B + m - 1)][static_cast<std::size_t>(i)])];
            pow[static_cast<std::size_t>(B - m)][static_cast<std::size_t>(i)] =
                inv[static_cast<std::size_t>(pow[static_cast<std::size_t>(B - m + 1)][static_cast<std::size_t>(i)])];
        }
    }

    // which witness pairs admit a valid n: recursive choice with pruning on
    // every subset sum that becomes determined
    std::vector<std::uint64_t> witness_for(static_cast<std::size_t>(N), 0);  // a -> bitmask of b
    std::vector<char> ok(static_cast<std::size_t>(2 * B + 1));
    std::vector<std::int64_t> chosen(static_cast<std::size_t>(k));
    for (int a = 0; a < N; ++a) {
        for (int b = 0; b < N; ++b) {
            for (std::int64_t m = -B; m <= B; ++m)
                ok[static_cast<std::size_t>(B + m)] =
                    sys.metric[static_cast<std::size_t>(pow[static_cast<std::size_t>(B + m)][static_cast<std::size_t>(a)])]
                              [static_cast<std::size_t>(pow[static_cast<std::size_t>(B + m)][static_cast<std::size_t>(b)])] < delta;
            // depth-first over n_1..n_k; at depth t test all subsets whose
            // top element is t (their sums are now fixed)
            auto search = [&](auto&& self, int t) -> bool {
                if (t == k) return true;
                for (std::int64_t v = -n_bound; v <= n_bound; ++v) {
                    chosen[static_cast<std::size_t>(t)] = v;
                    bool good = true;
                    for (unsigned mask = 0; mask < (1u << t) && good; ++mask) {
                        std::int64_t m = v;
                        for (int bit = 0; bit < t; ++bit)
                            if (mask & (1u << bit)) m += chosen[static_cast<std::size_t>(bit)];
                        if (!ok[static_cast<std::size_t>(B + m)]) good = false;
                    }
                    if (good && self(self, t + 1)) return true;
                }
                return false;
            };
            if (search(search, 0)) witness_for[static_cast<std::size_t>(a)] |= (1ull << b);
        }
    }

    // near[x] = witnesses within delta of x
    std::vector<std::uint64_t> near(static_cast<std::size_t>(N), 0);
    for (int xx = 0; xx < N; ++xx)
        for (int a = 0; a < N; ++a)
            if (sys.metric[static_cast<std::size_t>(xx)][static_cast<std::size_t>(a)] < delta)
                near[static_cast<std::size_t>(xx)] |= (1ull << a);

    std::set<std::pair<int, int>> pairs;
    for (int xx = 0; xx < N; ++xx) {
        for (int yy = 0; yy < N; ++yy) {
            bool found = false;
            std::uint64_t cands = near[static_cast<std::size_t>(xx)];
            while (cands && !found) {
                const int a = __builtin_ctzll(cands);
                cands &= cands - 1;
                if (witness_for[static_cast<std::size_t>(a)] & near[static_cast<std::size_t>(yy)]) found = true;
            }
            if (found) pairs.emplace(xx, yy);
        }
    }
    return pairs;
}

// Projects a certificate on an interleaved product onto both factors: the
// witnesses split coordinatewise, the vector n is shared verbatim. Both
// projections are re-validated by direct iteration before returning.
inline std::pair<RPCertificate, RPCertificate> rp_product_project(const SkewSpec& product,
                                                                  const RPCertificate& cert) {
    const auto factors = split_interleaved(product);
    if (cert.x.dim() != product.dim() || cert.y.dim() != product.dim() ||
        cert.xp.dim() != product.dim() || cert.yp.dim() != product.dim())
        throw NotAProduct("rp_product_project: certificate dimension mismatch");
    auto pick = [](const TorusPoint& p, bool odd_half) {
        TorusPoint out;
        for (std::size_t c = odd_half ? 1 : 2; c <= p.dim(); c += 2)
            out.x.push_back(p.x[c - 1]);
        return out;
    };
    RPCertificate ca{pick(cert.x, true), pick(cert.y, true), cert.delta,
                     pick(cert.xp, true), pick(cert.yp, true), cert.n};
    RPCertificate cb{pick(cert.x, false), pick(cert.y, false), cert.delta,
                     pick(cert.xp, false), pick(cert.yp, false), cert.n};
    if (!validate_certificate(factors.first, ca) || !validate_certificate(factors.second, cb))
        throw Error("rp_product_project: projected certificate failed re-validation");
    return {std::move(ca), std::move(cb)};
}

}  // namespace skewlab
