#pragma once

// The truncated coboundary chain (f, G_1, ..., G_L): the first element has
// coefficients 1/|r| on the selected frequencies +-n_r, every deeper element
// divides by the divisor e(n alpha) - 1 once more, and f multiplies by it.
// Then f = G_1 o T_alpha - G_1 and G_{i-1} = G_i o T_alpha - G_i termwise.

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "skewlab/errors.hpp"
#include "skewlab/frac128.hpp"
#include "skewlab/sparse_series.hpp"
#include "skewlab/subsequence.hpp"

namespace skewlab {

struct CoboundaryChain {
    Frac128 alpha;
    Subsequence subseq;
    SparseSeries f;
    std::vector<SparseSeries> G;  // G[i] holds G_{i+1}
};

inline CoboundaryChain build_chain(const Subsequence& subseq, Frac128 alpha, int L) {
    if (L < 1) throw BadIndex("build_chain: L must be >= 1");
    CoboundaryChain chain;
    chain.alpha = alpha;
    chain.subseq = subseq;
    chain.f = SparseSeries("f");
    chain.G.reserve(static_cast<std::size_t>(L));
    for (int i = 1; i <= L; ++i) chain.G.emplace_back("G" + std::to_string(i));

    for (const auto& entry : subseq.entries) {
        const double theta = frac_mul(entry.n, alpha).to_double();
        const std::complex<double> divisor = circle_exp(theta) - 1.0;
        if (std::abs(divisor) < 1e-30)
            throw DivisorUnderflow("build_chain: |e(n alpha) - 1| < 1e-30 at n = " +
                                   std::to_string(entry.n));
        const double g1 = 1.0 / static_cast<double>(entry.r);
        chain.f.set_coeff(entry.n, divisor * g1);
        chain.f.set_coeff(-entry.n, std::conj(divisor * g1));
        std::complex<double> gi(g1, 0.0);
        for (int i = 0; i < L; ++i) {
            chain.G[static_cast<std::size_t>(i)].set_coeff(entry.n, gi);
            chain.G[static_cast<std::size_t>(i)].set_coeff(-entry.n, std::conj(gi));
            gi /= divisor;
        }
    }

    // Construction is the identity; fail loudly if rounding ever breaks it.
    for (const auto& t : chain.f.terms()) {
        const double theta = frac_mul(t.n, alpha).to_double();
        const std::complex<double> divisor = circle_exp(theta) - 1.0;
        if (std::abs(t.c - divisor * chain.G[0].coeff(t.n)) >= 1e-12)
            throw Error("build_chain: coefficient identity residual >= 1e-12");
        for (int i = 1; i < L; ++i) {
            const auto lhs = chain.G[static_cast<std::size_t>(i - 1)].coeff(t.n);
            const auto rhs = divisor * chain.G[static_cast<std::size_t>(i)].coeff(t.n);
            if (std::abs(lhs - rhs) >= 1e-12)
                throw Error("build_chain: chain link residual >= 1e-12");
        }
    }
    return chain;
}

// f restricted to the first M subsequence entries (truncation is by entry
// count, not by a frequency cutoff).
inline SparseSeries truncated_f(const CoboundaryChain& chain, std::size_t M) {
    if (M > chain.subseq.entries.size())
        throw BadIndex("truncated_f: M exceeds the number of entries");
    SparseSeries out("f[" + std::to_string(M) + "]");
    for (std::size_t i = 0; i < M; ++i) {
        const auto n = chain.subseq.entries[i].n;
        out.set_coeff(n, chain.f.coeff(n));
        out.set_coeff(-n, chain.f.coeff(-n));
    }
    return out;
}

// Same truncation for a chain element (1-based level: 1 -> G_1).
inline SparseSeries truncated_G(const CoboundaryChain& chain, int level, std::size_t M) {
    if (level < 1 || level > static_cast<int>(chain.G.size()))
        throw BadIndex("truncated_G: level out of range");
    if (M > chain.subseq.entries.size())
        throw BadIndex("truncated_G: M exceeds the number of entries");
    const auto& g = chain.G[static_cast<std::size_t>(level - 1)];
    SparseSeries out("G" + std::to_string(level) + "[" + std::to_string(M) + "]");
    for (std::size_t i = 0; i < M; ++i) {
        const auto n = chain.subseq.entries[i].n;
        out.set_coeff(n, g.coeff(n));
        out.set_coeff(-n, g.coeff(-n));
    }
    return out;
}

// Truncated G_1 at x = 0: the first M entries contribute 2/r each. Grows like
// 2 ln(M), the desk-scale signature that the untruncated solution is
// unbounded.
inline std::vector<std::pair<std::int64_t, double>> sup_growth_probe(
    const CoboundaryChain& chain, const std::vector<std::int64_t>& truncations) {
    for (std::size_t i = 1; i < truncations.size(); ++i)
        if (truncations[i] <= truncations[i - 1])
            throw BadIndex("sup_growth_probe: truncations must increase");
    std::vector<std::pair<std::int64_t, double>> out;
    out.reserve(truncations.size());
    for (const auto M : truncations) {
        if (M < 0 || static_cast<std::size_t>(M) > chain.subseq.entries.size())
            throw BadIndex("sup_growth_probe: truncation out of range");
        double v = 0;
        for (std::int64_t i = 0; i < M; ++i)
            v += 2.0 / static_cast<double>(chain.subseq.entries[static_cast<std::size_t>(i)].r);
        out.emplace_back(M, v);
    }
    return out;
}

// Mean of the symmetric partial sums s_m = sum_{|n| <= m} G_1^(n) at x = 0
// for m = 1..N. Each selected frequency pair contributes 2/r from m = n_r on:
// (1/N) sum_r (2/r) max(0, N - n_r + 1). Unbounded in N exactly when the
// partial sums diverge, certifying that no continuous solution exists.
inline double cesaro_at_zero(const CoboundaryChain& chain, std::int64_t N) {
    if (N < 1) throw BadIndex("cesaro_at_zero: N must be >= 1");
    double acc = 0;
    for (const auto& entry : chain.subseq.entries) {
        if (entry.n <= N)
            acc += 2.0 / static_cast<double>(entry.r) * static_cast<double>(N - entry.n + 1);
    }
    return acc / static_cast<double>(N);
}

}  // namespace skewlab
