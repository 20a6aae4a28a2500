#pragma once

// Numerical checks: orbit averages of torus characters (the falsifiable
// stand-in for unique ergodicity at finite time), and max-over-samples
// residuals for the coboundary, conjugacy, eigenfunction, and commutation
// identities. All sampling is deterministic (low-discrepancy points).

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "skewlab/chain.hpp"
#include "skewlab/errors.hpp"
#include "skewlab/frac128.hpp"
#include "skewlab/halton.hpp"
#include "skewlab/skew_spec.hpp"
#include "skewlab/sparse_series.hpp"
#include "skewlab/torus_point.hpp"

namespace skewlab {

struct Character {
    std::vector<std::int64_t> m;

    bool trivial() const {
        for (auto v : m)
            if (v != 0) return false;
        return true;
    }

    std::string label() const {
        std::string s = "(";
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(m[i]);
        }
        return s + ")";
    }
};

// e(m . x), with the inner product accumulated exactly mod 1.
inline std::complex<double> char_value(const Character& chi, const TorusPoint& p) {
    if (chi.m.size() != p.dim()) throw BadIndex("char_value: dimension mismatch");
    Frac128 t{};
    for (std::size_t i = 0; i < p.dim(); ++i)
        if (chi.m[i] != 0) t = t + p.x[i].times(chi.m[i]);
    return circle_exp(t.to_double());
}

// (1/N) sum_{i=0}^{N-1} e(m . T^i x0), accumulated in one orbit pass.
inline std::complex<double> birkhoff_average(const SkewSpec& spec, const Character& chi,
                                             const TorusPoint& x0, std::int64_t N) {
    if (N < 1) throw BadIndex("birkhoff_average: N must be >= 1");
    struct Acc {
        const Character* chi;
        std::int64_t N;
        std::complex<double> sum{0.0, 0.0};
        void operator()(std::int64_t i, const TorusPoint& p) {
            if (i < N) sum += char_value(*chi, p);
        }
    };
    auto acc = orbit_fold(spec, x0, N - 1, Acc{&chi, N});
    return acc.sum / static_cast<double>(N);
}

struct ErgodicityRow {
    Character chi;
    TorusPoint start;
    std::vector<std::complex<double>> averages;  // one per checkpoint
    double slope = 0.0;  // least-squares slope of log|avg| against log N
};

struct ErgodicityReport {
    std::vector<std::int64_t> checkpoints;
    std::vector<ErgodicityRow> rows;     // character-major, then start
    std::vector<double> spread;          // per character, at the final checkpoint
    double max_abs_final = 0.0;          // nontrivial characters only
    double max_spread = 0.0;

    void validate() const {
        for (std::size_t i = 1; i < checkpoints.size(); ++i)
            if (checkpoints[i] <= checkpoints[i - 1])
                throw BadIndex("ErgodicityReport: checkpoints must increase");
        for (double s : spread)
            if (!(s >= 0)) throw BadIndex("ErgodicityReport: spread must be >= 0");
    }
};

namespace detail {

inline double fit_log_slope(const std::vector<std::int64_t>& ns,
                            const std::vector<std::complex<double>>& avgs) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        const double a = std::abs(avgs[i]);
        if (a <= 0) continue;
        const double x = std::log(static_cast<double>(ns[i]));
        const double y = std::log(a);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++cnt;
    }
    if (cnt < 2) return 0.0;
    const double denom = cnt * sxx - sx * sx;
    if (denom == 0) return 0.0;
    return (cnt * sxy - sx * sy) / denom;
}

}  // namespace detail

// Runs every character along every start in a single orbit pass per start,
// snapshotting the running averages at each checkpoint. The spread per
// character is the max pairwise average difference across starts at the
// final checkpoint; a uniquely ergodic system drives it to zero.
inline ErgodicityReport unique_ergodicity_probe(const SkewSpec& spec,
                                                const std::vector<Character>& chars,
                                                const std::vector<TorusPoint>& starts,
                                                const std::vector<std::int64_t>& checkpoints) {
    if (starts.size() < 2) throw BadIndex("unique_ergodicity_probe: need at least 2 starts");
    if (chars.empty()) throw BadIndex("unique_ergodicity_probe: need at least 1 character");
    if (checkpoints.empty()) throw BadIndex("unique_ergodicity_probe: need checkpoints");
    ErgodicityReport report;
    report.checkpoints = checkpoints;
    report.validate();
    const std::int64_t final_n = checkpoints.back();
    if (final_n < 1) throw BadIndex("unique_ergodicity_probe: final checkpoint must be >= 1");

    // per start: one pass, all characters at once
    std::vector<std::vector<std::vector<std::complex<double>>>> avgs(
        chars.size(), std::vector<std::vector<std::complex<double>>>(starts.size()));
    for (std::size_t s = 0; s < starts.size(); ++s) {
        struct Acc {
            const std::vector<Character>* chars;
            const std::vector<std::int64_t>* checkpoints;
            std::vector<std::complex<double>> sums;
            std::vector<std::vector<std::complex<double>>> snaps;  // per char
            std::size_t next = 0;
            void operator()(std::int64_t i, const TorusPoint& p) {
                // snapshot covers the first N points, so it fires before adding point i=N
                while (next < checkpoints->size() && i == (*checkpoints)[next]) {
                    for (std::size_t c = 0; c < sums.size(); ++c)
                        snaps[c].push_back(sums[c] / static_cast<double>(i));
                    ++next;
                }
                for (std::size_t c = 0; c < sums.size(); ++c)
                    sums[c] += char_value((*chars)[c], p);
            }
        };
        Acc init{&chars, &checkpoints, {}, {}, 0};
        init.sums.assign(chars.size(), {0.0, 0.0});
        init.snaps.assign(chars.size(), {});
        auto acc = orbit_fold(spec, starts[s], final_n, std::move(init));
        for (std::size_t c = 0; c < chars.size(); ++c) avgs[c][s] = std::move(acc.snaps[c]);
    }

    for (std::size_t c = 0; c < chars.size(); ++c) {
        double spread = 0;
        for (std::size_t s1 = 0; s1 < starts.size(); ++s1) {
            for (std::size_t s2 = s1 + 1; s2 < starts.size(); ++s2)
                spread = std::max(spread, std::abs(avgs[c][s1].back() - avgs[c][s2].back()));
            ErgodicityRow row;
            row.chi = chars[c];
            row.start = starts[s1];
            row.averages = avgs[c][s1];
            row.slope = detail::fit_log_slope(checkpoints, row.averages);
            if (!chars[c].trivial())
                report.max_abs_final = std::max(report.max_abs_final, std::abs(row.averages.back()));
            report.rows.push_back(std::move(row));
        }
        report.spread.push_back(spread);
        report.max_spread = std::max(report.max_spread, spread);
    }
    return report;
}

// Max over low-discrepancy samples of the defining identity of the chain:
// f = G1 o T - G1 and each deeper link, evaluated pointwise.
inline double coboundary_residual(const CoboundaryChain& chain, std::int64_t samples) {
    if (samples < 1) throw BadIndex("coboundary_residual: samples must be >= 1");
    double worst = 0;
    for (std::int64_t i = 1; i <= samples; ++i) {
        const Frac128 x = halton1(i);
        const Frac128 xa = x + chain.alpha;
        double r = std::abs(eval(chain.f, x) - eval(chain.G[0], xa) + eval(chain.G[0], x));
        worst = std::max(worst, r);
        for (std::size_t g = 1; g < chain.G.size(); ++g) {
            r = std::abs(eval(chain.G[g - 1], x) - eval(chain.G[g], xa) + eval(chain.G[g], x));
            worst = std::max(worst, r);
        }
    }
    return worst;
}

// Max over samples of the conjugation defect: straighten-then-step vs
// step-then-straighten.
inline double conjugacy_residual(const SkewSpec& specT, const SkewSpec& specS,
                                 const TriangularConjugacy& pi, std::int64_t samples) {
    if (specT.dim() != specS.dim()) throw BadIndex("conjugacy_residual: dimension mismatch");
    if (samples < 1) throw BadIndex("conjugacy_residual: samples must be >= 1");
    double worst = 0;
    for (std::int64_t i = 1; i <= samples; ++i) {
        const TorusPoint p(halton_point(i, specT.dim()));
        const TorusPoint lhs = apply_pi(pi, step(specT, p));
        const TorusPoint rhs = step(specS, apply_pi(pi, p));
        worst = std::max(worst, torus_distance(lhs, rhs));
    }
    return worst;
}

// phi(p) = e(n p1 + m p2 - m F(p1)) against lambda = e(n alpha + m beta),
// where alpha is the system's base rotation. When m = 0 the series part is
// skipped outright, so the result cannot depend on F_series.
inline double eigenfunction_residual(const SkewSpec& spec_R, std::int64_t n, std::int64_t m,
                                     const SparseSeries& F_series, Frac128 beta,
                                     std::int64_t samples = 10000) {
    if (spec_R.dim() < 2) throw BadIndex("eigenfunction_residual: need dimension >= 2");
    if (samples < 1) throw BadIndex("eigenfunction_residual: samples must be >= 1");
    const Frac128 alpha = spec_R.updates[0].constant;
    const Frac128 lam_angle = alpha.times(n) + beta.times(m);
    const std::complex<double> lambda = circle_exp(lam_angle.to_double());
    auto phi = [&](const TorusPoint& p) {
        const Frac128 lin = p.x[0].times(n) + p.x[1].times(m);
        double angle = lin.to_double();
        if (m != 0) angle -= static_cast<double>(m) * eval(F_series, p.x[0]);
        return circle_exp(angle);
    };
    double worst = 0;
    for (std::int64_t i = 1; i <= samples; ++i) {
        const TorusPoint p(halton_point(i, spec_R.dim()));
        worst = std::max(worst, std::abs(phi(step(spec_R, p)) - lambda * phi(p)));
    }
    return worst;
}

// Max over samples of the distance between the two composition orders.
inline double commutation_residual(const SkewSpec& specA, const SkewSpec& specB,
                                   std::int64_t samples) {
    if (specA.dim() != specB.dim()) throw BadIndex("commutation_residual: dimension mismatch");
    if (samples < 1) throw BadIndex("commutation_residual: samples must be >= 1");
    double worst = 0;
    for (std::int64_t i = 1; i <= samples; ++i) {
        const TorusPoint p(halton_point(i, specA.dim()));
        const TorusPoint ab = step(specA, step(specB, p));
        const TorusPoint ba = step(specB, step(specA, p));
        worst = std::max(worst, torus_distance(ab, ba));
    }
    return worst;
}

}  // namespace skewlab
