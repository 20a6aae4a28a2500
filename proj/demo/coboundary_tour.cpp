// Walks the central construction once with printed numbers: pick a frequency
// band, solve the difference equation truncation by truncation, then show the
// two competing behaviors (uniform convergence of the sums, divergence of the
// solution) side by side.
#include <cstdio>

#include "skewlab/skewlab.hpp"

using namespace skewlab;

int main() {
    const Frac128 alpha = Frac128::golden();
    const double eps = 0.24;

    auto sub = select_subsequence(alpha, eps, 200);
    std::printf("band selection: eps=%.3f, first index r0=%lld\n", eps,
                static_cast<long long>(sub.r0));
    for (int i = 0; i < 4; ++i)
        std::printf("  r=%lld  n=%lld  dist(n*alpha)=%.6f\n",
                    static_cast<long long>(sub.entries[static_cast<std::size_t>(i)].r),
                    static_cast<long long>(sub.entries[static_cast<std::size_t>(i)].n),
                    sub.entries[static_cast<std::size_t>(i)].dist);

    auto chain = build_chain(sub, alpha, 2);
    std::printf("\nchain built: %zu levels, f support %zu\n", chain.G.size(),
                chain.f.support_size());
    std::printf("identity residual over 2000 points: %.3g\n",
                coboundary_residual(chain, 2000));
    std::printf("|f| coefficient sum: %.6f   ||G1||: %.6f   ||G2||: %.6f\n",
                abs_coeff_sum(chain.f), l2_norm(chain.G[0]), l2_norm(chain.G[1]));

    std::printf("\nuniform convergence of the truncated series:\n");
    for (std::size_t m : {50, 100, 200}) {
        auto fm = truncated_f(chain, m);
        double sup = 0;
        for (int i = 1; i <= 500; ++i) {
            const Frac128 x = halton1(static_cast<std::uint64_t>(i));
            sup = std::max(sup, std::abs(eval(chain.f, x) - eval(fm, x)));
        }
        std::printf("  M=%3zu  sup |f - f_M| over 500 points = %.6f\n", m, sup);
    }

    std::printf("\ndivergence of the solution at 0:\n");
    auto growth = sup_growth_probe(chain, {25, 50, 100, 200});
    for (const auto& [m, v] : growth)
        std::printf("  M=%3lld  G1 truncation at 0 = %.4f\n", static_cast<long long>(m), v);
    for (std::int64_t n : {100, 1000, 10000})
        std::printf("  N=%5lld  averaged partial sums at 0 = %.4f\n", static_cast<long long>(n),
                    cesaro_at_zero(chain, n));
    std::printf("\nthe sums converge uniformly while the solution is unbounded:\n"
                "the limit is a measurable coboundary with no continuous version.\n");
    return 0;
}
