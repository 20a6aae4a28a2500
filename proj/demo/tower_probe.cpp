// Builds the skew towers, checks the straightening map and an eigenfunction
// numerically, then runs the proximality search on a same-fiber pair.
#include <cstdio>

#include "skewlab/skewlab.hpp"

using namespace skewlab;

int main() {
    const Frac128 alpha = Frac128::golden();
    const Frac128 beta = Frac128::sqrt2m1();
    auto chain = build_chain(select_subsequence(alpha, 0.0625, 50), alpha, 3);

    auto T = build_series_tower(3, 1, chain.f, alpha);
    auto S = build_plain_tower(3, alpha);
    TriangularConjugacy pi{1, {chain.G[0], chain.G[1]}};
    std::printf("straightening residual (series tower vs plain): %.3g\n",
                conjugacy_residual(T, S, pi, 5000));

    auto R = build_twisted_tower(3, chain.f, alpha, beta);
    std::printf("eigenfunction residual at (n,m)=(1,1): %.3g\n",
                eigenfunction_residual(R, 1, 1, chain.G[0], beta, 5000));

    std::vector<TorusPoint> starts;
    for (int i = 1; i <= 3; ++i)
        starts.emplace_back(halton_point(static_cast<std::uint64_t>(i), 2));
    auto rep = unique_ergodicity_probe(build_plain_tower(2, alpha),
                                       {Character{{1, 0}}, Character{{0, 1}}}, starts,
                                       {1000, 10000, 100000});
    std::printf("character averages at N=1e5: worst |avg|=%.5f, cross-start spread=%.5f\n",
                rep.max_abs_final, rep.max_spread);

    const TorusPoint x(std::vector<Frac128>(2));
    const TorusPoint y(std::vector<Frac128>{Frac128(), Frac128::from_decimal("0.3")});
    auto res = rp_certify_torus(build_plain_tower(2, alpha), x, y, 1, 0.05, 16, 40);
    if (res.certificate) {
        std::printf("same-fiber pair certified: exponent n=%lld, witnesses within delta=%.2f\n",
                    static_cast<long long>(res.certificate->n[0]), res.certificate->delta);
    } else {
        std::printf("no certificate: %s\n", res.note.c_str());
    }
    return 0;
}
