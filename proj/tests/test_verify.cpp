#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "skewlab/chain.hpp"
#include "skewlab/halton.hpp"
#include "skewlab/verify.hpp"

using namespace skewlab;

namespace {
const Frac128 kAlpha = Frac128::golden();
const Frac128 kBeta = Frac128::sqrt2m1();

CoboundaryChain fine_chain() {
    static const CoboundaryChain chain =
        build_chain(select_subsequence(kAlpha, 0.0625, 50), kAlpha, 3);
    return chain;
}

std::vector<TorusPoint> halton_starts(int count, int dim) {
    std::vector<TorusPoint> v;
    for (int i = 1; i <= count; ++i)
        v.emplace_back(halton_point(static_cast<std::uint64_t>(i), dim));
    return v;
}
}  // namespace

TEST_CASE("characters evaluate exactly on torus points", "[verify]") {
    Character chi{{2, -1}};
    REQUIRE_FALSE(chi.trivial());
    REQUIRE(Character{{0, 0}}.trivial());
    TorusPoint p(std::vector<Frac128>{Frac128::from_decimal("0.25"), Frac128::from_decimal("0.5")});
    // 2*(1/4) - 1*(1/2) = 0, so the character value is 1.
    REQUIRE(std::abs(char_value(chi, p) - std::complex<double>(1, 0)) < 1e-15);
    REQUIRE_THROWS_AS(char_value(chi, TorusPoint(std::vector<Frac128>(3))), BadIndex);
}

TEST_CASE("quadratic Birkhoff average matches an independent recomputation", "[verify]") {
    auto S = build_plain_tower(2, kAlpha);
    const auto avg =
        birkhoff_average(S, Character{{0, 1}}, TorusPoint(std::vector<Frac128>(2)), 100000);
    // Same sum from the closed form x2(i) = i(i-1)/2 alpha in long double.
    const long double al = 0.6180339887498948482045868343656381177203L;
    long double sre = 0, sim = 0;
    for (long long i = 0; i < 100000; ++i) {
        long double y = (static_cast<long double>(i) * (i - 1) / 2) * al;
        y -= std::floor(y);
        sre += std::cos(2.0L * static_cast<long double>(M_PI) * y);
        sim += std::sin(2.0L * static_cast<long double>(M_PI) * y);
    }
    const double indep = static_cast<double>(std::sqrt(sre * sre + sim * sim) / 100000.0L);
    REQUIRE(std::abs(avg) == Catch::Approx(indep).margin(1e-9));
    REQUIRE(std::abs(avg) == Catch::Approx(0.00440673).margin(1e-7));
    REQUIRE(std::abs(avg) <= 0.02);
}

TEST_CASE("rotation spread stays under the geometric-sum bound", "[verify]") {
    auto rot = build_plain_tower(1, kAlpha);
    std::vector<TorusPoint> starts{TorusPoint(std::vector<Frac128>(1)),
                                   TorusPoint(std::vector<Frac128>{Frac128::from_decimal("0.25")})};
    auto rep = unique_ergodicity_probe(rot, {Character{{1}}}, starts, {100000});
    const double bound =
        2.0 * (2.0 / (100000.0 * std::abs(circle_exp(kAlpha.to_double()) - std::complex<double>(1, 0))));
    REQUIRE(rep.max_spread <= bound);
    REQUIRE(rep.rows.size() == 2);
}

TEST_CASE("series tower averages decay across starts", "[verify][slow]") {
    auto chain = build_chain(select_subsequence(kAlpha, 0.125, 10), kAlpha, 1);
    auto T = build_series_tower(2, 1, chain.f, kAlpha);
    auto rep = unique_ergodicity_probe(T, {Character{{1, 0}}, Character{{0, 1}}},
                                       halton_starts(5, 2), {10000, 100000, 1000000});
    REQUIRE(rep.max_abs_final <= 0.01);
    REQUIRE(rep.max_spread <= 0.02);
    REQUIRE(rep.rows.size() == 10);
    // Any cross-start spread is at most twice the worst single-orbit average.
    double worst = 0;
    for (const auto& row : rep.rows)
        worst = std::max(worst, std::abs(row.averages.back()));
    REQUIRE(rep.max_spread <= 2.0 * worst + 1e-15);
    // Averages of nontrivial characters shrink with N on every row.
    for (const auto& row : rep.rows) REQUIRE(row.slope < 0.0);
    REQUIRE_NOTHROW(rep.validate());
}

TEST_CASE("probe argument validation", "[verify]") {
    auto S = build_plain_tower(2, kAlpha);
    REQUIRE_THROWS_AS(
        unique_ergodicity_probe(S, {Character{{1, 0}}}, halton_starts(1, 2), {100}), BadIndex);
    REQUIRE_THROWS_AS(unique_ergodicity_probe(S, {}, halton_starts(2, 2), {100}), BadIndex);
    REQUIRE_THROWS_AS(unique_ergodicity_probe(S, {Character{{1, 0}}}, halton_starts(2, 2), {}),
                      BadIndex);
}

TEST_CASE("coboundary residual is tiny for a real chain", "[verify]") {
    REQUIRE(coboundary_residual(fine_chain(), 10000) < 1e-9);
    REQUIRE_THROWS_AS(coboundary_residual(fine_chain(), 0), BadIndex);
}

TEST_CASE("a perturbed coefficient is detected", "[verify]") {
    auto chain = fine_chain();
    const std::int64_t n0 = chain.subseq.entries[0].n;
    chain.G[0].set_coeff(n0, chain.G[0].coeff(n0) + std::complex<double>(1e-3, 0));
    const double res = coboundary_residual(chain, 10000);
    REQUIRE(res >= 1e-4);
    REQUIRE(res == Catch::Approx(2e-3).epsilon(0.05));
}

TEST_CASE("refining the chain keeps the identity tight", "[verify]") {
    for (std::int64_t count : {10, 25, 50}) {
        auto chain = build_chain(select_subsequence(kAlpha, 0.0625, count), kAlpha, 3);
        REQUIRE(coboundary_residual(chain, 2000) < 1e-9);
    }
}

TEST_CASE("straightening conjugates the series tower to the plain one", "[verify]") {
    auto chain = fine_chain();
    auto T = build_series_tower(3, 1, chain.f, kAlpha);
    auto S = build_plain_tower(3, kAlpha);
    TriangularConjugacy pi{1, {chain.G[0], chain.G[1]}};
    REQUIRE(conjugacy_residual(T, S, pi, 10000) < 1e-9);
}

TEST_CASE("a wrong straightening map is flagged", "[verify]") {
    auto chain = fine_chain();
    auto T = build_series_tower(3, 1, chain.f, kAlpha);
    auto S = build_plain_tower(3, kAlpha);
    TriangularConjugacy rev{1, {chain.G[1], chain.G[0]}};
    const double res = conjugacy_residual(T, S, rev, 10000);
    REQUIRE(res >= 1e-3);
    REQUIRE(res == Catch::Approx(0.499277).margin(1e-4));
}

TEST_CASE("eigenfunction residual vanishes for consistent data", "[verify]") {
    auto chain = fine_chain();
    auto R = build_twisted_tower(3, chain.f, kAlpha, kBeta);
    REQUIRE(eigenfunction_residual(R, 1, 1, chain.G[0], kBeta, 10000) < 1e-9);
}

TEST_CASE("base characters need no series correction", "[verify]") {
    auto chain = fine_chain();
    auto R = build_twisted_tower(3, chain.f, kAlpha, kBeta);
    REQUIRE(eigenfunction_residual(R, 3, 0, chain.G[0], kBeta, 10000) < 1e-12);
    // With m = 0 the series never enters: swapping it changes nothing at all.
    REQUIRE(eigenfunction_residual(R, 3, 0, chain.G[0], kBeta, 500) ==
            eigenfunction_residual(R, 3, 0, SparseSeries(), kBeta, 500));
}

TEST_CASE("dropping the correction term breaks the eigenvalue equation", "[verify]") {
    auto chain = fine_chain();
    auto R = build_twisted_tower(3, chain.f, kAlpha, kBeta);
    const double res = eigenfunction_residual(R, 1, 1, SparseSeries(), kBeta, 10000);
    REQUIRE(res >= 1e-2);
    REQUIRE(res > 1.9);
}

TEST_CASE("family members sharing the last coordinate commute exactly", "[verify]") {
    auto chain = fine_chain();
    auto base = build_series_tower(2, 1, chain.f, kAlpha);
    auto fam = build_shift_family(base, {Frac128(), Frac128::from_decimal("0.125")});
    REQUIRE(commutation_residual(fam[0], fam[1], 10000) < 1e-9);
}

TEST_CASE("shifting an interior coordinate does not commute", "[verify]") {
    auto chain = fine_chain();
    auto base = build_series_tower(3, 1, chain.f, kAlpha);
    const Frac128 c = Frac128::from_decimal("0.333333333333333333333333333333333");
    auto fam = build_shift_family(base, {Frac128(), c});
    const double res = commutation_residual(fam[0], fam[1], 100);
    REQUIRE(res >= 1e-2);
    // The mismatch is the shift itself, accumulated once into coordinate 3.
    REQUIRE(res == Catch::Approx(1.0 / 3.0).margin(1e-6));
}

TEST_CASE("report fields are internally consistent", "[verify]") {
    auto S = build_plain_tower(2, kAlpha);
    auto rep = unique_ergodicity_probe(S, {Character{{0, 0}}, Character{{0, 1}}},
                                       halton_starts(3, 2), {100, 1000});
    REQUIRE_NOTHROW(rep.validate());
    REQUIRE(rep.rows.size() == 6);
    REQUIRE(rep.spread.size() == 2);
    // Trivial characters average to one and are excluded from the headline.
    for (std::size_t i = 0; i < 3; ++i)
        REQUIRE(std::abs(rep.rows[i].averages.back() - std::complex<double>(1, 0)) < 1e-12);
    REQUIRE(rep.max_abs_final < 0.2);
}
