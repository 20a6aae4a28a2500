#include <catch2/catch_amalgamated.hpp>

#include "skewlab/halton.hpp"
#include "skewlab/subsequence.hpp"

using namespace skewlab;

TEST_CASE("band edges and first usable index", "[subsequence]") {
    REQUIRE(band_lower(16, 0.125) == Catch::Approx(0.5).margin(1e-15));
    REQUIRE(band_upper(4, 0.25 - 1e-12) == Catch::Approx(std::pow(4.0, -0.25)).margin(1e-9));
    // dist(n*alpha) is strictly below 1/2, so a band whose lower edge sits at
    // exactly 1/2 is empty and the scan starts one index later.
    REQUIRE(first_band_index(0.125) == 17);
    REQUIRE(first_band_index(0.0625) == 257);
    REQUIRE(first_band_index(0.24) == 5);
    REQUIRE_THROWS_AS(first_band_index(0.0), BadIndex);
    REQUIRE_THROWS_AS(first_band_index(0.25), BadIndex);
}

TEST_CASE("recommended eps shrinks with chain length", "[subsequence]") {
    REQUIRE(recommended_eps(1) == Catch::Approx(0.125));
    REQUIRE(recommended_eps(2) == Catch::Approx(0.125));
    REQUIRE(recommended_eps(3) == Catch::Approx(0.0625));
    REQUIRE(recommended_eps(5) == Catch::Approx(1.0 / 32.0));
}

TEST_CASE("golden mean selection at eps 1/8 matches frozen values", "[subsequence]") {
    auto sub = select_subsequence(Frac128::golden(), 0.125, 3);
    REQUIRE(sub.r0 == 17);
    REQUIRE(sub.entries.size() == 3);
    const std::int64_t rs[] = {17, 18, 19};
    const std::int64_t ns[] = {17, 72, 106};
    const double ds[] = {0.4934221912517876, 0.4984471899924291, 0.48839719251114611};
    for (int i = 0; i < 3; ++i) {
        REQUIRE(sub.entries[static_cast<std::size_t>(i)].r == rs[i]);
        REQUIRE(sub.entries[static_cast<std::size_t>(i)].n == ns[i]);
        REQUIRE(sub.entries[static_cast<std::size_t>(i)].dist ==
                Catch::Approx(ds[i]).margin(1e-15));
    }
}

TEST_CASE("golden mean selection at eps 1/16 matches frozen values", "[subsequence]") {
    auto sub = select_subsequence(Frac128::golden(), 0.0625, 50);
    REQUIRE(sub.r0 == 257);
    REQUIRE(sub.entries.front().n == 1292);
    REQUIRE(sub.entries.front().dist == Catch::Approx(0.4999134648641439).margin(1e-15));
    REQUIRE(sub.entries.back().r == 306);
    REQUIRE(sub.entries.back().n == 9654);
    REQUIRE(sub.entries.back().dist == Catch::Approx(0.49987260851513543).margin(1e-15));
}

TEST_CASE("selected entries sit in their bands and recompute exactly", "[subsequence]") {
    const Frac128 alpha = Frac128::golden();
    auto sub = select_subsequence(alpha, 0.24, 10);
    std::int64_t prev_n = 0;
    for (const auto& e : sub.entries) {
        REQUIRE(e.n > prev_n);
        prev_n = e.n;
        REQUIRE(e.dist >= band_lower(e.r, sub.eps));
        REQUIRE(e.dist < band_upper(e.r, sub.eps));
        // dist must be reproducible from r and n alone.
        REQUIRE(e.dist == alpha.times(e.n).dist_to_int());
    }
    REQUIRE(sub.entries[0].r == 5);
    REQUIRE(sub.entries[0].n == 4);
    REQUIRE(sub.entries[1].n == 9);
    REQUIRE(sub.entries[2].n == 12);
    REQUIRE(sub.entries[3].n == 17);
}

TEST_CASE("selection failures throw informative errors", "[subsequence]") {
    REQUIRE_THROWS_AS(select_subsequence(Frac128::golden(), 0.125, 3, 10), BandUnreachable);
    REQUIRE_THROWS_AS(select_subsequence(Frac128::golden(), 0.125, 0), BadIndex);
    REQUIRE_THROWS_AS(select_subsequence(Frac128::golden(), 0.3, 3), BadIndex);
    // A rational angle whose orbit stays far from the band exhausts the scan.
    // Multiples of 0.2 have distance-to-integer in {0, 0.2, 0.4}, all below the
    // band floor at eps = 1/8, so no index ever qualifies.
    REQUIRE_THROWS_AS(select_subsequence(Frac128::from_decimal("0.2"), 0.125, 1, 1000),
                      BandUnreachable);
}

TEST_CASE("halton points are the expected dyadic and prime-base values", "[halton]") {
    REQUIRE(halton1(1) == Frac128::from_decimal("0.5"));
    REQUIRE(halton1(2) == Frac128::from_decimal("0.25"));
    REQUIRE(halton1(3) == Frac128::from_decimal("0.75"));
    REQUIRE(radical_inverse(1, 3) == Catch::Approx(1.0 / 3.0).margin(1e-16));
    REQUIRE(radical_inverse(4, 3) == Catch::Approx(4.0 / 9.0).margin(1e-16));
    auto p = halton_point(1, 3);
    REQUIRE(p.size() == 3);
    REQUIRE(p[0] == Frac128::from_decimal("0.5"));
    REQUIRE(p[1].to_double() == Catch::Approx(1.0 / 3.0).margin(1e-15));
    REQUIRE(p[2].to_double() == Catch::Approx(1.0 / 5.0).margin(1e-15));
    // Distinct indices give distinct points.
    REQUIRE_FALSE(halton_point(7, 3) == halton_point(8, 3));
}
