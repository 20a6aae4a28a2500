#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "skewlab/rpk.hpp"

using namespace skewlab;

namespace {
const Frac128 kAlpha = Frac128::golden();

FiniteSystem cyclic_rotation(int size) {
    FiniteSystem sys;
    sys.size = size;
    for (int i = 0; i < size; ++i) sys.map.push_back((i + 1) % size);
    sys.metric.assign(static_cast<std::size_t>(size), std::vector<double>(static_cast<std::size_t>(size), 0.0));
    for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j) {
            int d = std::abs(i - j);
            d = std::min(d, size - d);
            sys.metric[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                static_cast<double>(d) / size;
        }
    return sys;
}

TorusPoint pt(std::initializer_list<const char*> decimals) {
    std::vector<Frac128> v;
    for (const char* s : decimals) v.push_back(Frac128::from_decimal(s));
    return TorusPoint(std::move(v));
}
}  // namespace

TEST_CASE("finite system validation", "[rpk]") {
    REQUIRE_NOTHROW(cyclic_rotation(8).validate());
    auto bad_map = cyclic_rotation(4);
    bad_map.map[0] = 2;  // duplicates the image 2, so not a permutation
    REQUIRE_THROWS_AS(bad_map.validate(), ParseError);
    auto bad_metric = cyclic_rotation(4);
    bad_metric.metric[0][1] = 0.9;  // asymmetric
    REQUIRE_THROWS_AS(bad_metric.validate(), ParseError);
    auto bad_diag = cyclic_rotation(4);
    bad_diag.metric[2][2] = 0.1;
    REQUIRE_THROWS_AS(bad_diag.validate(), ParseError);
    auto bad_tri = cyclic_rotation(4);
    bad_tri.metric[0][2] = 0.9;
    bad_tri.metric[2][0] = 0.9;  // violates the triangle inequality
    REQUIRE_THROWS_AS(bad_tri.validate(), ParseError);
}

TEST_CASE("iterate runs the map forward and backward", "[rpk]") {
    auto S = build_plain_tower(2, kAlpha);
    const TorusPoint p = pt({"0.1", "0.2"});
    REQUIRE(iterate(S, p, 3) == step(S, step(S, step(S, p))));
    REQUIRE(iterate(S, iterate(S, p, -5), 5) == p);
    REQUIRE(iterate(S, p, 0) == p);
}

TEST_CASE("brute force on a small rotation finds only the diagonal", "[rpk]") {
    auto z8 = cyclic_rotation(8);
    auto pairs = rp_bruteforce_finite(z8, 1, 0.05, 16);
    REQUIRE(pairs.size() == 8);
    for (const auto& [a, b] : pairs) REQUIRE(a == b);
}

TEST_CASE("brute force degenerate cases", "[rpk]") {
    auto z8 = cyclic_rotation(8);
    REQUIRE(rp_bruteforce_finite(z8, 1, 0.0, 16).empty());
    // The identity map with a permissive radius relates everything.
    auto id = cyclic_rotation(8);
    for (int i = 0; i < 8; ++i) id.map[static_cast<std::size_t>(i)] = i;
    REQUIRE(rp_bruteforce_finite(id, 1, 1.0, 4).size() == 64);
    // Higher order only loosens the relation, never tightens it.
    auto k3 = rp_bruteforce_finite(z8, 3, 0.05, 8);
    REQUIRE(k3.size() == 8);
    REQUIRE_THROWS_AS(rp_bruteforce_finite(z8, 0, 0.05, 8), BadIndex);
    REQUIRE_THROWS_AS(rp_bruteforce_finite(z8, 1, 0.05, -1), BadIndex);
}

TEST_CASE("brute force refuses oversized inputs", "[rpk]") {
    REQUIRE_THROWS_AS(rp_bruteforce_finite(cyclic_rotation(65), 1, 0.05, 16), ComplexityGuard);
    REQUIRE_THROWS_AS(rp_bruteforce_finite(cyclic_rotation(8), 4, 0.05, 16), ComplexityGuard);
    REQUIRE_THROWS_AS(rp_bruteforce_finite(cyclic_rotation(8), 1, 0.05, 33), ComplexityGuard);
}

TEST_CASE("same-fiber torus pairs are certified", "[rpk]") {
    auto S = build_plain_tower(2, kAlpha);
    auto res = rp_certify_torus(S, pt({"0", "0"}), pt({"0", "0.3"}), 1, 0.05, 16, 40);
    REQUIRE(res.certificate.has_value());
    REQUIRE_FALSE(res.impossible);
    REQUIRE(res.certificate->n.size() == 1);
    REQUIRE(res.certificate->n[0] == 11);
    REQUIRE(validate_certificate(S, *res.certificate));
    REQUIRE(res.bounds.k == 1);
}

TEST_CASE("first-coordinate separation is recognized as impossible", "[rpk]") {
    auto S = build_plain_tower(2, kAlpha);
    auto res = rp_certify_torus(S, pt({"0", "0"}), pt({"0.3", "0"}), 1, 0.05, 16, 40);
    REQUIRE_FALSE(res.certificate.has_value());
    REQUIRE(res.impossible);
    REQUIRE_FALSE(res.note.empty());
}

TEST_CASE("certified pairs survive independent re-iteration", "[rpk]") {
    auto S = build_plain_tower(2, kAlpha);
    auto res = rp_certify_torus(S, pt({"0", "0"}), pt({"0", "0.3"}), 1, 0.05, 16, 40);
    REQUIRE(res.certificate.has_value());
    const auto& cert = *res.certificate;
    // Every nonempty subset of the exponents must keep the witnesses close.
    for (std::int64_t s : detail::subset_sums(cert.n)) {
        const auto ix = iterate(S, cert.xp, s);
        const auto iy = iterate(S, cert.yp, s);
        REQUIRE(torus_distance(ix, iy) < cert.delta);
    }
    // Order two needs closeness at n1, n2 and n1 + n2 simultaneously; for
    // this pair no exponent pair in range manages that, so the search is
    // expected to come back empty rather than overclaim.
    auto res2 = rp_certify_torus(S, pt({"0", "0"}), pt({"0", "0.3"}), 2, 0.05, 12, 40);
    REQUIRE_FALSE(res2.certificate.has_value());
    REQUIRE_FALSE(res2.impossible);
    // A pair already within delta certifies at order two with resting exponents.
    auto rot = build_plain_tower(1, kAlpha);
    auto res3 = rp_certify_torus(rot, pt({"0"}), pt({"0.01"}), 2, 0.05, 4, 40);
    REQUIRE(res3.certificate.has_value());
    REQUIRE(res3.certificate->n.size() == 2);
    for (std::int64_t s : detail::subset_sums(res3.certificate->n)) {
        const auto ix = iterate(rot, res3.certificate->xp, s);
        const auto iy = iterate(rot, res3.certificate->yp, s);
        REQUIRE(torus_distance(ix, iy) < res3.certificate->delta);
    }
}

TEST_CASE("certificate validation rejects tampered data", "[rpk]") {
    auto S = build_plain_tower(2, kAlpha);
    auto res = rp_certify_torus(S, pt({"0", "0"}), pt({"0", "0.3"}), 1, 0.05, 16, 40);
    auto cert = *res.certificate;
    cert.delta = 1e-9;
    REQUIRE_FALSE(validate_certificate(S, cert));
    auto cert2 = *res.certificate;
    cert2.n.clear();
    REQUIRE_FALSE(validate_certificate(S, cert2));
}

TEST_CASE("torus search argument validation", "[rpk]") {
    auto S = build_plain_tower(2, kAlpha);
    REQUIRE_THROWS_AS(rp_certify_torus(S, pt({"0", "0"}), pt({"0", "0.3"}), 3, 0.05, 16, 40),
                      BadIndex);
    REQUIRE_THROWS_AS(rp_certify_torus(S, pt({"0", "0"}), pt({"0", "0.3"}), 1, 0.0, 16, 40),
                      BadIndex);
    REQUIRE_THROWS_AS(rp_certify_torus(S, pt({"0", "0"}), pt({"0", "0.3"}), 1, 0.05, 16, 0),
                      BadIndex);
    REQUIRE_THROWS_AS(rp_certify_torus(S, pt({"0"}), pt({"0", "0.3"}), 1, 0.05, 16, 40),
                      BadIndex);
}

TEST_CASE("product certificates project to the factors", "[rpk]") {
    auto S = build_plain_tower(2, kAlpha);
    auto prod = interleave(S, S);
    auto res = rp_certify_torus(prod, pt({"0", "0", "0", "0"}), pt({"0", "0", "0.3", "0.3"}), 1,
                                0.05, 16, 40);
    REQUIRE(res.certificate.has_value());
    auto [ca, cb] = rp_product_project(prod, *res.certificate);
    REQUIRE(ca.n == res.certificate->n);
    REQUIRE(cb.n == res.certificate->n);
    REQUIRE(ca.delta == res.certificate->delta);
    auto [fa, fb] = split_interleaved(prod);
    REQUIRE(validate_certificate(fa, ca));
    REQUIRE(validate_certificate(fb, cb));
    REQUIRE_THROWS_AS(rp_product_project(build_plain_tower(3, kAlpha), *res.certificate),
                      NotAProduct);
}
