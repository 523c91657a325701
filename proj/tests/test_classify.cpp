#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mok/classify.hpp"

using namespace mok;

TEST_CASE("eta values from the table") {
    CHECK(eta(make_domain(Family::I, 2, 2)) == EtaPair{4, 2});
    CHECK(eta(make_domain(Family::I, 2, 3)) == EtaPair{6, 3});
    CHECK(eta(make_domain(Family::II, 5)) == EtaPair{10, 6});
    CHECK(eta(make_domain(Family::III, 4)) == EtaPair{10, 3});
    CHECK(eta(make_domain(Family::IV, 7)) == EtaPair{7, 5});
    CHECK(eta(make_domain(Family::V)) == EtaPair{16, 10});
    CHECK(eta(make_domain(Family::VI)) == EtaPair{27, 16});
    // IV(4) shares the pair of I(2,2), as it must
    CHECK(eta(make_domain(Family::IV, 4)) == eta(make_domain(Family::I, 2, 2)));
    CHECK_THROWS_AS(eta(make_domain(Family::Disc)), DiscHasNoS1Error);
}

TEST_CASE("domain validity and canonical form") {
    CHECK_THROWS_AS(make_domain(Family::I, 1, 5), SpecError);
    CHECK_THROWS_AS(make_domain(Family::II, 3), SpecError);
    CHECK_THROWS_AS(make_domain(Family::III, 1), SpecError);
    CHECK_THROWS_AS(make_domain(Family::IV, 2), SpecError);
    CHECK(make_domain(Family::I, 4, 2) == make_domain(Family::I, 2, 4));
    CHECK(canonicalize(make_domain(Family::IV, 3)) == make_domain(Family::III, 2));
    CHECK(canonicalize(make_domain(Family::IV, 4)) == make_domain(Family::I, 2, 2));
    CHECK(canonicalize(make_domain(Family::IV, 6)) == make_domain(Family::II, 4));
    CHECK(canonicalize(make_domain(Family::IV, 5)) == make_domain(Family::IV, 5));
    CHECK(parse_domain("I(2,3)").to_string() == "I(2,3)");
}

TEST_CASE("dim_s1 < dim_domain for every valid type") {
    for (const auto& d : enumerate_domains(60, true)) {
        EtaPair e = eta(d);
        CHECK(e.dim_s1 < e.dim_domain);
        CHECK(e.dim_domain == d.dim());
    }
}

TEST_CASE("eta_inverse is a left inverse of eta up to canonical form") {
    for (const auto& d : enumerate_domains(44, false)) {
        auto back = eta_inverse(eta(d));
        REQUIRE(back.has_value());
        CHECK(*back == canonicalize(d));
    }
}

TEST_CASE("eta_inverse specific pairs") {
    CHECK(*eta_inverse({4, 2}) == make_domain(Family::I, 2, 2));  // canonical for IV(4)
    CHECK(*eta_inverse({6, 4}) == make_domain(Family::II, 4));    // canonical for IV(6)
    CHECK(*eta_inverse({3, 1}) == make_domain(Family::III, 2));   // canonical for IV(3)
    CHECK(*eta_inverse({27, 16}) == make_domain(Family::VI));
    CHECK(!eta_inverse({5, 1}).has_value());
    // exhaustive scan of the table formulas over all valid types with
    // dim <= 5 confirms no type hits (5,1)
    for (const auto& d : enumerate_domains(5, false)) CHECK(!(eta(d) == EtaPair{5, 1}));
}

TEST_CASE("the pair (45,16) is genuinely ambiguous") {
    // I(3,15) and II(10) share it; the scan documents where the table's
    // injectivity stops
    CHECK(eta(make_domain(Family::I, 3, 15)) == EtaPair{45, 16});
    CHECK(eta(make_domain(Family::II, 10)) == EtaPair{45, 16});
    CHECK_THROWS_AS(eta_inverse({45, 16}), AmbiguousPairError);
    auto groups = collect_eta_collisions(45, true);
    REQUIRE(groups.size() == 1);
    CHECK(groups[0] == std::vector<DomainType>{make_domain(Family::I, 3, 15),
                                               make_domain(Family::II, 10)});
}

TEST_CASE("injectivity scan at 30") {
    CHECK(verify_injectivity(30).empty());
    auto raw = collect_eta_collisions(30, false);
    REQUIRE(raw.size() == 3);
    CHECK(raw[0] == std::vector<DomainType>{make_domain(Family::III, 2), make_domain(Family::IV, 3)});
    CHECK(raw[1] == std::vector<DomainType>{make_domain(Family::I, 2, 2), make_domain(Family::IV, 4)});
    CHECK(raw[2] == std::vector<DomainType>{make_domain(Family::II, 4), make_domain(Family::IV, 6)});
    // range restriction: only two coincidences exist through dimension 4
    auto small = collect_eta_collisions(4, false);
    REQUIRE(small.size() == 2);
    CHECK(small[0][0] == make_domain(Family::III, 2));
    CHECK(small[1][0] == make_domain(Family::I, 2, 2));
    CHECK_THROWS_AS(verify_injectivity(2), SpecError);
}

TEST_CASE("recover_cover") {
    // polydisk
    CHECK(recover_cover({{0, 1}, {0, 1}}) ==
          make_product_domain({make_domain(Family::Disc), make_domain(Family::Disc)}));
    // exceptional domain from its affine cone dimension
    CHECK(recover_cover({{17, 27}}) == make_product_domain({make_domain(Family::VI)}));
    // two classical factors; affine cone dim = table value + 1
    CHECK(recover_cover({{4, 6}, {4, 5}}) ==
          make_product_domain({make_domain(Family::I, 2, 3), make_domain(Family::IV, 5)}));
    // canonicalization: the pair of IV(4) names I(2,2)
    CHECK(recover_cover({{3, 4}, {3, 4}}) ==
          make_product_domain({make_domain(Family::I, 2, 2), make_domain(Family::I, 2, 2)}));

    // ball-like and invalid pairs are refused
    CHECK_THROWS_AS(recover_cover({{1, 3}}), UnrecognizedPairError);
    CHECK_THROWS_AS(recover_cover({{0, 2}}), UnrecognizedPairError);
    CHECK_THROWS_AS(recover_cover({{5, 4}}), UnrecognizedPairError);
    CHECK_THROWS_AS(recover_cover({{2, 4}}), UnrecognizedPairError);
}

TEST_CASE("product domain canonical ordering") {
    ProductDomain a = make_product_domain({make_domain(Family::IV, 5), make_domain(Family::Disc),
                                           make_domain(Family::I, 2, 3)});
    CHECK(a.to_string() == "D x I(2,3) x IV(5)");
    ProductDomain b = make_product_domain({make_domain(Family::I, 2, 3), make_domain(Family::IV, 5),
                                           make_domain(Family::Disc)});
    CHECK(a == b);
}

TEST_CASE("recovery roundtrip over all small products") {
    std::vector<DomainType> pool = enumerate_domains(27, false);
    pool.push_back(make_domain(Family::Disc));
    auto pair_of = [](const DomainType& d) -> std::pair<int, int> {
        if (d.tag == Family::Disc) return {0, 1};
        EtaPair e = eta(d);
        return {e.dim_s1 + 1, e.dim_domain};
    };
    int total = 0;
    const int np = static_cast<int>(pool.size());
    for (int a = 0; a < np; ++a)
        for (int b = a; b < np; ++b) {
            if (pool[a].dim() + pool[b].dim() > 40) continue;
            std::vector<std::pair<int, int>> pairs = {pair_of(pool[a]), pair_of(pool[b])};
            CHECK(recover_cover(pairs) == make_product_domain({pool[a], pool[b]}));
            ++total;
        }
    CHECK(total > 100);
}
