#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <vector>

#include "pslab/experiments.hpp"
#include "pslab/ps_core.hpp"

using namespace pslab;
using namespace pslab::experiments;

TEST_CASE("make_colouring schemes") {
    PSParams p(1.5, 12);

    Colouring all = make_colouring(p, ColourScheme::residue, 1, 0);
    for (int c : all.colour_of) CHECK(c == 1);

    // residue r=2: odd members -> colour 2, even -> colour 1
    Colouring res = make_colouring(p, ColourScheme::residue, 2, 0);
    CHECK(res.colour_class(2) == std::vector<std::int64_t>{1, 5, 11});
    CHECK(res.colour_class(1) == std::vector<std::int64_t>{2, 8});

    // dyadic bands: floor(log2 n) mod r
    Colouring dy = make_colouring(p, ColourScheme::dyadic_band, 2, 0);
    // members 1,2,5,8,11 have bands 0,1,2,3,3
    CHECK(dy.colour_of == std::vector<int>{1, 2, 1, 2, 2});

    // random scheme: bit-identical reconstruction from the same seed
    PSParams big(1.2, 5000);
    Colouring a = make_colouring(big, ColourScheme::random, 3, 123456789ull);
    Colouring b = make_colouring(big, ColourScheme::random, 3, 123456789ull);
    CHECK(a.colour_of == b.colour_of);
    Colouring c = make_colouring(big, ColourScheme::random, 3, 5ull);
    CHECK(a.colour_of != c.colour_of);

    for (int col : a.colour_of) {
        CHECK(col >= 1);
        CHECK(col <= 3);
    }

    CHECK_THROWS_AS(make_colouring(p, ColourScheme::random, 0, 1), std::invalid_argument);
    CHECK(scheme_from_name("dyadic_band") == ColourScheme::dyadic_band);
    CHECK_THROWS_AS(scheme_from_name("stripes"), std::invalid_argument);
}

TEST_CASE("find_monochromatic: pinned witnesses on PS_1.5(30)") {
    PSParams p(1.5, 30);
    LinearForm schur({1, 1, -1});

    // single colour class: ascending extraction reaches (5, 22, 27)
    Colouring one = make_colouring(p, ColourScheme::residue, 1, 0);
    auto w = find_monochromatic(schur, one);
    REQUIRE(w.has_value());
    CHECK(w->colour == 1);
    CHECK(w->tuple == std::vector<std::int64_t>{5, 22, 27});
    CHECK(verify_witness(schur, one, *w));

    // residue r=2: the even class carries (8, 14, 22)
    Colouring res = make_colouring(p, ColourScheme::residue, 2, 0);
    auto w2 = find_monochromatic(schur, res);
    REQUIRE(w2.has_value());
    CHECK(w2->tuple == std::vector<std::int64_t>{8, 14, 22});
    CHECK(w2->colour == 1);
    CHECK(verify_witness(schur, res, *w2));

    // no solutions at all for x + y + z = 0 over positive integers
    LinearForm none({1, 1, 1});
    CHECK_FALSE(find_monochromatic(none, one).has_value());

    // corrupted witnesses fail the exact recheck
    Witness badcol{2, w->tuple};
    CHECK_FALSE(verify_witness(schur, one, badcol));
    Witness badsum{1, {5, 22, 26}};
    CHECK_FALSE(verify_witness(schur, one, badsum));
    Witness dup{1, {5, 5, 10}};
    CHECK_FALSE(verify_witness(schur, one, dup));
}

TEST_CASE("find_monochromatic: randomized route for s = 5") {
    PSParams p(1.05, 300);
    // partition regular: 1+1+1+1-4 = 0
    LinearForm form({1, 1, 1, 1, -4});
    Colouring one = make_colouring(p, ColourScheme::residue, 1, 9);
    auto w = find_monochromatic(form, one);
    REQUIRE(w.has_value());
    CHECK(verify_witness(form, one, *w));
}

TEST_CASE("greedy_3ap_free examples") {
    GreedyResult g = greedy_3ap_free(PSParams(1.5, 11));
    CHECK(g.set == std::vector<std::int64_t>{1, 2, 5, 11});
    CHECK(g.ps_size == 5);
    CHECK(g.certified);
    CHECK(g.ratio == doctest::Approx(0.8));

    GreedyResult single = greedy_3ap_free(PSParams(1.5, 1));
    CHECK(single.set == std::vector<std::int64_t>{1});
    CHECK(single.certified);

    GreedyResult big = greedy_3ap_free(PSParams(1.3, 2000));
    CHECK(big.certified);
    CHECK(big.set.size() >= 3);
    CHECK(big.set.size() < big.ps_size);
}

TEST_CASE("colour_scan rows carry verified witnesses") {
    PSParams p(1.05, 400);
    LinearForm schur({1, 1, -1});
    std::vector<ColourScheme> schemes = {ColourScheme::random, ColourScheme::residue,
                                         ColourScheme::dyadic_band};
    std::vector<int> rs = {1, 2};
    auto rows = colour_scan(schur, p, schemes, rs, 3, 11);

    // random contributes trials rows per r; deterministic schemes one row per r
    CHECK(rows.size() == std::size_t(3 * 2 + 2 + 2));
    for (const ColourScanRow& r : rows) {
        if (r.found) {
            CHECK(r.witness.has_value());
            CHECK(r.witness_valid);
        }
        if (r.r == 1) CHECK(r.found);  // full set has plenty of Schur triples
        CHECK(r.wall_ms >= 0.0);
    }

    // determinism: identical seed reproduces identical witnesses
    auto rows2 = colour_scan(schur, p, schemes, rs, 3, 11);
    REQUIRE(rows.size() == rows2.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].found == rows2[i].found);
        if (rows[i].found) CHECK(rows[i].witness->tuple == rows2[i].witness->tuple);
    }

    CHECK_THROWS_AS(colour_scan(schur, p, schemes, rs, 0, 1), std::invalid_argument);
}
