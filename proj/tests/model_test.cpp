#include <doctest.h>

#include "chowstab/model.hpp"
#include "testutil.hpp"

using namespace chowstab;

TEST_CASE("projective points are stored primitively") {
    CHECK(ProjPoint(RatVector{Rational(1, 2), Rational(1), Rational(0)}).coords() ==
          std::vector<BigInt>{1, 2, 0});
    CHECK(ProjPoint(RatVector{Rational(-2), Rational(4), Rational(-6)}).coords() ==
          std::vector<BigInt>{1, -2, 3});
    CHECK_THROWS_AS(ProjPoint(RatVector{Rational(0), Rational(0)}), std::invalid_argument);
}

TEST_CASE("document parsing") {
    SUBCASE("single weighted point") {
        const auto in = parse_document(
            R"({"ambient_dim":2,"points":[{"coords":["1","0","0"],"multiplicity":2}]})");
        REQUIRE(in.config.holds_points());
        REQUIRE(in.config.points().size() == 1);
        CHECK(in.config.points()[0].point.coords() == std::vector<BigInt>{1, 0, 0});
        CHECK(in.config.points()[0].multiplicity == 2);
        CHECK_FALSE(in.one_ps.has_value());
    }
    SUBCASE("rational coordinates are cleared to primitive form") {
        const auto in = parse_document(
            R"({"ambient_dim":2,"points":[{"coords":["1/2","1","0"],"multiplicity":1}]})");
        CHECK(in.config.points()[0].point.coords() == std::vector<BigInt>{1, 2, 0});
    }
    SUBCASE("subspace basis is canonicalized") {
        const auto in = parse_document(
            R"({"ambient_dim":3,"subspaces":[{"basis":[["1","0","1","0"],["0","1","0","1"]],
               "multiplicity":1}]})");
        REQUIRE_FALSE(in.config.holds_points());
        const LinSubspace& s = in.config.subspaces()[0].subspace;
        CHECK(s.rank() == 2);
        CHECK(s.basis() == RatMatrix{{Rational(1), Rational(0), Rational(1), Rational(0)},
                                     {Rational(0), Rational(1), Rational(0), Rational(1)}});
    }
    SUBCASE("one_ps with conjugation") {
        const auto in = parse_document(
            R"({"ambient_dim":1,"points":[{"coords":["1","0"]}],
                "one_ps":{"weights":[-1,1],"conjugation":[["1","1"],["0","1"]]}})");
        REQUIRE(in.one_ps.has_value());
        CHECK(in.one_ps->weights() == std::vector<std::int64_t>{-1, 1});
        CHECK(in.one_ps->conjugation().has_value());
    }
}

TEST_CASE("document parse errors carry positions") {
    auto parse_fails = [](const std::string& doc, const std::string& needle) {
        try {
            parse_document(doc);
            FAIL_CHECK("expected ParseError for ", doc);
        } catch (const ParseError& e) {
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };
    parse_fails(R"({"ambient_dim":2,"points":[{"coords":["0","0","0"]}]})", "points[0]");
    parse_fails(R"({"ambient_dim":2,"points":[{"coords":["1","0"]}]})", "points[0].coords");
    parse_fails(R"({"ambient_dim":1,"points":[{"coords":["1","0"],"multiplicity":0}]})",
                "multiplicity");
    parse_fails(R"({"ambient_dim":1,"points":[{"coords":["1","1//2"]}]})",
                "points[0].coords[1]");
    parse_fails(R"({"ambient_dim":1})", "points");
    parse_fails(R"({"ambient_dim":1,"points":[{"coords":["1","0"]}],
                    "subspaces":[{"basis":[["1","0"]]}]})",
                "exactly one");
    parse_fails(R"({"ambient_dim":3,"subspaces":[
                    {"basis":[["1","0","0","0"]]},
                    {"basis":[["1","0","0","0"],["0","1","0","0"]]}]})",
                "subspace 1");
}

TEST_CASE("parse is a left inverse of serialization") {
    testutil::Rng rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 1 + rng.next() % 3;
        std::vector<WeightedPoint> pts;
        const std::size_t count = 1 + rng.next() % 4;
        for (std::size_t i = 0; i < count; ++i) {
            pts.push_back({rng.point(n + 1), 1 + rng.next() % 3});
        }
        const auto c = Configuration::of_points(n, pts);
        CHECK(parse_configuration(serialize_document(c)) == c);
    }
    const auto subs = Configuration::of_subspaces(
        3, {{LinSubspace::span(4, {RatVector{Rational(1), Rational(0), Rational(1), Rational(0)},
                                   RatVector{Rational(0), Rational(1), Rational(0), Rational(1)}}),
             2}});
    CHECK(parse_configuration(serialize_document(subs)) == subs);
}

TEST_CASE("apply_transform") {
    const auto c = parse_configuration(R"({"ambient_dim":1,"points":[{"coords":["0","1"]}]})");
    SUBCASE("identity fixes the configuration") {
        CHECK(apply_transform(c, RatMatrix::identity(2)) == c);
    }
    SUBCASE("coordinate swap moves unit points") {
        const auto e0 = parse_configuration(
            R"({"ambient_dim":1,"points":[{"coords":["1","0"]}]})");
        RatMatrix swap{{Rational(0), Rational(1)}, {Rational(1), Rational(0)}};
        CHECK(apply_transform(e0, swap) == c);
    }
    SUBCASE("shear maps e1 to (1:1)") {
        RatMatrix g{{Rational(1), Rational(1)}, {Rational(0), Rational(1)}};
        const auto moved = apply_transform(c, g);
        CHECK(moved.points()[0].point.coords() == std::vector<BigInt>{1, 1});
    }
    SUBCASE("singular matrices are rejected") {
        RatMatrix bad{{Rational(1), Rational(1)}, {Rational(1), Rational(1)}};
        CHECK_THROWS_AS(apply_transform(c, bad), std::invalid_argument);
    }
}

TEST_CASE("apply_transform is functorial") {
    testutil::Rng rng(19);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t n = 1 + rng.next() % 3;
        std::vector<WeightedPoint> pts;
        for (std::size_t i = 0; i < 3; ++i) pts.push_back({rng.point(n + 1), 1});
        const auto c = Configuration::of_points(n, pts);
        const RatMatrix g = rng.invertible_matrix(n + 1);
        const RatMatrix h = rng.invertible_matrix(n + 1);
        CHECK(apply_transform(c, multiply(g, h)) == apply_transform(apply_transform(c, h), g));
    }
}

TEST_CASE("one-parameter subgroup normalization") {
    SUBCASE("mean-zero inputs scale by n+1") {
        CHECK(normalize_one_ps({1, 1, -1, -1}).weights() ==
              std::vector<std::int64_t>{4, 4, -4, -4});
    }
    SUBCASE("general input") {
        CHECK(normalize_one_ps({1, 0, 0}).weights() == std::vector<std::int64_t>{2, -1, -1});
    }
    SUBCASE("constant weights flag the trivial subgroup") {
        const auto t = normalize_one_ps({5, 5, 5});
        CHECK(t.is_trivial());
        CHECK(t.weights() == std::vector<std::int64_t>{0, 0, 0});
    }
    SUBCASE("output always sums to zero; normalization is idempotent up to scale") {
        testutil::Rng rng(31);
        for (int trial = 0; trial < 100; ++trial) {
            const std::size_t len = 2 + rng.next() % 4;
            std::vector<std::int64_t> q(len);
            for (auto& w : q) w = rng.range(-6, 6);
            const auto norm = normalize_one_ps(q);
            std::int64_t s = 0;
            for (auto w : norm.weights()) s += w;
            CHECK(s == 0);
            std::vector<std::int64_t> scaled;
            for (auto w : norm.weights()) scaled.push_back(static_cast<std::int64_t>(len) * w);
            CHECK(normalize_one_ps(norm.weights()).weights() == scaled);
        }
    }
}
