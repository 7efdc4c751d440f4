#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "chowstab/decomp.hpp"
#include "testutil.hpp"

using namespace chowstab;

namespace {

Configuration points_config(std::size_t n, const std::vector<std::vector<long>>& coords,
                            const std::vector<std::uint64_t>& mults) {
    std::vector<WeightedPoint> pts;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        std::vector<BigInt> c(coords[i].begin(), coords[i].end());
        pts.push_back({ProjPoint(std::move(c)), mults[i]});
    }
    return Configuration::of_points(n, std::move(pts));
}

// Canonical fingerprint of a decomposition: the partition of point keys with
// each block's subspace rank, order-independent.
std::set<std::pair<std::set<std::string>, std::size_t>> fingerprint(const Configuration& c,
                                                                    const Decomposition& d) {
    std::set<std::pair<std::set<std::string>, std::size_t>> fp;
    for (const auto& comp : d.components) {
        std::set<std::string> block;
        for (std::size_t j : comp.members) block.insert(c.points()[j].point.key());
        fp.insert({std::move(block), comp.subspace.rank()});
    }
    return fp;
}

}  // namespace

TEST_CASE("span decomposition of plane configurations") {
    SUBCASE("line plus external point") {
        const auto c = points_config(2, {{1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {0, 0, 1}},
                                     {1, 1, 1, 1});
        const auto d = decompose_span(c);
        REQUIRE(d.components.size() == 2);
        std::vector<std::size_t> ranks{d.components[0].subspace.rank(),
                                       d.components[1].subspace.rank()};
        std::sort(ranks.begin(), ranks.end());
        CHECK(ranks == std::vector<std::size_t>{1, 2});
        for (const auto& comp : d.components) {
            if (comp.subspace.rank() == 2) {
                CHECK(comp.members == std::vector<std::size_t>{0, 1, 2});
            } else {
                CHECK(comp.members == std::vector<std::size_t>{3});
            }
        }
    }
    SUBCASE("two distinct points decompose into singletons") {
        const auto c = points_config(2, {{1, 2, 1}, {0, 1, 1}}, {1, 1});
        const auto d = decompose_span(c);
        REQUIRE(d.components.size() == 2);
        CHECK(d.components[0].subspace.rank() == 1);
        CHECK(d.components[1].subspace.rank() == 1);
    }
    SUBCASE("projective frame spans everything in one piece") {
        const auto c = points_config(2, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}},
                                     {1, 1, 1, 1});
        const auto d = decompose_span(c);
        REQUIRE(d.components.size() == 1);
        CHECK(d.components[0].subspace.rank() == 3);
        CHECK(d.components[0].members == std::vector<std::size_t>{0, 1, 2, 3});
    }
}

TEST_CASE("decomposition structure invariants") {
    testutil::Rng rng(83);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 1 + rng.next() % 3;
        std::vector<WeightedPoint> pts;
        const std::size_t count = 1 + rng.next() % 5;
        for (std::size_t i = 0; i < count; ++i) {
            pts.push_back({rng.point(n + 1, -1, 1), 1 + rng.next() % 2});
        }
        const auto c = Configuration::of_points(n, pts);
        const auto d = decompose_span(c);

        // Every input point lies in exactly one component.
        std::vector<int> hit(count, 0);
        for (const auto& comp : d.components) {
            for (std::size_t j : comp.members) ++hit[j];
            for (std::size_t j : comp.members) {
                CHECK(comp.subspace.contains(c.points()[j].point.to_rat_vector()));
            }
        }
        CHECK(std::all_of(hit.begin(), hit.end(), [](int h) { return h == 1; }));

        // Orthogonality: each component misses the span of the others.
        for (std::size_t a = 0; a < d.components.size(); ++a) {
            LinSubspace rest = LinSubspace::empty(n + 1);
            for (std::size_t b = 0; b < d.components.size(); ++b) {
                if (b != a) rest = sum(rest, d.components[b].subspace);
            }
            CHECK(intersect(d.components[a].subspace, rest).is_empty());
        }

        // Counting identity: Σ (dim Λ_j + 1) equals the rank of the points.
        std::vector<RatVector> vecs;
        for (const auto& wp : pts) vecs.push_back(wp.point.to_rat_vector());
        std::size_t total = 0;
        for (const auto& comp : d.components) total += comp.subspace.rank();
        CHECK(total == LinSubspace::span(n + 1, vecs).rank());
    }
}

TEST_CASE("decomposition is independent of input order and covariant") {
    testutil::Rng rng(89);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + rng.next() % 3;
        std::vector<WeightedPoint> pts;
        const std::size_t count = 2 + rng.next() % 4;
        for (std::size_t i = 0; i < count; ++i) {
            pts.push_back({rng.point(n + 1, -1, 1), 1});
        }
        const auto c = Configuration::of_points(n, pts);

        std::vector<WeightedPoint> shuffled = pts;
        for (std::size_t i = shuffled.size(); i > 1; --i) {
            std::swap(shuffled[i - 1], shuffled[rng.next() % i]);
        }
        const auto c2 = Configuration::of_points(n, shuffled);
        CHECK(fingerprint(c, decompose_span(c)) == fingerprint(c2, decompose_span(c2)));

        // Components transform covariantly under coordinate changes.
        const RatMatrix g = rng.invertible_matrix(n + 1);
        const auto cg = apply_transform(c, g);
        std::set<std::string> transformed, direct;
        for (const auto& comp : decompose_span(c).components) {
            transformed.insert(comp.subspace.transformed(g).key());
        }
        for (const auto& comp : decompose_span(cg).components) {
            direct.insert(comp.subspace.key());
        }
        CHECK(transformed == direct);
    }
}

TEST_CASE("component restriction") {
    const auto c = points_config(2, {{1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {0, 0, 1}},
                                 {1, 1, 1, 5});
    const auto d = decompose_span(c);
    REQUIRE(d.components.size() == 2);
    const std::size_t line_idx = d.components[0].subspace.rank() == 2 ? 0 : 1;
    const std::size_t point_idx = 1 - line_idx;

    SUBCASE("line component restricts to three points of P^1") {
        const auto rc = restrict_component(c, d, line_idx);
        CHECK(rc.ambient_dim() == 1);
        REQUIRE(rc.points().size() == 3);
        std::set<std::string> keys;
        for (const auto& wp : rc.points()) keys.insert(wp.point.key());
        std::set<std::string> expected{ProjPoint(std::vector<BigInt>{1, 0}).key(),
                                       ProjPoint(std::vector<BigInt>{0, 1}).key(),
                                       ProjPoint(std::vector<BigInt>{1, 1}).key()};
        CHECK(keys == expected);
    }
    SUBCASE("point component restricts to P^0 keeping multiplicity") {
        const auto rc = restrict_component(c, d, point_idx);
        CHECK(rc.ambient_dim() == 0);
        REQUIRE(rc.points().size() == 1);
        CHECK(rc.points()[0].multiplicity == 5);
    }
    SUBCASE("restrict then embed returns the original points") {
        for (std::size_t idx : {line_idx, point_idx}) {
            const auto rc = restrict_component(c, d, idx);
            for (std::size_t k = 0; k < rc.points().size(); ++k) {
                const RatVector back =
                    embed_component_vector(d, idx, rc.points()[k].point.to_rat_vector());
                const std::size_t j = d.components[idx].members[k];
                CHECK(ProjPoint(back) == c.points()[j].point);
            }
        }
    }
}

TEST_CASE("relative verdicts follow the component structure") {
    SUBCASE("three non-aligned points are relatively stable") {
        const auto c = points_config(2, {{1, 0, 0}, {0, 1, 0}, {1, 1, 1}}, {3, 1, 7});
        const auto report = relative_verdict(c);
        CHECK(report.verdict == Verdict::Stable);
        CHECK(report.component_reports.size() == 3);
    }
    SUBCASE("overloaded aligned point makes the configuration relatively unstable") {
        const auto c = points_config(2, {{1, 0, 0}, {0, 1, 0}, {1, 1, 0}}, {3, 1, 1});
        const auto report = relative_verdict(c);
        CHECK(report.verdict == Verdict::Unstable);
        REQUIRE(report.certificate.has_value());
        CHECK(report.certificate->mu > Rational(0));
        // The lifted certificate verifies against the ambient configuration.
        CHECK(mumford_weight(c, report.certificate->lambda).value == report.certificate->mu);
    }
    SUBCASE("external point plus balanced aligned points is relatively stable") {
        const auto c = points_config(2, {{0, 0, 1}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}},
                                     {9, 1, 1, 1});
        const auto report = relative_verdict(c);
        CHECK(report.verdict == Verdict::Stable);
    }
    SUBCASE("balanced pair of points is relatively stable (two singletons)") {
        const auto c = points_config(2, {{1, 0, 0}, {0, 1, 0}}, {2, 2});
        CHECK(relative_verdict(c).verdict == Verdict::Stable);
    }
}

TEST_CASE("relative verdict certificates lift to the ambient space") {
    testutil::Rng rng(97);
    int unstable_seen = 0;
    for (int trial = 0; trial < 80; ++trial) {
        const std::size_t n = 2 + rng.next() % 2;
        std::vector<WeightedPoint> pts;
        const std::size_t count = 2 + rng.next() % 4;
        for (std::size_t i = 0; i < count; ++i) {
            pts.push_back({rng.point(n + 1, -1, 1), 1 + rng.next() % 3});
        }
        const auto c = Configuration::of_points(n, pts);
        const auto report = relative_verdict(c);
        if (report.verdict != Verdict::Unstable) continue;
        ++unstable_seen;
        REQUIRE(report.certificate.has_value());
        CHECK(report.certificate->mu > Rational(0));
        CHECK(mumford_weight(c, report.certificate->lambda).value == report.certificate->mu);
    }
    CHECK(unstable_seen > 5);
}
