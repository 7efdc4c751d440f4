#include "chowstab/hm_stability.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_set>

namespace chowstab {

namespace {

std::vector<RatVector> transformed_point_vectors(const Configuration& c, const OnePS& lambda) {
    std::vector<RatVector> out;
    out.reserve(c.points().size());
    std::optional<RatMatrix> inv;
    if (lambda.conjugation()) inv = inverse(*lambda.conjugation());
    for (const auto& wp : c.points()) {
        RatVector v = wp.point.to_rat_vector();
        out.push_back(inv ? matvec(*inv, v) : std::move(v));
    }
    return out;
}

std::int64_t max_weight_over_support(const RatVector& v, const std::vector<std::int64_t>& q) {
    std::int64_t best = 0;
    bool seen = false;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].is_zero()) continue;
        if (!seen || q[i] > best) best = q[i];
        seen = true;
    }
    if (!seen) throw std::invalid_argument("zero vector has no support");
    return best;
}

}  // namespace

MumfordWeight mumford_weight(const Configuration& c, const OnePS& lambda) {
    if (!c.holds_points()) {
        throw UnsupportedError("mumford weight is defined for point configurations");
    }
    if (lambda.coord_count() != c.coord_count()) {
        throw std::invalid_argument("subgroup weight count does not match the ambient dimension");
    }
    if (lambda.weight_sum() != 0) {
        throw PreconditionError("subgroup weights must sum to zero (apply normalize_one_ps)");
    }
    const std::vector<RatVector> pts = transformed_point_vectors(c, lambda);
    MumfordWeight w;
    w.value = 0;
    for (std::size_t j = 0; j < pts.size(); ++j) {
        const Rational contrib(-max_weight_over_support(pts[j], lambda.weights()));
        w.per_component.emplace_back(j, contrib);
        w.value += Rational(BigInt(c.points()[j].multiplicity)) * contrib;
    }
    return w;
}

std::vector<WeightedPoint> support_points(const Configuration& c) {
    std::vector<WeightedPoint> support;
    for (const auto& wp : c.points()) {
        auto it = std::find_if(support.begin(), support.end(),
                               [&](const WeightedPoint& s) { return s.point == wp.point; });
        if (it == support.end()) {
            support.push_back(wp);
        } else {
            it->multiplicity += wp.multiplicity;
        }
    }
    return support;
}

std::vector<SpannedSubspace> enumerate_spanned_subspaces(
    const std::vector<WeightedPoint>& support, std::size_t ambient_dim) {
    std::vector<SpannedSubspace> out;
    std::unordered_set<std::string> seen;
    const std::size_t s = support.size();
    if (s > 64) throw PreconditionError("too many distinct points for subspace enumeration");
    const std::size_t max_size = std::min(ambient_dim, s);

    // Largest subsets first, lexicographic within each size, so that the
    // first violation reported for an unstable configuration is carried by
    // the most inclusive spanned subspace (the line of an aligned family,
    // not one of its points).
    std::vector<std::size_t> subset;
    auto visit = [&](const auto& self, std::size_t next, std::size_t size) -> void {
        if (subset.size() == size) {
            std::vector<RatVector> vecs;
            vecs.reserve(subset.size());
            for (std::size_t i : subset) vecs.push_back(support[i].point.to_rat_vector());
            LinSubspace e = LinSubspace::span(ambient_dim + 1, vecs);
            if (e.rank() <= ambient_dim && seen.insert(e.key()).second) {
                std::uint64_t mask = 0;
                for (std::size_t j = 0; j < s; ++j) {
                    if (e.contains(support[j].point.to_rat_vector())) mask |= 1ull << j;
                }
                out.push_back({std::move(e), mask});
            }
            return;
        }
        for (std::size_t i = next; i < s; ++i) {
            subset.push_back(i);
            self(self, i + 1, size);
            subset.pop_back();
        }
    };
    for (std::size_t size = max_size; size >= 1; --size) visit(visit, 0, size);
    return out;
}

StabilityReport absolute_verdict(const Configuration& c) {
    if (!c.holds_points()) {
        throw UnsupportedError("absolute verdict is defined for point configurations");
    }
    if (c.is_empty()) throw std::invalid_argument("empty configuration");

    const std::size_t n = c.ambient_dim();
    const std::uint64_t m = c.total_multiplicity();
    const std::vector<WeightedPoint> support = support_points(c);

    bool equality_somewhere = false;
    for (const auto& sp : enumerate_spanned_subspaces(support, n)) {
        std::uint64_t k = 0;
        for (std::size_t j = 0; j < support.size(); ++j) {
            if (sp.member_mask & (1ull << j)) k += support[j].multiplicity;
        }
        const std::uint64_t lhs = k * (n + 1);
        const std::uint64_t rhs = sp.subspace.rank() * m;
        if (lhs > rhs) {
            auto [lambda, weight] = destabilizing_certificate(c, sp.subspace);
            StabilityReport report;
            report.verdict = Verdict::Unstable;
            report.certificate = Certificate{sp.subspace, std::move(lambda), weight.value};
            return report;
        }
        if (lhs == rhs) equality_somewhere = true;
    }

    StabilityReport report;
    if (!equality_somewhere) {
        report.verdict = Verdict::Stable;
    } else if (n >= 2) {
        report.verdict = Verdict::SemistablePolystabilityUndetermined;
    } else {
        // Binary forms: the only non-stable closed orbit is two distinct
        // points of equal weight.
        report.verdict = (support.size() == 2 &&
                          support[0].multiplicity == support[1].multiplicity)
                             ? Verdict::Polystable
                             : Verdict::StrictlySemistable;
    }
    return report;
}

std::pair<OnePS, MumfordWeight> destabilizing_certificate(const Configuration& c,
                                                          const LinSubspace& e_subspace) {
    if (!c.holds_points()) {
        throw UnsupportedError("certificates are defined for point configurations");
    }
    if (e_subspace.coord_count() != c.coord_count()) {
        throw std::invalid_argument("subspace ambient dimension mismatch");
    }
    const std::size_t n = c.ambient_dim();
    if (e_subspace.is_empty() || e_subspace.rank() > n) {
        throw PreconditionError("certificate subspace must be proper and non-empty");
    }
    const std::uint64_t m = c.total_multiplicity();
    std::uint64_t k = 0;
    for (const auto& wp : c.points()) {
        if (e_subspace.contains(wp.point.to_rat_vector())) k += wp.multiplicity;
    }
    const std::size_t e = static_cast<std::size_t>(e_subspace.dim_proj());
    if (k * (n + 1) <= (e + 1) * m) {
        throw PreconditionError("subspace does not violate the stability inequality");
    }

    // Basis change with the subspace basis in the first e+1 columns, padded
    // greedily by unit vectors.
    std::vector<RatVector> cols;
    for (std::size_t i = 0; i < e_subspace.rank(); ++i) cols.push_back(e_subspace.basis().row(i));
    RatMatrix probe = RatMatrix::from_rows(n + 1, cols);
    for (std::size_t i = 0; i <= n && cols.size() < n + 1; ++i) {
        RatVector unit(n + 1);
        unit[i] = 1;
        probe.append_row(unit);
        if (rank(probe) == cols.size() + 1) {
            cols.push_back(unit);
        } else {
            probe = RatMatrix::from_rows(n + 1, cols);
        }
    }
    RatMatrix g(n + 1, n + 1);
    for (std::size_t j = 0; j < n + 1; ++j) {
        for (std::size_t i = 0; i < n + 1; ++i) g.at(i, j) = cols[j][i];
    }

    std::vector<std::int64_t> q(n + 1);
    for (std::size_t i = 0; i < n + 1; ++i) {
        q[i] = (i <= e) ? -static_cast<std::int64_t>(n - e) : static_cast<std::int64_t>(e + 1);
    }
    OnePS lambda(std::move(q), std::move(g));
    MumfordWeight weight = mumford_weight(c, lambda);
    return {std::move(lambda), std::move(weight)};
}

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::int64_t vec_gcd(const std::vector<std::int64_t>& v) {
    std::int64_t g = 0;
    for (auto x : v) g = std::gcd(g, x < 0 ? -x : x);
    return g;
}

RatMatrix to_rat_matrix(const IntMatrix& m) {
    RatMatrix out(m.size(), m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < m.size(); ++j) out.at(i, j) = Rational(m[i][j]);
    }
    return out;
}

// Fraction-free Bareiss determinant test; exact in int64 for the {-1,0,1}
// entries drawn below as long as the matrix stays small.
bool int_matrix_invertible(const IntMatrix& m) {
    const std::size_t n = m.size();
    if (n > 8) return is_invertible(to_rat_matrix(m));
    std::int64_t a[8][8];
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] = m[i][j];
    }
    std::int64_t prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && a[p][k] == 0) ++p;
            if (p == n) return false;
            for (std::size_t j = 0; j < n; ++j) std::swap(a[k][j], a[p][j]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return a[n - 1][n - 1] != 0;
}

}  // namespace

std::vector<std::vector<std::int64_t>> oracle_weight_rays(std::size_t coord_count,
                                                          std::int64_t bound) {
    if (coord_count == 0) throw std::invalid_argument("need at least one coordinate");
    if (bound < 1) throw PreconditionError("oracle bound must be at least 1");
    double box = 1;
    for (std::size_t i = 0; i < coord_count; ++i) box *= static_cast<double>(2 * bound + 1);
    if (box > 2e7) throw PreconditionError("oracle weight box is too large for this dimension");

    std::vector<std::vector<std::int64_t>> rays;
    std::set<std::vector<std::int64_t>> seen;
    std::vector<std::int64_t> q(coord_count, -bound);
    while (true) {
        std::int64_t s = 0;
        for (auto w : q) s += w;
        std::vector<std::int64_t> norm(coord_count);
        for (std::size_t i = 0; i < coord_count; ++i) {
            norm[i] = static_cast<std::int64_t>(coord_count) * q[i] - s;
        }
        if (const std::int64_t g = vec_gcd(norm); g > 0) {
            for (auto& w : norm) w /= g;
            if (seen.insert(norm).second) rays.push_back(norm);
        }
        std::size_t i = 0;
        while (i < coord_count && q[i] == bound) q[i++] = -bound;
        if (i == coord_count) break;
        ++q[i];
    }
    return rays;
}

std::vector<IntMatrix> oracle_sample_conjugations(std::size_t coord_count, std::size_t count,
                                                  std::uint64_t seed) {
    std::vector<IntMatrix> out;
    out.reserve(count);
    std::uint64_t state = seed;
    while (out.size() < count) {
        IntMatrix m(coord_count, std::vector<std::int64_t>(coord_count));
        for (auto& row : m) {
            for (auto& x : row) x = static_cast<std::int64_t>(splitmix64(state) % 3) - 1;
        }
        if (int_matrix_invertible(m)) out.push_back(std::move(m));
    }
    return out;
}

std::optional<std::pair<OnePS, MumfordWeight>> oracle_search(const Configuration& c,
                                                             std::int64_t bound,
                                                             std::size_t samples,
                                                             std::uint64_t seed) {
    if (!c.holds_points()) {
        throw UnsupportedError("oracle search is defined for point configurations");
    }
    const std::size_t nc = c.coord_count();
    const auto rays = oracle_weight_rays(nc, bound);

    // Conjugation frames: identity, coordinate permutations, seeded samples.
    std::vector<std::optional<RatMatrix>> frames;
    frames.emplace_back(std::nullopt);
    std::vector<std::size_t> perm(nc);
    for (std::size_t i = 0; i < nc; ++i) perm[i] = i;
    while (std::next_permutation(perm.begin(), perm.end())) {
        RatMatrix p(nc, nc);
        for (std::size_t i = 0; i < nc; ++i) p.at(perm[i], i) = 1;
        frames.emplace_back(std::move(p));
    }
    for (const auto& m : oracle_sample_conjugations(nc, samples, seed)) {
        frames.emplace_back(to_rat_matrix(m));
    }

    for (const auto& frame : frames) {
        // Supports after undoing the frame, as index lists.
        std::optional<RatMatrix> inv;
        if (frame) inv = inverse(*frame);
        std::vector<std::vector<std::size_t>> supports;
        std::vector<std::int64_t> mults;
        for (const auto& wp : c.points()) {
            RatVector v = wp.point.to_rat_vector();
            if (inv) v = matvec(*inv, v);
            std::vector<std::size_t> sup;
            for (std::size_t i = 0; i < nc; ++i) {
                if (!v[i].is_zero()) sup.push_back(i);
            }
            supports.push_back(std::move(sup));
            mults.push_back(static_cast<std::int64_t>(wp.multiplicity));
        }
        for (const auto& ray : rays) {
            std::int64_t mu = 0;
            for (std::size_t j = 0; j < supports.size(); ++j) {
                std::int64_t best = ray[supports[j][0]];
                for (std::size_t i : supports[j]) best = std::max(best, ray[i]);
                mu -= mults[j] * best;
            }
            if (mu > 0) {
                OnePS lambda(ray, frame);
                MumfordWeight w = mumford_weight(c, lambda);
                return std::make_pair(std::move(lambda), std::move(w));
            }
        }
    }
    return std::nullopt;
}

}  // namespace chowstab
