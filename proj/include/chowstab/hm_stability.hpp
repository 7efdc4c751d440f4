#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "chowstab/model.hpp"

namespace chowstab {

struct MumfordWeight {
    Rational value;  // Σ multiplicity_j · contribution_j
    std::vector<std::pair<std::size_t, Rational>> per_component;
};

/// Weight of the subgroup action on the limit line of the configuration's
/// Chow form, under (g·f)(x) = f(g^{-1}x). Per point the contribution is
/// -max{ q_i : i in support } after undoing the subgroup's basis change;
/// the total sums contributions linearly in the multiplicities.
///
/// Requires mean-zero weights (normalize_one_ps). The trivial subgroup is
/// allowed and yields 0.
MumfordWeight mumford_weight(const Configuration& c, const OnePS& lambda);

/// Distinct points of the configuration with accumulated multiplicities,
/// in order of first appearance.
std::vector<WeightedPoint> support_points(const Configuration& c);

struct SpannedSubspace {
    LinSubspace subspace;
    std::uint64_t member_mask;  // bit j set iff support point j lies in it
};

/// All distinct proper subspaces spanned by nonempty subsets of at most n
/// support points, each with the support points it contains. Subsets are
/// visited in lexicographic index order and deduplicated by canonical form;
/// the returned order is the order of first discovery.
std::vector<SpannedSubspace> enumerate_spanned_subspaces(
    const std::vector<WeightedPoint>& support, std::size_t ambient_dim);

/// Chow stability of a point configuration: stable iff every proper linear
/// subspace E contains strictly fewer than (dim E + 1)/(n+1) of the m points
/// (counted with multiplicity). Equality somewhere, with no violation, is
/// strict semistability; on P^1 that refines to polystable exactly for two
/// distinct points of equal weight, while for n >= 2 polystability is left
/// undetermined. A violation yields an unstable verdict together with a
/// destabilizing certificate whose weight is recomputed independently.
StabilityReport absolute_verdict(const Configuration& c);

/// Destabilizing subgroup adapted to a violating subspace E: the basis change
/// maps coordinates onto E, the weights are -(n-e) on E and e+1 across, and
/// the resulting Mumford weight is k(n-e) - (m-k)(e+1) > 0.
std::pair<OnePS, MumfordWeight> destabilizing_certificate(const Configuration& c,
                                                          const LinSubspace& e_subspace);

/// Small integer matrix used for oracle conjugations.
using IntMatrix = std::vector<std::vector<std::int64_t>>;

/// Deterministic list of mean-zero weight rays: every vector in
/// [-bound, bound]^{n+1} normalized to sum zero, deduplicated up to positive
/// scale, in enumeration order.
std::vector<std::vector<std::int64_t>> oracle_weight_rays(std::size_t coord_count,
                                                          std::int64_t bound);

/// Deterministic pseudo-random invertible {-1,0,1} matrices drawn from `seed`.
std::vector<IntMatrix> oracle_sample_conjugations(std::size_t coord_count, std::size_t count,
                                                  std::uint64_t seed);

/// Brute-force instability search, independent of the verdict machinery:
/// sweeps every weight ray against the identity, every coordinate
/// permutation, and `samples` seeded random conjugations, returning the
/// first subgroup with strictly positive Mumford weight if one exists.
/// Conjugations are tried in the order just listed; rays in enumeration
/// order within each.
std::optional<std::pair<OnePS, MumfordWeight>> oracle_search(const Configuration& c,
                                                             std::int64_t bound,
                                                             std::size_t samples,
                                                             std::uint64_t seed);

}  // namespace chowstab
