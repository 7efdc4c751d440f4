#pragma once

#include <variant>

#include "chowstab/model.hpp"

namespace chowstab {

struct FlatLimit {
    std::variant<ProjPoint, LinSubspace> limit;  // in the original coordinates
    std::vector<std::int64_t> surviving_weights;  // weights on the limit, sorted, d+1 entries
    bool invariant;                               // limit equals the input
};

/// e(N): sum of the surviving coordinate weights of the flat limit.
std::int64_t limit_weight_total(const FlatLimit& fl);

/// Limit of a point trajectory under the subgroup: the coordinates at the
/// minimal weight level of the support survive.
FlatLimit flat_limit_point(const ProjPoint& p, const OnePS& lambda);

/// Limit of a linear subspace: the degree-one part of its ideal is
/// echelonized along the weight filtration so that the initial forms (the
/// terms of each form at its maximal weight level) are independent; the
/// limit is the subspace they cut out. The surviving weights are the full
/// weight multiset minus the initial-form levels.
FlatLimit flat_limit_subspace(const LinSubspace& s, const OnePS& lambda);

/// Closed-form Chow weight of a degree-one center N^d in P^n:
///   n!/(2 (d+1)! (n-d-2)!) · ( e(N) - (d+1)/(n+1) · Σ q_i ).
/// Positive weight means Chow-unstable for this subgroup. Requires
/// codimension at least two (d < n-1).
Rational component_chow_weight(const ProjPoint& p, const OnePS& lambda);
Rational component_chow_weight(const LinSubspace& s, const OnePS& lambda);

struct ChowComponentEntry {
    std::size_t index;
    std::int64_t e;
    Rational w;
};

struct ChowWeightReport {
    std::vector<ChowComponentEntry> per_component;
    Rational total;  // Σ m_j^{n-d-1} · w_j
    std::size_t ambient_dim;
    std::size_t component_dim;
    std::vector<std::int64_t> weights;
};

/// Multiplicity-weighted Chow weight of a configuration of pairwise disjoint
/// equidimensional centers; component weights enter with exponent n-d-1 on
/// the multiplicities.
ChowWeightReport config_chow_weight(const Configuration& c, const OnePS& lambda);

struct FutakiReport {
    Rational base_futaki;
    Rational correction_numerator;  // Σ m_j^{n-d-1} w_j, coefficient of r^{-(n-d-1)}
    std::size_t exponent;           // n - d - 1
    bool fires;                     // base 0 and coefficient strictly positive
    std::string verdict_text;
};

/// Leading correction of the Futaki invariant of the blown-up test
/// configuration. With vanishing base invariant a strictly positive
/// coefficient certifies K-instability for r large, hence no cscK metric in
/// the corresponding classes.
FutakiReport futaki_correction(const Configuration& c, const OnePS& lambda,
                               const Rational& base_futaki = Rational(0));

/// Necessary condition for the subgroup to define a relative (centralizer)
/// direction: its generator commutes with every given torus generator.
bool commutation_check(const OnePS& lambda, const std::vector<RatMatrix>& torus_generators);

}  // namespace chowstab
