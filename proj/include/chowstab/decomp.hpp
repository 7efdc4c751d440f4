#pragma once

#include "chowstab/hm_stability.hpp"
#include "chowstab/model.hpp"

namespace chowstab {

struct DecompComponent {
    LinSubspace subspace;                // Λ_j in the original coordinates
    std::vector<std::size_t> index_set;  // basis indices in normalized coordinates
    std::vector<std::size_t> members;    // input component indices lying in Λ_j
};

/// Decomposition of the span of a point configuration into the unique
/// coarsest family of mutually disjoint subspaces, each spanned by the
/// points it contains.
struct Decomposition {
    RatMatrix normalizer;      // g: maps the chosen independent points to unit vectors
    RatMatrix normalizer_inv;  // columns are the chosen basis, in order
    std::vector<DecompComponent> components;
};

/// Computes the decomposition constructively: a maximal independent subset
/// of support points is chosen greedily in input order and mapped to
/// coordinate points; in those coordinates each point spans the coordinate
/// subspace of its support, and the components are the classes of the
/// transitive closure of "supports overlap", mapped back.
Decomposition decompose_span(const Configuration& c);

/// Intrinsic configuration of a component: its points in the coordinates of
/// Λ_j given by the normalized chart, multiplicities preserved.
Configuration restrict_component(const Configuration& c, const Decomposition& d,
                                 std::size_t component);

/// Ambient vector of an intrinsic component vector (inverse of restriction).
RatVector embed_component_vector(const Decomposition& d, std::size_t component,
                                 const RatVector& intrinsic);

/// Stability relative to the centralizer of the configuration's torus:
/// componentwise absolute stability of the restricted configurations, with
/// the worst component verdict aggregated. Single-point components are
/// stable by convention. An unstable component's certificate is lifted back
/// to ambient coordinates.
StabilityReport relative_verdict(const Configuration& c);

}  // namespace chowstab
