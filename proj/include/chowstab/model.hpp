#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chowstab/ratlin.hpp"

namespace chowstab {

/// Point of projective space, stored as a primitive integer vector:
/// cleared denominators, gcd of entries 1, first nonzero entry positive.
class ProjPoint {
public:
    explicit ProjPoint(std::vector<BigInt> coords);
    explicit ProjPoint(const RatVector& coords);

    const std::vector<BigInt>& coords() const { return coords_; }
    std::size_t coord_count() const { return coords_.size(); }
    std::size_t ambient_dim() const { return coords_.size() - 1; }

    RatVector to_rat_vector() const;
    std::string key() const;

    friend bool operator==(const ProjPoint& a, const ProjPoint& b) {
        return a.coords_ == b.coords_;
    }
    friend bool operator!=(const ProjPoint& a, const ProjPoint& b) { return !(a == b); }

private:
    std::vector<BigInt> coords_;
};

struct WeightedPoint {
    ProjPoint point;
    std::uint64_t multiplicity;
};

struct WeightedSubspace {
    LinSubspace subspace;
    std::uint64_t multiplicity;
};

/// Weighted configuration of points or of equidimensional linear subspaces
/// in a fixed P^n. Multiplicities stay symbolic; each operation applies its
/// own exponent to them.
class Configuration {
public:
    static Configuration of_points(std::size_t ambient_dim, std::vector<WeightedPoint> pts);
    static Configuration of_subspaces(std::size_t ambient_dim, std::vector<WeightedSubspace> subs);

    bool holds_points() const { return holds_points_; }
    std::size_t ambient_dim() const { return ambient_dim_; }  // projective n
    std::size_t coord_count() const { return ambient_dim_ + 1; }
    std::size_t component_count() const;
    bool is_empty() const { return component_count() == 0; }
    std::uint64_t total_multiplicity() const;

    const std::vector<WeightedPoint>& points() const;
    const std::vector<WeightedSubspace>& subspaces() const;

    /// Common projective dimension of the components (0 for points).
    std::size_t component_dim() const;

    friend bool operator==(const Configuration& a, const Configuration& b);
    friend bool operator!=(const Configuration& a, const Configuration& b) { return !(a == b); }

private:
    Configuration() = default;

    bool holds_points_ = true;
    std::size_t ambient_dim_ = 0;
    std::vector<WeightedPoint> points_;
    std::vector<WeightedSubspace> subspaces_;
};

/// One-parameter subgroup in diagonal normal form: t maps to
/// g · diag(t^{q_0}, ..., t^{q_n}) · g^{-1} with an optional basis change g.
class OnePS {
public:
    explicit OnePS(std::vector<std::int64_t> weights,
                   std::optional<RatMatrix> conjugation = std::nullopt);

    const std::vector<std::int64_t>& weights() const { return weights_; }
    const std::optional<RatMatrix>& conjugation() const { return conjugation_; }
    std::size_t coord_count() const { return weights_.size(); }

    std::int64_t weight_sum() const;
    bool is_trivial() const;  // all weights equal
    OnePS inverse() const;    // negated weights, same frame

private:
    std::vector<std::int64_t> weights_;
    std::optional<RatMatrix> conjugation_;
};

/// Mean-zero normalization: q' = (n+1)·q - (Σq)·(1,...,1).
/// The result is trivial exactly when the input weights are all equal.
OnePS normalize_one_ps(const std::vector<std::int64_t>& q);
OnePS normalize_one_ps(const OnePS& lambda);

enum class Verdict {
    Unstable,
    StrictlySemistable,  // semistable, not stable, not polystable
    SemistablePolystabilityUndetermined,
    Polystable,
    Stable,
};

std::string to_string(Verdict v);

/// Severity rank for aggregating component verdicts (higher is worse).
int verdict_severity(Verdict v);

struct Certificate {
    LinSubspace subspace;  // violating subspace E
    OnePS lambda;          // destabilizing subgroup
    Rational mu;           // its Mumford weight, strictly positive
};

struct StabilityReport {
    Verdict verdict;
    std::optional<Certificate> certificate;
    std::vector<StabilityReport> component_reports;
};

/// Configuration transported by an invertible coordinate change.
Configuration apply_transform(const Configuration& c, const RatMatrix& g);

struct ParsedInput {
    Configuration config;
    std::optional<OnePS> one_ps;
};

/// Parses and validates an input document (see README for the schema).
ParsedInput parse_document(const std::string& json_text);
Configuration parse_configuration(const std::string& json_text);

/// Canonical serialization; parse is a left inverse of this.
std::string serialize_document(const Configuration& c,
                               const std::optional<OnePS>& one_ps = std::nullopt);

}  // namespace chowstab
