#include "chowstab/decomp.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace chowstab {

namespace {

struct UnionFind {
    std::vector<std::size_t> parent;

    explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void join(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

std::vector<std::size_t> support_indices(const RatVector& v) {
    std::vector<std::size_t> sup;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_zero()) sup.push_back(i);
    }
    return sup;
}

}  // namespace

Decomposition decompose_span(const Configuration& c) {
    if (!c.holds_points()) {
        throw UnsupportedError("span decomposition is defined for point configurations");
    }
    if (c.is_empty()) throw std::invalid_argument("empty configuration");
    const std::size_t nc = c.coord_count();

    // Greedy maximal independent subset of support points, input order.
    std::vector<RatVector> basis_cols;
    RatMatrix probe(0, nc);
    for (const auto& wp : support_points(c)) {
        RatVector v = wp.point.to_rat_vector();
        probe.append_row(v);
        if (rank(probe) == basis_cols.size() + 1) {
            basis_cols.push_back(std::move(v));
        } else {
            probe = RatMatrix::from_rows(nc, basis_cols);
        }
    }
    const std::size_t d = basis_cols.size();

    // Complete to a full basis with unit vectors.
    for (std::size_t i = 0; i < nc && basis_cols.size() < nc; ++i) {
        RatVector unit(nc);
        unit[i] = 1;
        probe = RatMatrix::from_rows(nc, basis_cols);
        probe.append_row(unit);
        if (rank(probe) == basis_cols.size() + 1) basis_cols.push_back(std::move(unit));
    }

    Decomposition out{RatMatrix(nc, nc), RatMatrix(nc, nc), {}};
    for (std::size_t j = 0; j < nc; ++j) {
        for (std::size_t i = 0; i < nc; ++i) out.normalizer_inv.at(i, j) = basis_cols[j][i];
    }
    out.normalizer = inverse(out.normalizer_inv);

    // Normalized coordinates: supports live on the first d indices.
    std::vector<std::vector<std::size_t>> supports;
    UnionFind uf(d);
    for (const auto& wp : c.points()) {
        RatVector y = matvec(out.normalizer, wp.point.to_rat_vector());
        std::vector<std::size_t> sup = support_indices(y);
        for (std::size_t i : sup) {
            if (i >= d) throw std::logic_error("point escapes the span of the chosen basis");
            uf.join(sup[0], i);
        }
        supports.push_back(std::move(sup));
    }

    std::map<std::size_t, std::vector<std::size_t>> classes;  // root -> indices, ordered
    for (std::size_t i = 0; i < d; ++i) classes[uf.find(i)].push_back(i);

    std::vector<std::vector<std::size_t>> index_sets;
    for (auto& [root, indices] : classes) index_sets.push_back(indices);
    std::sort(index_sets.begin(), index_sets.end());

    for (const auto& indices : index_sets) {
        DecompComponent comp{LinSubspace::empty(nc), indices, {}};
        std::vector<RatVector> span_vecs;
        for (std::size_t i : indices) span_vecs.push_back(basis_cols[i]);
        comp.subspace = LinSubspace::span(nc, span_vecs);
        const std::size_t root = uf.find(indices[0]);
        for (std::size_t j = 0; j < supports.size(); ++j) {
            if (uf.find(supports[j][0]) == root) comp.members.push_back(j);
        }
        out.components.push_back(std::move(comp));
    }
    return out;
}

Configuration restrict_component(const Configuration& c, const Decomposition& d,
                                 std::size_t component) {
    const DecompComponent& comp = d.components.at(component);
    std::vector<WeightedPoint> pts;
    pts.reserve(comp.members.size());
    for (std::size_t j : comp.members) {
        const auto& wp = c.points()[j];
        RatVector y = matvec(d.normalizer, wp.point.to_rat_vector());
        RatVector intrinsic;
        intrinsic.reserve(comp.index_set.size());
        for (std::size_t i : comp.index_set) intrinsic.push_back(y[i]);
        pts.push_back({ProjPoint(intrinsic), wp.multiplicity});
    }
    return Configuration::of_points(comp.index_set.size() - 1, std::move(pts));
}

RatVector embed_component_vector(const Decomposition& d, std::size_t component,
                                 const RatVector& intrinsic) {
    const DecompComponent& comp = d.components.at(component);
    if (intrinsic.size() != comp.index_set.size()) {
        throw std::invalid_argument("intrinsic vector length does not match the component");
    }
    RatVector padded(d.normalizer.rows());
    for (std::size_t k = 0; k < intrinsic.size(); ++k) padded[comp.index_set[k]] = intrinsic[k];
    return matvec(d.normalizer_inv, padded);
}

namespace {

/// Certificate of an unstable component transported to ambient coordinates:
/// intrinsic weights are padded with zeros at the other components' indices,
/// so the other points contribute nothing and the ambient Mumford weight
/// equals the intrinsic one.
Certificate lift_certificate(const Configuration& c, const Decomposition& d,
                             std::size_t component, const Certificate& intrinsic) {
    const DecompComponent& comp = d.components[component];
    const std::size_t nc = c.coord_count();

    std::vector<RatVector> ambient_rows;
    for (std::size_t i = 0; i < intrinsic.subspace.basis().rows(); ++i) {
        ambient_rows.push_back(
            embed_component_vector(d, component, intrinsic.subspace.basis().row(i)));
    }
    LinSubspace ambient_e = LinSubspace::span(nc, ambient_rows);

    std::vector<std::int64_t> q(nc, 0);
    for (std::size_t k = 0; k < comp.index_set.size(); ++k) {
        q[comp.index_set[k]] = intrinsic.lambda.weights()[k];
    }

    RatMatrix h = RatMatrix::identity(nc);
    if (intrinsic.lambda.conjugation()) {
        const RatMatrix& hc = *intrinsic.lambda.conjugation();
        for (std::size_t a = 0; a < comp.index_set.size(); ++a) {
            for (std::size_t b = 0; b < comp.index_set.size(); ++b) {
                h.at(comp.index_set[a], comp.index_set[b]) = hc.at(a, b);
            }
        }
    }
    OnePS lambda(std::move(q), multiply(d.normalizer_inv, h));
    MumfordWeight w = mumford_weight(c, lambda);
    return Certificate{std::move(ambient_e), std::move(lambda), w.value};
}

}  // namespace

StabilityReport relative_verdict(const Configuration& c) {
    const Decomposition d = decompose_span(c);

    StabilityReport report;
    report.verdict = Verdict::Stable;
    std::optional<std::size_t> first_unstable;
    for (std::size_t j = 0; j < d.components.size(); ++j) {
        StabilityReport sub;
        if (d.components[j].index_set.size() == 1) {
            sub.verdict = Verdict::Stable;  // a point in P^0
        } else {
            sub = absolute_verdict(restrict_component(c, d, j));
        }
        if (verdict_severity(sub.verdict) > verdict_severity(report.verdict)) {
            report.verdict = sub.verdict;
        }
        if (sub.verdict == Verdict::Unstable && !first_unstable) first_unstable = j;
        report.component_reports.push_back(std::move(sub));
    }
    if (first_unstable) {
        report.certificate = lift_certificate(
            c, d, *first_unstable, *report.component_reports[*first_unstable].certificate);
    }
    return report;
}

}  // namespace chowstab
