#include "chowstab/chow_weight.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace chowstab {

namespace {

void check_sizes(std::size_t geom_coords, const OnePS& lambda) {
    if (lambda.coord_count() != geom_coords) {
        throw std::invalid_argument("subgroup weight count does not match the ambient dimension");
    }
}

}  // namespace

std::int64_t limit_weight_total(const FlatLimit& fl) {
    std::int64_t e = 0;
    for (auto w : fl.surviving_weights) e += w;
    return e;
}

FlatLimit flat_limit_point(const ProjPoint& p, const OnePS& lambda) {
    check_sizes(p.coord_count(), lambda);
    const auto& q = lambda.weights();

    RatVector v = p.to_rat_vector();
    if (lambda.conjugation()) v = matvec(inverse(*lambda.conjugation()), v);

    std::int64_t qmin = 0;
    bool seen = false;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].is_zero()) continue;
        if (!seen || q[i] < qmin) qmin = q[i];
        seen = true;
    }
    RatVector limit_coords(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_zero() && q[i] == qmin) limit_coords[i] = v[i];
    }
    if (lambda.conjugation()) limit_coords = matvec(*lambda.conjugation(), limit_coords);
    ProjPoint limit(limit_coords);
    const bool invariant = (limit == p);
    return FlatLimit{std::move(limit), {qmin}, invariant};
}

FlatLimit flat_limit_subspace(const LinSubspace& s, const OnePS& lambda) {
    check_sizes(s.coord_count(), lambda);
    if (s.is_empty()) throw std::invalid_argument("flat limit of the empty subspace");
    const std::size_t nc = s.coord_count();
    const auto& q = lambda.weights();

    LinSubspace frame = s;
    if (lambda.conjugation()) frame = s.transformed(inverse(*lambda.conjugation()));

    // Degree-one part of the ideal: the forms vanishing on the subspace.
    const LinSubspace ideal = frame.annihilator();
    const std::size_t c = ideal.rank();

    // Echelonize along the weight filtration: walking the levels upward,
    // extend a basis of { forms supported on weights <= level }; each new
    // form has its initial part exactly at the current level, and initial
    // parts at distinct levels live on disjoint coordinates.
    std::vector<std::int64_t> levels_sorted(q.begin(), q.end());
    std::sort(levels_sorted.begin(), levels_sorted.end());
    levels_sorted.erase(std::unique(levels_sorted.begin(), levels_sorted.end()),
                        levels_sorted.end());

    std::vector<RatVector> adapted;
    std::vector<std::int64_t> initial_levels;
    for (std::int64_t level : levels_sorted) {
        std::vector<RatVector> coord_rows;
        for (std::size_t i = 0; i < nc; ++i) {
            if (q[i] <= level) {
                RatVector unit(nc);
                unit[i] = 1;
                coord_rows.push_back(std::move(unit));
            }
        }
        const LinSubspace filtered =
            intersect(ideal, LinSubspace::span(nc, coord_rows));
        for (std::size_t i = 0; i < filtered.basis().rows(); ++i) {
            RatVector r = filtered.basis().row(i);
            RatMatrix probe = RatMatrix::from_rows(nc, adapted);
            probe.append_row(r);
            if (rank(probe) == adapted.size() + 1) {
                adapted.push_back(std::move(r));
                initial_levels.push_back(level);
            }
        }
    }
    if (adapted.size() != c) throw std::logic_error("weight echelonization lost rank");

    std::vector<RatVector> initial_forms;
    for (std::size_t k = 0; k < c; ++k) {
        RatVector in(nc);
        for (std::size_t i = 0; i < nc; ++i) {
            if (q[i] == initial_levels[k]) in[i] = adapted[k][i];
        }
        initial_forms.push_back(std::move(in));
    }
    const RatMatrix initial = RatMatrix::from_rows(nc, initial_forms);
    if (rank(initial) != c) throw std::logic_error("initial forms are dependent");

    LinSubspace limit = LinSubspace::span(nc, {});
    {
        const RatMatrix kernel = nullspace(initial);
        std::vector<RatVector> rows;
        for (std::size_t i = 0; i < kernel.rows(); ++i) rows.push_back(kernel.row(i));
        limit = LinSubspace::span(nc, rows);
    }
    if (lambda.conjugation()) limit = limit.transformed(*lambda.conjugation());

    // Surviving weights: the full multiset minus the initial-form levels.
    std::multiset<std::int64_t> surviving(q.begin(), q.end());
    for (std::int64_t level : initial_levels) surviving.erase(surviving.find(level));
    std::vector<std::int64_t> surviving_vec(surviving.begin(), surviving.end());

    const bool invariant = (limit == s);
    return FlatLimit{std::move(limit), std::move(surviving_vec), invariant};
}

namespace {

Rational chow_weight_closed_form(std::size_t n, std::size_t d, std::int64_t e,
                                 std::int64_t weight_sum) {
    if (d + 1 >= n) {
        throw PreconditionError("chow weight needs codimension at least two (d < n-1)");
    }
    const Rational factor(factorial(n), 2 * factorial(d + 1) * factorial(n - d - 2));
    const Rational centered =
        Rational(e) - Rational(BigInt(d + 1), BigInt(n + 1)) * Rational(weight_sum);
    return factor * centered;
}

}  // namespace

Rational component_chow_weight(const ProjPoint& p, const OnePS& lambda) {
    const FlatLimit fl = flat_limit_point(p, lambda);
    return chow_weight_closed_form(p.ambient_dim(), 0, limit_weight_total(fl),
                                   lambda.weight_sum());
}

Rational component_chow_weight(const LinSubspace& s, const OnePS& lambda) {
    const FlatLimit fl = flat_limit_subspace(s, lambda);
    return chow_weight_closed_form(s.ambient_dim(), static_cast<std::size_t>(s.dim_proj()),
                                   limit_weight_total(fl), lambda.weight_sum());
}

ChowWeightReport config_chow_weight(const Configuration& c, const OnePS& lambda) {
    if (c.is_empty()) throw std::invalid_argument("empty configuration");
    check_sizes(c.coord_count(), lambda);
    const std::size_t n = c.ambient_dim();
    const std::size_t d = c.component_dim();
    if (d + 1 >= n) {
        throw PreconditionError("chow weight needs codimension at least two (d < n-1)");
    }

    // The centers must be pairwise disjoint.
    if (c.holds_points()) {
        for (std::size_t a = 0; a < c.points().size(); ++a) {
            for (std::size_t b = a + 1; b < c.points().size(); ++b) {
                if (c.points()[a].point == c.points()[b].point) {
                    throw PreconditionError("components " + std::to_string(a) + " and " +
                                            std::to_string(b) + " coincide");
                }
            }
        }
    } else {
        for (std::size_t a = 0; a < c.subspaces().size(); ++a) {
            for (std::size_t b = a + 1; b < c.subspaces().size(); ++b) {
                if (!intersect(c.subspaces()[a].subspace, c.subspaces()[b].subspace).is_empty()) {
                    throw PreconditionError("components " + std::to_string(a) + " and " +
                                            std::to_string(b) + " are not disjoint");
                }
            }
        }
    }

    ChowWeightReport report;
    report.ambient_dim = n;
    report.component_dim = d;
    report.weights = lambda.weights();
    report.total = 0;
    const unsigned long exponent = static_cast<unsigned long>(n - d - 1);
    const std::size_t count = c.component_count();
    for (std::size_t j = 0; j < count; ++j) {
        std::int64_t e;
        Rational w;
        std::uint64_t mult;
        if (c.holds_points()) {
            const auto& wp = c.points()[j];
            e = limit_weight_total(flat_limit_point(wp.point, lambda));
            w = component_chow_weight(wp.point, lambda);
            mult = wp.multiplicity;
        } else {
            const auto& ws = c.subspaces()[j];
            e = limit_weight_total(flat_limit_subspace(ws.subspace, lambda));
            w = component_chow_weight(ws.subspace, lambda);
            mult = ws.multiplicity;
        }
        report.per_component.push_back({j, e, w});
        report.total += Rational(int_pow(BigInt(mult), exponent)) * w;
    }
    return report;
}

FutakiReport futaki_correction(const Configuration& c, const OnePS& lambda,
                               const Rational& base_futaki) {
    const ChowWeightReport cw = config_chow_weight(c, lambda);
    FutakiReport report;
    report.base_futaki = base_futaki;
    report.correction_numerator = cw.total;
    report.exponent = cw.ambient_dim - cw.component_dim - 1;
    report.fires = base_futaki.is_zero() && cw.total > Rational(0);
    if (report.fires) {
        report.verdict_text =
            "center is Chow-unstable for this subgroup (positive weight): the blown-up "
            "polarizations are K-unstable and carry no cscK metric for r >> 0";
    } else if (!base_futaki.is_zero()) {
        report.verdict_text = "no verdict: base Futaki invariant is nonzero";
    } else {
        report.verdict_text = "no verdict: leading correction is not positive";
    }
    return report;
}

bool commutation_check(const OnePS& lambda, const std::vector<RatMatrix>& torus_generators) {
    const std::size_t nc = lambda.coord_count();
    RatMatrix diag(nc, nc);
    for (std::size_t i = 0; i < nc; ++i) diag.at(i, i) = Rational(lambda.weights()[i]);
    RatMatrix generator_of_lambda = diag;
    if (lambda.conjugation()) {
        generator_of_lambda =
            multiply(multiply(*lambda.conjugation(), diag), inverse(*lambda.conjugation()));
    }
    for (const auto& g : torus_generators) {
        if (g.rows() != nc || g.cols() != nc) {
            throw std::invalid_argument("torus generator size mismatch");
        }
        if (multiply(generator_of_lambda, g) != multiply(g, generator_of_lambda)) return false;
    }
    return true;
}

}  // namespace chowstab
