#include "chowstab/model.hpp"

#include <algorithm>

#include <json.hpp>

namespace chowstab {

namespace {

std::vector<BigInt> primitive_from_rationals(const RatVector& coords) {
    BigInt lcm = 1;
    for (const auto& c : coords) {
        BigInt l;
        mpz_lcm(l.get_mpz_t(), lcm.get_mpz_t(), c.denominator().get_mpz_t());
        lcm = l;
    }
    std::vector<BigInt> ints;
    ints.reserve(coords.size());
    for (const auto& c : coords) ints.push_back(c.numerator() * (lcm / c.denominator()));
    return ints;
}

void make_primitive(std::vector<BigInt>& v) {
    BigInt g = 0;
    for (const auto& x : v) {
        BigInt t;
        mpz_gcd(t.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        g = t;
    }
    if (sgn(g) == 0) throw std::invalid_argument("zero vector is not a projective point");
    for (auto& x : v) x /= g;
    for (const auto& x : v) {
        if (sgn(x) == 0) continue;
        if (sgn(x) < 0) {
            for (auto& y : v) y = -y;
        }
        break;
    }
}

}  // namespace

ProjPoint::ProjPoint(std::vector<BigInt> coords) : coords_(std::move(coords)) {
    if (coords_.empty()) throw std::invalid_argument("projective point needs coordinates");
    make_primitive(coords_);
}

ProjPoint::ProjPoint(const RatVector& coords) : ProjPoint(primitive_from_rationals(coords)) {}

RatVector ProjPoint::to_rat_vector() const {
    RatVector v;
    v.reserve(coords_.size());
    for (const auto& c : coords_) v.emplace_back(c);
    return v;
}

std::string ProjPoint::key() const {
    std::string s;
    for (const auto& c : coords_) {
        s += c.get_str();
        s += ',';
    }
    return s;
}

Configuration Configuration::of_points(std::size_t ambient_dim, std::vector<WeightedPoint> pts) {
    Configuration c;
    c.holds_points_ = true;
    c.ambient_dim_ = ambient_dim;
    for (std::size_t j = 0; j < pts.size(); ++j) {
        if (pts[j].point.coord_count() != ambient_dim + 1) {
            throw std::invalid_argument("point " + std::to_string(j) +
                                        " does not match the ambient dimension");
        }
        if (pts[j].multiplicity < 1) {
            throw std::invalid_argument("point " + std::to_string(j) + " has multiplicity < 1");
        }
    }
    c.points_ = std::move(pts);
    return c;
}

Configuration Configuration::of_subspaces(std::size_t ambient_dim,
                                          std::vector<WeightedSubspace> subs) {
    Configuration c;
    c.holds_points_ = false;
    c.ambient_dim_ = ambient_dim;
    for (std::size_t j = 0; j < subs.size(); ++j) {
        if (subs[j].subspace.coord_count() != ambient_dim + 1) {
            throw std::invalid_argument("subspace " + std::to_string(j) +
                                        " does not match the ambient dimension");
        }
        if (subs[j].subspace.is_empty()) {
            throw std::invalid_argument("subspace " + std::to_string(j) + " is empty");
        }
        if (subs[j].multiplicity < 1) {
            throw std::invalid_argument("subspace " + std::to_string(j) +
                                        " has multiplicity < 1");
        }
        if (subs[j].subspace.rank() != subs[0].subspace.rank()) {
            throw std::invalid_argument("subspace " + std::to_string(j) +
                                        " has a different dimension than component 0");
        }
    }
    c.subspaces_ = std::move(subs);
    return c;
}

std::size_t Configuration::component_count() const {
    return holds_points_ ? points_.size() : subspaces_.size();
}

std::uint64_t Configuration::total_multiplicity() const {
    std::uint64_t m = 0;
    if (holds_points_) {
        for (const auto& p : points_) m += p.multiplicity;
    } else {
        for (const auto& s : subspaces_) m += s.multiplicity;
    }
    return m;
}

const std::vector<WeightedPoint>& Configuration::points() const {
    if (!holds_points_) throw UnsupportedError("configuration holds subspaces, not points");
    return points_;
}

const std::vector<WeightedSubspace>& Configuration::subspaces() const {
    if (holds_points_) throw UnsupportedError("configuration holds points, not subspaces");
    return subspaces_;
}

std::size_t Configuration::component_dim() const {
    if (holds_points_) return 0;
    if (subspaces_.empty()) throw std::invalid_argument("empty configuration has no dimension");
    return static_cast<std::size_t>(subspaces_[0].subspace.dim_proj());
}

bool operator==(const Configuration& a, const Configuration& b) {
    if (a.holds_points_ != b.holds_points_ || a.ambient_dim_ != b.ambient_dim_) return false;
    if (a.holds_points_) {
        if (a.points_.size() != b.points_.size()) return false;
        for (std::size_t i = 0; i < a.points_.size(); ++i) {
            if (a.points_[i].point != b.points_[i].point ||
                a.points_[i].multiplicity != b.points_[i].multiplicity) {
                return false;
            }
        }
        return true;
    }
    if (a.subspaces_.size() != b.subspaces_.size()) return false;
    for (std::size_t i = 0; i < a.subspaces_.size(); ++i) {
        if (a.subspaces_[i].subspace != b.subspaces_[i].subspace ||
            a.subspaces_[i].multiplicity != b.subspaces_[i].multiplicity) {
            return false;
        }
    }
    return true;
}

OnePS::OnePS(std::vector<std::int64_t> weights, std::optional<RatMatrix> conjugation)
    : weights_(std::move(weights)), conjugation_(std::move(conjugation)) {
    if (weights_.empty()) throw std::invalid_argument("one-parameter subgroup needs weights");
    if (conjugation_) {
        if (conjugation_->rows() != weights_.size() || conjugation_->cols() != weights_.size()) {
            throw std::invalid_argument("conjugation size does not match weight count");
        }
        if (!is_invertible(*conjugation_)) {
            throw std::invalid_argument("conjugation matrix is singular");
        }
    }
}

std::int64_t OnePS::weight_sum() const {
    std::int64_t s = 0;
    for (auto w : weights_) s += w;
    return s;
}

bool OnePS::is_trivial() const {
    return std::all_of(weights_.begin(), weights_.end(),
                       [&](std::int64_t w) { return w == weights_[0]; });
}

OnePS OnePS::inverse() const {
    std::vector<std::int64_t> neg;
    neg.reserve(weights_.size());
    for (auto w : weights_) neg.push_back(-w);
    return OnePS(std::move(neg), conjugation_);
}

OnePS normalize_one_ps(const std::vector<std::int64_t>& q) {
    if (q.empty()) throw std::invalid_argument("one-parameter subgroup needs weights");
    const std::int64_t n1 = static_cast<std::int64_t>(q.size());
    std::int64_t s = 0;
    for (auto w : q) s += w;
    std::vector<std::int64_t> out;
    out.reserve(q.size());
    for (auto w : q) out.push_back(n1 * w - s);
    return OnePS(std::move(out));
}

OnePS normalize_one_ps(const OnePS& lambda) {
    OnePS norm = normalize_one_ps(lambda.weights());
    return OnePS(norm.weights(), lambda.conjugation());
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Unstable: return "unstable";
        case Verdict::StrictlySemistable: return "strictly semistable";
        case Verdict::SemistablePolystabilityUndetermined:
            return "semistable (polystability undetermined)";
        case Verdict::Polystable: return "polystable";
        case Verdict::Stable: return "stable";
    }
    return "?";
}

int verdict_severity(Verdict v) {
    switch (v) {
        case Verdict::Unstable: return 4;
        case Verdict::SemistablePolystabilityUndetermined: return 3;
        case Verdict::StrictlySemistable: return 2;
        case Verdict::Polystable: return 1;
        case Verdict::Stable: return 0;
    }
    return 0;
}

Configuration apply_transform(const Configuration& c, const RatMatrix& g) {
    if (g.rows() != c.coord_count() || g.cols() != c.coord_count()) {
        throw std::invalid_argument("transform size does not match the ambient dimension");
    }
    if (!is_invertible(g)) throw std::invalid_argument("transform matrix is singular");
    if (c.holds_points()) {
        std::vector<WeightedPoint> pts;
        pts.reserve(c.points().size());
        for (const auto& wp : c.points()) {
            pts.push_back({ProjPoint(matvec(g, wp.point.to_rat_vector())), wp.multiplicity});
        }
        return Configuration::of_points(c.ambient_dim(), std::move(pts));
    }
    std::vector<WeightedSubspace> subs;
    subs.reserve(c.subspaces().size());
    for (const auto& ws : c.subspaces()) {
        subs.push_back({ws.subspace.transformed(g), ws.multiplicity});
    }
    return Configuration::of_subspaces(c.ambient_dim(), std::move(subs));
}

namespace {

using nlohmann::json;

Rational parse_rational_field(const json& node, const std::string& where) {
    if (!node.is_string()) {
        throw ParseError(where + ": expected a rational string");
    }
    return Rational::parse(node.get<std::string>(), where);
}

RatVector parse_rational_vector(const json& node, const std::string& where) {
    if (!node.is_array() || node.empty()) {
        throw ParseError(where + ": expected a non-empty array of rational strings");
    }
    RatVector v;
    v.reserve(node.size());
    for (std::size_t i = 0; i < node.size(); ++i) {
        v.push_back(parse_rational_field(node[i], where + "[" + std::to_string(i) + "]"));
    }
    return v;
}

std::uint64_t parse_multiplicity(const json& comp, const std::string& where) {
    if (!comp.contains("multiplicity")) return 1;
    const json& node = comp["multiplicity"];
    if (!node.is_number_integer() || node.get<std::int64_t>() < 1) {
        throw ParseError(where + ".multiplicity: expected an integer >= 1");
    }
    return node.get<std::uint64_t>();
}

RatMatrix parse_rational_matrix(const json& node, const std::string& where) {
    if (!node.is_array() || node.empty()) {
        throw ParseError(where + ": expected a non-empty array of rows");
    }
    std::vector<RatVector> rows;
    rows.reserve(node.size());
    for (std::size_t i = 0; i < node.size(); ++i) {
        rows.push_back(parse_rational_vector(node[i], where + "[" + std::to_string(i) + "]"));
        if (rows.back().size() != rows[0].size()) {
            throw ParseError(where + "[" + std::to_string(i) + "]: ragged row length");
        }
    }
    return RatMatrix::from_rows(rows[0].size(), rows);
}

}  // namespace

ParsedInput parse_document(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("document must be a JSON object");
    if (!doc.contains("ambient_dim") || !doc["ambient_dim"].is_number_integer() ||
        doc["ambient_dim"].get<std::int64_t>() < 0) {
        throw ParseError("ambient_dim: expected a non-negative integer");
    }
    const std::size_t n = doc["ambient_dim"].get<std::size_t>();

    const bool has_points = doc.contains("points") && !doc["points"].empty();
    const bool has_subspaces = doc.contains("subspaces") && !doc["subspaces"].empty();
    if (has_points == has_subspaces) {
        throw ParseError("exactly one of \"points\"/\"subspaces\" must be non-empty");
    }

    ParsedInput out{Configuration::of_points(n, {}), std::nullopt};
    if (has_points) {
        if (!doc["points"].is_array()) throw ParseError("points: expected an array");
        std::vector<WeightedPoint> pts;
        for (std::size_t j = 0; j < doc["points"].size(); ++j) {
            const std::string where = "points[" + std::to_string(j) + "]";
            const json& comp = doc["points"][j];
            if (!comp.is_object() || !comp.contains("coords")) {
                throw ParseError(where + ": expected an object with \"coords\"");
            }
            RatVector coords = parse_rational_vector(comp["coords"], where + ".coords");
            if (coords.size() != n + 1) {
                throw ParseError(where + ".coords: expected " + std::to_string(n + 1) +
                                 " coordinates");
            }
            if (is_zero_vector(coords)) {
                throw ParseError(where + ".coords: zero vector is not a projective point");
            }
            pts.push_back({ProjPoint(coords), parse_multiplicity(comp, where)});
        }
        out.config = Configuration::of_points(n, std::move(pts));
    } else {
        if (!doc["subspaces"].is_array()) throw ParseError("subspaces: expected an array");
        std::vector<WeightedSubspace> subs;
        for (std::size_t j = 0; j < doc["subspaces"].size(); ++j) {
            const std::string where = "subspaces[" + std::to_string(j) + "]";
            const json& comp = doc["subspaces"][j];
            if (!comp.is_object() || !comp.contains("basis")) {
                throw ParseError(where + ": expected an object with \"basis\"");
            }
            RatMatrix basis = parse_rational_matrix(comp["basis"], where + ".basis");
            if (basis.cols() != n + 1) {
                throw ParseError(where + ".basis: expected rows of " + std::to_string(n + 1) +
                                 " coordinates");
            }
            std::vector<RatVector> rows;
            for (std::size_t i = 0; i < basis.rows(); ++i) rows.push_back(basis.row(i));
            LinSubspace s = LinSubspace::span(n + 1, rows);
            if (s.is_empty()) throw ParseError(where + ".basis: spans the empty subspace");
            if (s.rank() != basis.rows()) {
                throw ParseError(where + ".basis: rows are linearly dependent");
            }
            subs.push_back({std::move(s), parse_multiplicity(comp, where)});
        }
        try {
            out.config = Configuration::of_subspaces(n, std::move(subs));
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what());
        }
    }

    if (doc.contains("one_ps")) {
        const json& ops = doc["one_ps"];
        if (!ops.is_object() || !ops.contains("weights") || !ops["weights"].is_array() ||
            ops["weights"].empty()) {
            throw ParseError("one_ps: expected an object with a non-empty \"weights\" array");
        }
        std::vector<std::int64_t> w;
        for (std::size_t i = 0; i < ops["weights"].size(); ++i) {
            if (!ops["weights"][i].is_number_integer()) {
                throw ParseError("one_ps.weights[" + std::to_string(i) +
                                 "]: expected an integer");
            }
            w.push_back(ops["weights"][i].get<std::int64_t>());
        }
        if (w.size() != n + 1) {
            throw ParseError("one_ps.weights: expected " + std::to_string(n + 1) + " entries");
        }
        std::optional<RatMatrix> conj;
        if (ops.contains("conjugation")) {
            RatMatrix g = parse_rational_matrix(ops["conjugation"], "one_ps.conjugation");
            if (g.rows() != n + 1 || g.cols() != n + 1) {
                throw ParseError("one_ps.conjugation: expected a " + std::to_string(n + 1) + "x" +
                                 std::to_string(n + 1) + " matrix");
            }
            if (!is_invertible(g)) throw ParseError("one_ps.conjugation: matrix is singular");
            conj = std::move(g);
        }
        out.one_ps = OnePS(std::move(w), std::move(conj));
    }
    return out;
}

Configuration parse_configuration(const std::string& json_text) {
    return parse_document(json_text).config;
}

std::string serialize_document(const Configuration& c, const std::optional<OnePS>& one_ps) {
    nlohmann::ordered_json doc;
    doc["ambient_dim"] = c.ambient_dim();
    if (c.holds_points()) {
        doc["points"] = nlohmann::ordered_json::array();
        for (const auto& wp : c.points()) {
            nlohmann::ordered_json comp;
            comp["coords"] = nlohmann::ordered_json::array();
            for (const auto& x : wp.point.coords()) comp["coords"].push_back(x.get_str());
            comp["multiplicity"] = wp.multiplicity;
            doc["points"].push_back(std::move(comp));
        }
    } else {
        doc["subspaces"] = nlohmann::ordered_json::array();
        for (const auto& ws : c.subspaces()) {
            nlohmann::ordered_json comp;
            comp["basis"] = nlohmann::ordered_json::array();
            const RatMatrix& b = ws.subspace.basis();
            for (std::size_t i = 0; i < b.rows(); ++i) {
                nlohmann::ordered_json row = nlohmann::ordered_json::array();
                for (std::size_t j = 0; j < b.cols(); ++j) row.push_back(b.at(i, j).str());
                comp["basis"].push_back(std::move(row));
            }
            comp["multiplicity"] = ws.multiplicity;
            doc["subspaces"].push_back(std::move(comp));
        }
    }
    if (one_ps) {
        nlohmann::ordered_json ops;
        ops["weights"] = one_ps->weights();
        if (one_ps->conjugation()) {
            const RatMatrix& g = *one_ps->conjugation();
            ops["conjugation"] = nlohmann::ordered_json::array();
            for (std::size_t i = 0; i < g.rows(); ++i) {
                nlohmann::ordered_json row = nlohmann::ordered_json::array();
                for (std::size_t j = 0; j < g.cols(); ++j) row.push_back(g.at(i, j).str());
                ops["conjugation"].push_back(std::move(row));
            }
        }
        doc["one_ps"] = std::move(ops);
    }
    return doc.dump();
}

}  // namespace chowstab
