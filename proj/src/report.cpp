#include "chowstab/report.hpp"

#include <sstream>

namespace chowstab {

std::string input_digest(const Configuration& c, const std::optional<OnePS>& one_ps) {
    const std::string bytes = serialize_document(c, one_ps);
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 0x100000001b3ull;
    }
    std::ostringstream os;
    os << std::hex;
    for (int i = 15; i >= 0; --i) os << ((h >> (4 * i)) & 0xf);
    return os.str();
}

ReportJson subspace_json(const LinSubspace& s) {
    ReportJson rows = ReportJson::array();
    for (std::size_t i = 0; i < s.basis().rows(); ++i) {
        ReportJson row = ReportJson::array();
        for (std::size_t j = 0; j < s.coord_count(); ++j) row.push_back(s.basis().at(i, j).str());
        rows.push_back(std::move(row));
    }
    return rows;
}

ReportJson one_ps_json(const OnePS& lambda) {
    ReportJson j;
    j["weights"] = lambda.weights();
    if (lambda.conjugation()) {
        const RatMatrix& g = *lambda.conjugation();
        ReportJson rows = ReportJson::array();
        for (std::size_t i = 0; i < g.rows(); ++i) {
            ReportJson row = ReportJson::array();
            for (std::size_t k = 0; k < g.cols(); ++k) row.push_back(g.at(i, k).str());
            rows.push_back(std::move(row));
        }
        j["conjugation"] = std::move(rows);
    }
    return j;
}

ReportJson certificate_json(const Certificate& cert, const Configuration& c) {
    ReportJson j;
    j["subspace"] = subspace_json(cert.subspace);
    j["one_ps"] = one_ps_json(cert.lambda);
    j["mu"] = cert.mu.str();
    j["mu_verified"] = (mumford_weight(c, cert.lambda).value == cert.mu);
    return j;
}

ReportJson stability_json(const StabilityReport& report, const Configuration& c,
                          bool include_certificate) {
    ReportJson j;
    j["verdict"] = to_string(report.verdict);
    if (include_certificate && report.certificate) {
        j["certificate"] = certificate_json(*report.certificate, c);
    }
    return j;
}

ReportJson relative_json(const StabilityReport& report, const Decomposition& d,
                         const Configuration& c, bool include_certificate) {
    ReportJson j;
    j["verdict"] = to_string(report.verdict);
    if (include_certificate && report.certificate) {
        j["certificate"] = certificate_json(*report.certificate, c);
    }
    ReportJson comps = ReportJson::array();
    for (std::size_t i = 0; i < d.components.size(); ++i) {
        ReportJson comp;
        comp["subspace"] = subspace_json(d.components[i].subspace);
        comp["index_set"] = d.components[i].index_set;
        comp["members"] = d.components[i].members;
        comp["verdict"] = to_string(report.component_reports[i].verdict);
        if (include_certificate && report.component_reports[i].certificate) {
            // Intrinsic to the component's own projective space; verified
            // against the restricted configuration.
            comp["certificate"] = certificate_json(*report.component_reports[i].certificate,
                                                   restrict_component(c, d, i));
        }
        comps.push_back(std::move(comp));
    }
    j["components"] = std::move(comps);
    return j;
}

ReportJson decomposition_json(const Decomposition& d) {
    ReportJson j;
    ReportJson normalizer = ReportJson::array();
    for (std::size_t i = 0; i < d.normalizer.rows(); ++i) {
        ReportJson row = ReportJson::array();
        for (std::size_t k = 0; k < d.normalizer.cols(); ++k) {
            row.push_back(d.normalizer.at(i, k).str());
        }
        normalizer.push_back(std::move(row));
    }
    j["normalizer"] = std::move(normalizer);
    ReportJson comps = ReportJson::array();
    for (const auto& comp : d.components) {
        ReportJson cj;
        cj["subspace"] = subspace_json(comp.subspace);
        cj["index_set"] = comp.index_set;
        cj["members"] = comp.members;
        comps.push_back(std::move(cj));
    }
    j["components"] = std::move(comps);
    return j;
}

ReportJson mumford_json(const MumfordWeight& w) {
    ReportJson j;
    j["value"] = w.value.str();
    ReportJson per = ReportJson::array();
    for (const auto& [index, contribution] : w.per_component) {
        ReportJson e;
        e["component"] = index;
        e["contribution"] = contribution.str();
        per.push_back(std::move(e));
    }
    j["per_component"] = std::move(per);
    return j;
}

ReportJson chow_json(const ChowWeightReport& report) {
    ReportJson j;
    j["ambient_dim"] = report.ambient_dim;
    j["component_dim"] = report.component_dim;
    j["weights"] = report.weights;
    ReportJson per = ReportJson::array();
    for (const auto& entry : report.per_component) {
        ReportJson e;
        e["component"] = entry.index;
        e["e"] = entry.e;
        e["w"] = entry.w.str();
        per.push_back(std::move(e));
    }
    j["per_component"] = std::move(per);
    j["total"] = report.total.str();
    return j;
}

ReportJson futaki_json(const FutakiReport& report) {
    ReportJson j;
    j["base_futaki"] = report.base_futaki.str();
    j["correction_numerator"] = report.correction_numerator.str();
    j["exponent"] = report.exponent;
    j["leading_term"] =
        report.correction_numerator.str() + "/r^" + std::to_string(report.exponent);
    j["fires"] = report.fires;
    j["verdict"] = report.verdict_text;
    return j;
}

namespace {

bool is_scalar(const ReportJson& j) {
    return j.is_string() || j.is_number() || j.is_boolean() || j.is_null();
}

bool all_scalar(const ReportJson& arr) {
    for (const auto& e : arr) {
        if (!is_scalar(e)) return false;
    }
    return true;
}

std::string scalar_text(const ReportJson& j, bool quoted_strings) {
    if (j.is_string()) {
        return quoted_strings ? "\"" + j.get<std::string>() + "\"" : j.get<std::string>();
    }
    return j.dump();
}

std::string inline_array(const ReportJson& arr) {
    std::string s = "[";
    for (std::size_t i = 0; i < arr.size(); ++i) {
        if (i) s += ", ";
        s += scalar_text(arr[i], true);
    }
    return s + "]";
}

void render_text(const ReportJson& j, std::ostream& os, int indent) {
    const std::string pad(2 * indent, ' ');
    if (j.is_object()) {
        for (const auto& [key, value] : j.items()) {
            if (is_scalar(value)) {
                os << pad << key << ": " << scalar_text(value, false) << "\n";
            } else if (value.is_array() && all_scalar(value)) {
                os << pad << key << ": " << inline_array(value) << "\n";
            } else {
                os << pad << key << ":\n";
                render_text(value, os, indent + 1);
            }
        }
    } else if (j.is_array()) {
        for (const auto& e : j) {
            if (is_scalar(e)) {
                os << pad << "- " << scalar_text(e, false) << "\n";
            } else if (e.is_array() && all_scalar(e)) {
                os << pad << "- " << inline_array(e) << "\n";
            } else {
                os << pad << "-\n";
                render_text(e, os, indent + 1);
            }
        }
    }
}

}  // namespace

std::string render_report(const std::string& command, const std::string& digest,
                          const ReportJson& result, const std::vector<std::string>& warnings,
                          ReportFormat format) {
    ReportJson report;
    report["command"] = command;
    report["input_digest"] = digest;
    report["result"] = result;
    report["warnings"] = warnings;
    if (format == ReportFormat::Json) return report.dump(2) + "\n";
    std::ostringstream os;
    render_text(report, os, 0);
    return os.str();
}

}  // namespace chowstab
