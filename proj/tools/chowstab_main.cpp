#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "chowstab/report.hpp"

namespace {

using namespace chowstab;

struct Options {
    std::string input;
    std::string format = "text";
    bool certificate = false;
    bool normalize = false;
    bool oracle = false;
    std::int64_t oracle_bound = 3;
    std::size_t oracle_samples = 100;
    std::uint64_t seed = 1;
    std::string check_commutes;
};

void add_common_options(CLI::App* cmd, Options& o) {
    cmd->add_option("--input", o.input, "path of the input JSON document")->required();
    cmd->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
    cmd->add_flag("--certificate", o.certificate, "include destabilizing certificates");
    cmd->add_flag("--normalize", o.normalize, "normalize one_ps weights to mean zero first");
    cmd->add_flag("--oracle", o.oracle, "cross-check the verdict with the brute-force oracle");
    cmd->add_option("--oracle-bound", o.oracle_bound, "oracle weight bound");
    cmd->add_option("--oracle-samples", o.oracle_samples, "oracle random conjugation count");
    cmd->add_option("--seed", o.seed, "oracle sampling seed");
    cmd->add_option("--check-commutes", o.check_commutes,
                    "path of a JSON file with torus generator matrices");
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open input file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ReportFormat format_of(const Options& o) {
    return o.format == "json" ? ReportFormat::Json : ReportFormat::Text;
}

OnePS require_one_ps(const ParsedInput& in, const Options& o) {
    if (!in.one_ps) throw ParseError("document carries no \"one_ps\"");
    return o.normalize ? normalize_one_ps(*in.one_ps) : *in.one_ps;
}

std::vector<RatMatrix> load_generators(const std::string& path) {
    const std::string text = slurp(path);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid generators JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("generators") || !doc["generators"].is_array()) {
        throw ParseError("generators file must hold {\"generators\": [matrix, ...]}");
    }
    std::vector<RatMatrix> out;
    for (std::size_t g = 0; g < doc["generators"].size(); ++g) {
        const auto& mat = doc["generators"][g];
        const std::string where = "generators[" + std::to_string(g) + "]";
        if (!mat.is_array() || mat.empty()) throw ParseError(where + ": expected matrix rows");
        std::vector<RatVector> rows;
        for (std::size_t i = 0; i < mat.size(); ++i) {
            if (!mat[i].is_array()) throw ParseError(where + ": expected matrix rows");
            RatVector row;
            for (std::size_t j = 0; j < mat[i].size(); ++j) {
                if (!mat[i][j].is_string()) {
                    throw ParseError(where + ": expected rational strings");
                }
                row.push_back(Rational::parse(mat[i][j].get<std::string>(),
                                              where + "[" + std::to_string(i) + "][" +
                                                  std::to_string(j) + "]"));
            }
            rows.push_back(std::move(row));
        }
        out.push_back(RatMatrix::from_rows(rows[0].size(), rows));
    }
    return out;
}

void append_oracle_note(ReportJson& result, const Configuration& c, const Verdict verdict,
                        const Options& o) {
    ReportJson note;
    note["bound"] = o.oracle_bound;
    note["samples"] = o.oracle_samples;
    note["seed"] = o.seed;
    const auto found = oracle_search(c, o.oracle_bound, o.oracle_samples, o.seed);
    note["found_mu_positive"] = found.has_value();
    if (found) note["mu"] = found->second.value.str();
    note["agrees_with_verdict"] = (found.has_value() == (verdict == Verdict::Unstable));
    result["oracle"] = std::move(note);
}

int run_command(const std::string& command, const Options& o) {
    const ParsedInput in = parse_document(slurp(o.input));
    const std::string digest = input_digest(in.config, in.one_ps);
    std::vector<std::string> warnings;
    ReportJson result;

    if (command == "analyze") {
        const StabilityReport report = absolute_verdict(in.config);
        result = stability_json(report, in.config, o.certificate);
        if (o.oracle) append_oracle_note(result, in.config, report.verdict, o);
    } else if (command == "relative") {
        const Decomposition d = decompose_span(in.config);
        const StabilityReport report = relative_verdict(in.config);
        result = relative_json(report, d, in.config, o.certificate);
        if (o.oracle) warnings.push_back("--oracle applies to analyze only; ignored");
    } else if (command == "decompose") {
        result = decomposition_json(decompose_span(in.config));
    } else if (command == "mu") {
        const OnePS lambda = require_one_ps(in, o);
        result = mumford_json(mumford_weight(in.config, lambda));
        result["one_ps"] = one_ps_json(lambda);
    } else if (command == "chow-weight") {
        const OnePS lambda = require_one_ps(in, o);
        result = chow_json(config_chow_weight(in.config, lambda));
    } else if (command == "futaki") {
        const OnePS lambda = require_one_ps(in, o);
        result = futaki_json(futaki_correction(in.config, lambda));
    }
    if (!o.check_commutes.empty() &&
        (command == "mu" || command == "chow-weight" || command == "futaki")) {
        const OnePS lambda = require_one_ps(in, o);
        result["commutes"] = commutation_check(lambda, load_generators(o.check_commutes));
    }
    if (o.oracle && command != "analyze" && command != "relative") {
        warnings.push_back("--oracle applies to analyze only; ignored");
    }

    std::cout << render_report(command, digest, result, warnings, format_of(o));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Chow stability of point and linear-subspace configurations"};
    app.require_subcommand(1);

    const std::vector<std::string> commands = {"analyze",     "relative", "decompose",
                                               "mu",          "futaki",   "chow-weight"};
    Options options;
    CLI::App* analyze = app.add_subcommand("analyze", "absolute Chow stability of points");
    CLI::App* relative = app.add_subcommand("relative", "relative Chow stability of points");
    CLI::App* decompose = app.add_subcommand("decompose", "span decomposition of points");
    CLI::App* mu = app.add_subcommand("mu", "Mumford weight for the given subgroup");
    CLI::App* chow = app.add_subcommand("chow-weight", "Chow weight for the given subgroup");
    CLI::App* futaki = app.add_subcommand("futaki", "asymptotic Futaki correction");
    for (CLI::App* cmd : {analyze, relative, decompose, mu, chow, futaki}) {
        add_common_options(cmd, options);
    }

    CLI11_PARSE(app, argc, argv);

    try {
        return run_command(app.get_subcommands().front()->get_name(), options);
    } catch (const chowstab::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const chowstab::UnsupportedError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const chowstab::PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
