#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "chowstab/chow_weight.hpp"
#include "chowstab/decomp.hpp"
#include "chowstab/hm_stability.hpp"

namespace chowstab {

using ReportJson = nlohmann::ordered_json;

enum class ReportFormat { Text, Json };

/// FNV-1a digest (16 hex digits) of the canonical input serialization.
std::string input_digest(const Configuration& c,
                         const std::optional<OnePS>& one_ps = std::nullopt);

ReportJson subspace_json(const LinSubspace& s);
ReportJson one_ps_json(const OnePS& lambda);

/// Certificate with its Mumford weight re-verified against `c` through the
/// weight computation, which is a disjoint code path from the verdict.
ReportJson certificate_json(const Certificate& cert, const Configuration& c);

ReportJson stability_json(const StabilityReport& report, const Configuration& c,
                          bool include_certificate);
ReportJson relative_json(const StabilityReport& report, const Decomposition& d,
                         const Configuration& c, bool include_certificate);
ReportJson decomposition_json(const Decomposition& d);
ReportJson mumford_json(const MumfordWeight& w);
ReportJson chow_json(const ChowWeightReport& report);
ReportJson futaki_json(const FutakiReport& report);

/// Assembles the full report and renders it byte-deterministically.
std::string render_report(const std::string& command, const std::string& digest,
                          const ReportJson& result, const std::vector<std::string>& warnings,
                          ReportFormat format);

}  // namespace chowstab
