#pragma once

#include "authorship/attribution.hpp"
#include "authorship/clustering.hpp"

#include <string>

namespace authorship {

// Machine-readable report for one unknown text (JSON, numbers rounded to 4
// decimals, infinite raw scores as null).
std::string result_to_json(const AttributionReport& report, const UnknownResult& result);

// Aligned text tables for every unknown: raw scores, normalized scores,
// means and verdicts.
std::string render_attribution_text(const AttributionReport& report);

std::string render_config_header(const AttributionReport& report);

struct ClusterRunInfo {
    DeltaVariant variant;
    Linkage linkage;
    std::size_t mfw_size;
    std::size_t features_used;  // MFW features with non-zero spread
};

std::string render_cluster_report(const ClusterRunInfo& info, const DistanceMatrix& matrix, const ClusterTree& tree);

// Lowercase ASCII letters and digits, other runs collapsed to '_'.
std::string slugify(std::string_view title);

} // namespace authorship
