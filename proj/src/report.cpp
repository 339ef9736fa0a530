#include "authorship/report.hpp"

#include "authorship/format.hpp"
#include "authorship/unicode.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>

namespace authorship {

namespace {

using nlohmann::ordered_json;

ordered_json rounded(double v) {
    if (!std::isfinite(v)) return nullptr;
    return std::round(v * 1e4) / 1e4;
}

std::string measure_list(const std::vector<MeasureId>& measures) {
    std::string out;
    for (auto m : measures) {
        if (!out.empty()) out += ",";
        out += to_string(m);
    }
    return out;
}

std::string perplexity_mode(UnseenNgrams unseen) {
    return unseen == UnseenNgrams::floor ? "unrenormalized frequencies, unseen test n-grams at 1/(N+1)"
                                         : "shared n-grams only, unrenormalized frequencies";
}

bool is_full_measure_set(const std::vector<MeasureId>& measures) {
    if (measures.size() != std::size(kProfileMeasures)) return false;
    return std::all_of(std::begin(kProfileMeasures), std::end(kProfileMeasures), [&](MeasureId m) {
        return std::find(measures.begin(), measures.end(), m) != measures.end();
    });
}

std::string pad(std::string_view s, std::size_t width) {
    std::string out(s);
    const auto len = unicode::length(s);
    if (len < width) out.append(width - len, ' ');
    return out;
}

std::string pad_left(std::string_view s, std::size_t width) {
    const auto len = unicode::length(s);
    return (len < width ? std::string(width - len, ' ') : std::string()) + std::string(s);
}

} // namespace

std::string slugify(std::string_view title) {
    std::string out;
    bool gap = false;
    for (char c : title) {
        const auto u = static_cast<unsigned char>(c);
        if (std::isalnum(u) && u < 128) {
            if (gap && !out.empty()) out.push_back('_');
            out.push_back(static_cast<char>(std::tolower(u)));
            gap = false;
        } else {
            gap = true;
        }
    }
    return out.empty() ? "text" : out;
}

std::string render_config_header(const AttributionReport& report) {
    const auto& c = report.config;
    std::string out;
    out += "# mfw_size: " + std::to_string(c.mfw_size) + "\n";
    out += "# char_n: " + std::to_string(c.char_n) + "\n";
    out += "# measures: " + measure_list(c.measures) +
           (is_full_measure_set(c.measures) ? "" : " (subset; means use these measures only)") + "\n";
    out += "# kl: base-2 logarithm, add-one smoothing over the MFW vocabulary\n";
    out += "# perplexity: " + perplexity_mode(c.perplexity_unseen) + "\n";
    out += "# rank_based: top " + std::to_string(c.mfw_size) + " words, missing feature rank " +
           std::to_string(c.mfw_size + 1) + "\n";
    out += "# mfw_scope: all " + std::to_string(report.stats_documents) + " documents (known and unknown)\n";
    out += "# normalization: min-max per unknown text and measure\n";
    return out;
}

std::string result_to_json(const AttributionReport& report, const UnknownResult& result) {
    const auto& c = report.config;
    ordered_json j;
    j["unknown"] = result.table.unknown_title;
    j["config"] = {
        {"mfw_size", c.mfw_size},
        {"char_n", c.char_n},
        {"measures", measure_list(c.measures)},
        {"measure_subset", !is_full_measure_set(c.measures)},
        {"kl_smoothing", "add-one"},
        {"kl_log_base", 2},
        {"perplexity", perplexity_mode(c.perplexity_unseen)},
        {"mfw_scope", "all documents"},
        {"mfw_documents", report.stats_documents},
    };
    j["authors"] = result.table.authors;
    ordered_json measures = ordered_json::array();
    for (const auto& row : result.table.rows) {
        ordered_json m;
        m["measure"] = to_string(row.measure);
        m["raw"] = ordered_json::array();
        m["normalized"] = ordered_json::array();
        for (double v : row.raw) m["raw"].push_back(rounded(v));
        for (double v : row.normalized) m["normalized"].push_back(rounded(v));
        m["degenerate"] = row.degenerate;
        m["undefined_scores"] = row.had_infinite;
        measures.push_back(std::move(m));
    }
    j["measures"] = std::move(measures);
    ordered_json means = ordered_json::object();
    for (std::size_t a = 0; a < result.table.authors.size(); ++a) {
        means[result.table.authors[a]] = rounded(result.means[a]);
    }
    j["means"] = std::move(means);
    ordered_json ranking = ordered_json::array();
    for (const auto& r : result.verdict.ranking) {
        ranking.push_back({{"rank", r.rank}, {"author", r.author}, {"mean", rounded(r.score)}});
    }
    j["ranking"] = std::move(ranking);
    j["margin"] = result.verdict.margin ? rounded(*result.verdict.margin) : ordered_json(nullptr);
    j["tie"] = result.verdict.tie;
    return j.dump(2) + "\n";
}

std::string render_attribution_text(const AttributionReport& report) {
    std::string out = render_config_header(report);
    for (const auto& r : report.results) {
        const auto& authors = r.table.authors;
        std::size_t name_w = 18;
        std::size_t col_w = 12;
        for (const auto& a : authors) col_w = std::max(col_w, unicode::length(a) + 2);

        out += "\n== " + r.table.unknown_title + " ==\n";
        for (const bool normalized : {false, true}) {
            out += normalized ? "\nnormalized scores\n" : "\nraw scores\n";
            out += pad("measure", name_w);
            for (const auto& a : authors) out += pad_left(a, col_w);
            out += "\n";
            for (const auto& row : r.table.rows) {
                out += pad(to_string(row.measure), name_w);
                for (double v : normalized ? row.normalized : row.raw) out += pad_left(fixed(v), col_w);
                if (normalized && row.degenerate) out += "  (all equal)";
                if (!normalized && row.had_infinite) out += "  (inf: no shared n-gram)";
                out += "\n";
            }
        }
        out += "\nmean\n";
        for (const auto& rank : r.verdict.ranking) {
            out += "  " + std::to_string(rank.rank) + ". " + pad(rank.author, col_w) + fixed(rank.score) + "\n";
        }
        if (r.verdict.margin) out += "margin: " + fixed(*r.verdict.margin) + "\n";
        if (r.verdict.tie) out += "tie at rank 1\n";
    }
    return out;
}

std::string render_cluster_report(const ClusterRunInfo& info, const DistanceMatrix& matrix, const ClusterTree& tree) {
    std::string out;
    out += "# delta: " + std::string(to_string(info.variant));
    if (info.variant == DeltaVariant::eder) out += " (Eder, Stylo-compatible rank weighting)";
    out += "\n";
    out += "# linkage: " + std::string(to_string(info.linkage)) + "\n";
    out += "# mfw_size: " + std::to_string(info.mfw_size) + "\n";
    out += "# features_used: " + std::to_string(info.features_used) + "\n";
    out += "# mfw_scope: all " + std::to_string(matrix.size()) + " documents\n";
    out += "# documents: " + std::to_string(matrix.size()) + "\n\n";
    out += serialize_tree(tree, TreeFormat::ascii);
    return out;
}

} // namespace authorship
