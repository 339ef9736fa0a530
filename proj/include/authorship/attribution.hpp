#pragma once

#include "authorship/corpus.hpp"
#include "authorship/distances.hpp"
#include "authorship/features.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace authorship {

struct AttributionConfig {
    std::size_t mfw_size = 250;
    std::size_t char_n = 7;
    UnseenNgrams perplexity_unseen = UnseenNgrams::floor;
    std::vector<MeasureId> measures{std::begin(kProfileMeasures), std::end(kProfileMeasures)};
};

struct Normalized {
    std::vector<double> values;
    // All finite scores were equal, so they all map to 0.
    bool degenerate = false;
    // At least one score was infinite and was mapped to 1.
    bool had_infinite = false;
};

// (x - min) / (max - min) over the finite scores; +inf maps to 1. Throws
// InputError for fewer than two scores, NaN, or negative values.
Normalized minmax_normalize(std::span<const double> raw);

struct MeasureRow {
    MeasureId measure;
    std::vector<double> raw;         // one per author, +inf when undefined
    std::vector<double> normalized;  // filled by normalize_table
    bool degenerate = false;
    bool had_infinite = false;
};

struct ScoreTable {
    std::string unknown_title;
    std::vector<std::string> authors;
    std::vector<MeasureRow> rows;  // one per measure
};

// Inputs shared by every (measure, author) comparison of a run.
struct ScoringContext {
    std::vector<std::string> vocab;  // word MFW list, for KL and cosine
    std::size_t rank_k = 250;
    std::size_t char_n = 7;
    UnseenNgrams perplexity_unseen = UnseenNgrams::floor;
};

// Raw scores of `unknown` against every profile under every measure.
// Perplexity with no shared n-gram is recorded as +inf.
ScoreTable score_all(std::span<const AuthorProfile> profiles, const Document& unknown, const ScoringContext& ctx,
                     std::span<const MeasureId> measures, unsigned jobs = 1);

void normalize_table(ScoreTable& table);

// Per-author arithmetic mean over measures. `normalized[m][a]` is measure m
// for author a. Throws InputError if any row is short or holds a NaN.
std::vector<double> mean_combine(const std::vector<std::vector<double>>& normalized);
std::vector<double> mean_combine(const ScoreTable& table);

struct RankedAuthor {
    std::string author;
    double score;
    std::size_t rank;  // equal scores share a rank
};

struct Verdict {
    std::vector<RankedAuthor> ranking;  // ascending score
    std::optional<double> margin;       // runner-up minus winner
    bool tie = false;                   // more than one author at rank 1
};

Verdict rank_authors(std::span<const std::string> authors, std::span<const double> scores);

struct UnknownResult {
    ScoreTable table;
    std::vector<double> means;
    Verdict verdict;
};

struct AttributionReport {
    AttributionConfig config;
    std::vector<std::string> authors;
    std::vector<UnknownResult> results;
    std::size_t stats_documents = 0;  // documents the MFW list was drawn from
};

// Profiles from the labeled documents, one result per unknown document.
// Throws InputError with fewer than two authors or no unknown text.
AttributionReport attribute(std::span<const Document> corpus, const AttributionConfig& config, unsigned jobs = 1);

} // namespace authorship
