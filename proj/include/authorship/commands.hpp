#pragma once

#include "authorship/clustering.hpp"
#include "authorship/distances.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace authorship {

// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUserError = 1;
inline constexpr int kExitInternalError = 2;

struct RunConfig {
    enum class Mode { cluster, attribute, both };

    std::filesystem::path manifest;
    Mode mode = Mode::both;
    std::size_t mfw_size = 250;
    std::size_t char_n = 7;
    UnseenNgrams perplexity_unseen = UnseenNgrams::floor;
    DeltaVariant delta = DeltaVariant::burrows;
    Linkage linkage = Linkage::ward;
    std::vector<MeasureId> measures{std::begin(kProfileMeasures), std::end(kProfileMeasures)};
    std::filesystem::path output_dir = "out";
    std::uint64_t seed = 20190601;
    unsigned jobs = 1;

    // Throws InputError.
    void validate() const;
};

// Each command writes its artifacts under config.output_dir, prints a short
// summary to `out`, and throws InputError / InvariantError on failure.

// Per-document summary; with dump_features also writes tab-separated
// feature tables (feature<TAB>value) for each document and the corpus stats.
int cmd_ingest(const RunConfig& config, bool dump_features, std::ostream& out);

// dendrogram.nwk, dendrogram.dot, distances.csv, cluster_report.txt
int cmd_cluster(const RunConfig& config, std::ostream& out);

// report_NN_<title>.json per unknown text, attribution.txt
int cmd_attribute(const RunConfig& config, std::ostream& out);

// Runs the commands selected by config.mode.
int cmd_run(const RunConfig& config, std::ostream& out);

struct SelftestOptions {
    std::filesystem::path normalized_fixture;  // defaults to the shipped table4.csv
    std::filesystem::path means_fixture;       // defaults to the shipped table5.csv
    std::uint64_t seed = 20190601;
    bool verbose = false;
    unsigned jobs = 1;
};

// Returns kExitOk when every check passes, kExitInternalError otherwise.
int cmd_selftest(const SelftestOptions& options, std::ostream& out);

// Writes a synthetic labeled + unknown corpus and its manifest.
int cmd_generate(std::uint64_t seed, const std::filesystem::path& dir, std::ostream& out);

} // namespace authorship
