#pragma once

#include "authorship/distances.hpp"

#include <filesystem>
#include <string>
#include <vector>

// Published normalized score table and its per-author means, used to check
// the mean-combination arithmetic end to end.
namespace authorship::fixtures {

struct NormalizedCell {
    std::string unknown;
    MeasureId measure;
    std::string author;
    double value;
};

struct MeanCell {
    std::string unknown;
    std::string author;
    double value;
};

std::filesystem::path default_data_dir();

// CSV with '#' comment lines and a header row. Throws InputError.
std::vector<NormalizedCell> load_normalized(const std::filesystem::path& path);
std::vector<MeanCell> load_means(const std::filesystem::path& path);

struct MeanCheck {
    std::string unknown;
    std::string author;
    double expected;
    double computed;
    bool ok;
};

// Recomputes every mean from the normalized cells with mean_combine and
// compares it to the published value.
std::vector<MeanCheck> check_means(const std::vector<NormalizedCell>& normalized, const std::vector<MeanCell>& means,
                                   double tolerance = 0.0005);

} // namespace authorship::fixtures
