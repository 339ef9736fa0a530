#pragma once

#include "authorship/features.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace authorship {

enum class MeasureId { burrows_delta, eder_delta, kullback_leibler, perplexity, rank_based, cosine };

std::string_view to_string(MeasureId id);
std::optional<MeasureId> parse_measure(std::string_view name);

// The four profile-based measures, in report order.
inline constexpr MeasureId kProfileMeasures[] = {MeasureId::perplexity, MeasureId::kullback_leibler,
                                                 MeasureId::rank_based, MeasureId::cosine};

// Lower is more similar. Always finite and non-negative.
struct MeasureScore {
    MeasureId measure;
    double value;
};

// Manhattan distance between z-score vectors.
MeasureScore burrows_delta(std::span<const double> z1, std::span<const double> z2);

// Manhattan distance with feature i weighted by (n - rank_i + 1) / n, so the
// most frequent feature counts fully and the n-th counts 1/n.
MeasureScore eder_delta(std::span<const double> z1, std::span<const double> z2, std::span<const std::size_t> ranks);

// Mean of KL(p||q) and KL(q||p), base 2, on two distributions given over the
// same support. Both must be strictly positive wherever the other is.
double symmetric_kl(std::span<const double> p, std::span<const double> q);

// Add-one smoothed distributions of `a` and `t` restricted to `vocab`.
std::vector<double> smoothed_distribution(const FeatureVector& v, std::span<const std::string> vocab);

// Symmetric KL of the smoothed distributions over `vocab`.
MeasureScore kl_distance(const FeatureVector& a, const FeatureVector& t, std::span<const std::string> vocab);

enum class UnseenNgrams {
    // Test n-grams missing from the model get probability 1 / (N + 1), N
    // being the model's n-gram count, so unmatched text raises perplexity.
    floor,
    // Test n-grams missing from the model are left out of the sum.
    ignore,
};

// 2^(-sum T(g) log2 M(g)) over the n-grams g of the test vector, with M and T
// unrenormalized relative frequencies. Throws UndefinedDistance when the
// model and the test share no n-gram.
MeasureScore perplexity_distance(const FeatureVector& model, const FeatureVector& test,
                                 UnseenNgrams unseen = UnseenNgrams::floor);

// Probability assigned to a test n-gram the model has never seen.
double unseen_ngram_probability(const FeatureVector& model);

// Out-of-place distance over the top k features of rank_t. A feature missing
// from the top k of rank_a counts as rank k + 1.
MeasureScore rank_distance(std::span<const std::string> rank_a, std::span<const std::string> rank_t, std::size_t k);

// 1 - cosine similarity, clamped to [0, 1]. Throws InputError if either
// vector is all zero.
double cosine_distance(std::span<const double> a, std::span<const double> t);
MeasureScore cosine_distance(const FeatureVector& a, const FeatureVector& t, std::span<const std::string> vocab);

} // namespace authorship
