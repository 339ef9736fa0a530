#pragma once

#include "authorship/corpus.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace authorship {

// Maximal runs of Unicode letters (with any combining marks that follow a
// letter), lowercased. Everything else separates tokens.
std::vector<std::string> tokenize(std::string_view text);

class FeatureKind {
public:
    enum class Type { word_unigram, char_ngram };

    static FeatureKind words() { return FeatureKind(Type::word_unigram, 1); }
    static FeatureKind chars(std::size_t n);

    Type type() const { return type_; }
    std::size_t n() const { return n_; }
    std::string name() const;

    friend auto operator<=>(const FeatureKind&, const FeatureKind&) = default;

private:
    FeatureKind(Type t, std::size_t n) : type_(t), n_(n) {}
    Type type_;
    std::size_t n_;
};

// Relative-frequency distribution over features of one text. Only features
// with a positive count are stored.
class FeatureVector {
public:
    using Counts = std::map<std::string, std::uint64_t>;

    // Throws InvariantError on zero counts or an empty table.
    FeatureVector(FeatureKind kind, Counts counts);

    FeatureKind kind() const { return kind_; }
    const Counts& counts() const { return counts_; }
    std::uint64_t total_count() const { return total_; }
    std::size_t size() const { return counts_.size(); }

    std::uint64_t count(const std::string& feature) const;
    double frequency(const std::string& feature) const;
    std::map<std::string, double> frequencies() const;

    // Frequencies of `features`, in that order, 0 for absent ones.
    std::vector<double> project(std::span<const std::string> features) const;

    // Features sorted by descending count, ties in ascending byte order.
    std::vector<std::string> ranked() const;

private:
    FeatureKind kind_;
    Counts counts_;
    std::uint64_t total_ = 0;
};

FeatureVector word_vector(std::string_view text);
FeatureVector word_vector(const Document& doc);

// Sliding window of n code points over the text with every whitespace run
// collapsed to a single space.
FeatureVector char_ngram_vector(std::string_view text, std::size_t n);
FeatureVector char_ngram_vector(const Document& doc, std::size_t n);

FeatureVector feature_vector(const Document& doc, FeatureKind kind);

// Most-frequent-feature list plus per-feature mean and population standard
// deviation of relative frequency across the documents.
struct CorpusStats {
    FeatureKind kind = FeatureKind::words();
    std::size_t mfw_size = 0;
    std::vector<std::string> mfw;  // rank 1 first
    std::vector<double> mean;
    std::vector<double> stddev;

    // Indices into mfw of features with a non-zero standard deviation; only
    // these take part in z-score space.
    std::vector<std::size_t> zscore_features() const;
    // 1-based ranks of the z-score features among themselves.
    std::vector<std::size_t> zscore_ranks() const;
};

CorpusStats compute_corpus_stats(std::span<const FeatureVector> vectors, std::size_t mfw_size);
CorpusStats compute_corpus_stats(std::span<const Document> corpus, FeatureKind kind, std::size_t mfw_size,
                                 unsigned jobs = 1);

// (f_i - mean_i) / stddev_i for every z-score feature of `stats`.
std::vector<double> zscore_vector(std::span<const double> mfw_frequencies, const CorpusStats& stats);
std::vector<double> zscore_vector(const FeatureVector& v, const CorpusStats& stats);
std::vector<double> zscore_vector(const Document& doc, const CorpusStats& stats);

// All known texts of one author merged into a single document.
class AuthorProfile {
public:
    AuthorProfile(std::string author, Document merged);

    const std::string& author() const { return author_; }
    const Document& document() const { return merged_; }
    const std::string& merged_text() const { return merged_.text(); }

    // Computed on first use; safe to call from several threads.
    const FeatureVector& vector(FeatureKind kind) const;

private:
    struct Cache;
    std::string author_;
    Document merged_;
    std::shared_ptr<Cache> cache_;
};

// Joins the texts with a single '\n'. Throws InputError on an empty list or
// mismatched author labels.
AuthorProfile build_profile(const std::string& author, std::span<const Document> docs);

} // namespace authorship
