#include "authorship/features.hpp"

#include "authorship/error.hpp"
#include "authorship/parallel.hpp"
#include "authorship/unicode.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <optional>
#include <unordered_map>

namespace authorship {

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    for (char32_t c : unicode::decode(text)) {
        if (unicode::is_letter(c) || (!current.empty() && unicode::is_mark(c))) {
            unicode::append_utf8(current, unicode::to_lower(c));
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

FeatureKind FeatureKind::chars(std::size_t n) {
    if (n == 0) throw InputError("character n-gram size must be positive");
    return FeatureKind(Type::char_ngram, n);
}

std::string FeatureKind::name() const {
    return type_ == Type::word_unigram ? "word_unigram" : "char_" + std::to_string(n_) + "gram";
}

FeatureVector::FeatureVector(FeatureKind kind, Counts counts) : kind_(kind), counts_(std::move(counts)) {
    if (counts_.empty()) throw InvariantError("feature vector without features");
    for (const auto& [feature, c] : counts_) {
        if (c == 0) throw InvariantError("zero count for feature '" + feature + "'");
        total_ += c;
    }
}

std::uint64_t FeatureVector::count(const std::string& feature) const {
    const auto it = counts_.find(feature);
    return it == counts_.end() ? 0 : it->second;
}

double FeatureVector::frequency(const std::string& feature) const {
    return static_cast<double>(count(feature)) / static_cast<double>(total_);
}

std::map<std::string, double> FeatureVector::frequencies() const {
    std::map<std::string, double> out;
    for (const auto& [feature, c] : counts_) {
        out.emplace_hint(out.end(), feature, static_cast<double>(c) / static_cast<double>(total_));
    }
    return out;
}

std::vector<double> FeatureVector::project(std::span<const std::string> features) const {
    std::vector<double> out;
    out.reserve(features.size());
    for (const auto& f : features) out.push_back(frequency(f));
    return out;
}

std::vector<std::string> FeatureVector::ranked() const {
    std::vector<const Counts::value_type*> items;
    items.reserve(counts_.size());
    for (const auto& kv : counts_) items.push_back(&kv);
    // counts_ is already in byte order, so a stable sort by count keeps ties ordered.
    std::stable_sort(items.begin(), items.end(), [](auto* a, auto* b) { return a->second > b->second; });
    std::vector<std::string> out;
    out.reserve(items.size());
    for (auto* kv : items) out.push_back(kv->first);
    return out;
}

namespace {

FeatureVector::Counts to_ordered(std::unordered_map<std::string, std::uint64_t>&& counts) {
    return FeatureVector::Counts(std::make_move_iterator(counts.begin()), std::make_move_iterator(counts.end()));
}

} // namespace

FeatureVector word_vector(std::string_view text) {
    std::unordered_map<std::string, std::uint64_t> counts;
    for (auto& t : tokenize(text)) ++counts[std::move(t)];
    if (counts.empty()) throw InputError("document has no tokens");
    return FeatureVector(FeatureKind::words(), to_ordered(std::move(counts)));
}

FeatureVector word_vector(const Document& doc) {
    try {
        return word_vector(doc.text());
    } catch (const InputError& e) {
        throw InputError("'" + doc.title() + "': " + e.what());
    }
}

FeatureVector char_ngram_vector(std::string_view text, std::size_t n) {
    const auto kind = FeatureKind::chars(n);
    std::u32string collapsed;
    bool in_space = false;
    for (char32_t c : unicode::decode(text)) {
        if (unicode::is_whitespace(c)) {
            if (!in_space) collapsed.push_back(U' ');
            in_space = true;
        } else {
            collapsed.push_back(c);
            in_space = false;
        }
    }
    if (collapsed.size() < n) {
        throw InputError("text shorter than n-gram size " + std::to_string(n));
    }
    // Encode once and slide byte offsets to avoid re-encoding every window.
    std::vector<std::size_t> offsets;
    offsets.reserve(collapsed.size() + 1);
    std::string utf8;
    for (char32_t c : collapsed) {
        offsets.push_back(utf8.size());
        unicode::append_utf8(utf8, c);
    }
    offsets.push_back(utf8.size());

    std::unordered_map<std::string, std::uint64_t> counts;
    for (std::size_t i = 0; i + n <= collapsed.size(); ++i) {
        ++counts[utf8.substr(offsets[i], offsets[i + n] - offsets[i])];
    }
    return FeatureVector(kind, to_ordered(std::move(counts)));
}

FeatureVector char_ngram_vector(const Document& doc, std::size_t n) {
    try {
        return char_ngram_vector(doc.text(), n);
    } catch (const InputError& e) {
        throw InputError("'" + doc.title() + "': " + e.what());
    }
}

FeatureVector feature_vector(const Document& doc, FeatureKind kind) {
    return kind.type() == FeatureKind::Type::word_unigram ? word_vector(doc) : char_ngram_vector(doc, kind.n());
}

std::vector<std::size_t> CorpusStats::zscore_features() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < mfw.size(); ++i) {
        if (stddev[i] > 0.0) out.push_back(i);
    }
    return out;
}

std::vector<std::size_t> CorpusStats::zscore_ranks() const {
    std::vector<std::size_t> ranks(zscore_features().size());
    std::iota(ranks.begin(), ranks.end(), std::size_t{1});
    return ranks;
}

CorpusStats compute_corpus_stats(std::span<const FeatureVector> vectors, std::size_t mfw_size) {
    if (vectors.empty()) throw InputError("cannot compute corpus statistics over an empty corpus");
    if (mfw_size == 0) throw InputError("MFW size must be positive");
    const FeatureKind kind = vectors.front().kind();
    std::map<std::string, std::uint64_t> totals;
    for (const auto& v : vectors) {
        if (v.kind() != kind) throw InvariantError("mixed feature kinds in corpus statistics");
        for (const auto& [feature, c] : v.counts()) totals[feature] += c;
    }

    // totals iterates in byte order; the stable sort keeps that as the tie-break.
    std::vector<std::pair<std::string, std::uint64_t>> ranked(totals.begin(), totals.end());
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    if (ranked.size() > mfw_size) ranked.resize(mfw_size);

    CorpusStats stats;
    stats.kind = kind;
    stats.mfw_size = mfw_size;
    const auto docs = static_cast<double>(vectors.size());
    for (auto& [feature, total] : ranked) {
        double sum = 0.0;
        for (const auto& v : vectors) sum += v.frequency(feature);
        const double mean = sum / docs;
        double sq = 0.0;
        for (const auto& v : vectors) {
            const double d = v.frequency(feature) - mean;
            sq += d * d;
        }
        stats.mfw.push_back(std::move(feature));
        stats.mean.push_back(mean);
        stats.stddev.push_back(std::sqrt(sq / docs));
    }
    return stats;
}

CorpusStats compute_corpus_stats(std::span<const Document> corpus, FeatureKind kind, std::size_t mfw_size,
                                 unsigned jobs) {
    if (corpus.empty()) throw InputError("cannot compute corpus statistics over an empty corpus");
    std::vector<std::optional<FeatureVector>> slots(corpus.size());
    parallel_for(corpus.size(), jobs, [&](std::size_t i) { slots[i].emplace(feature_vector(corpus[i], kind)); });
    std::vector<FeatureVector> vectors;
    vectors.reserve(slots.size());
    for (auto& s : slots) vectors.push_back(std::move(*s));
    return compute_corpus_stats(vectors, mfw_size);
}

std::vector<double> zscore_vector(std::span<const double> mfw_frequencies, const CorpusStats& stats) {
    if (mfw_frequencies.size() != stats.mfw.size()) {
        throw InvariantError("frequency list does not match the MFW list");
    }
    std::vector<double> z;
    for (std::size_t i : stats.zscore_features()) {
        z.push_back((mfw_frequencies[i] - stats.mean[i]) / stats.stddev[i]);
    }
    return z;
}

std::vector<double> zscore_vector(const FeatureVector& v, const CorpusStats& stats) {
    if (v.kind() != stats.kind) throw InvariantError("feature kind does not match corpus statistics");
    return zscore_vector(v.project(stats.mfw), stats);
}

std::vector<double> zscore_vector(const Document& doc, const CorpusStats& stats) {
    return zscore_vector(feature_vector(doc, stats.kind), stats);
}

struct AuthorProfile::Cache {
    std::mutex mu;
    std::map<FeatureKind, std::unique_ptr<FeatureVector>> vectors;
};

AuthorProfile::AuthorProfile(std::string author, Document merged)
    : author_(std::move(author)), merged_(std::move(merged)), cache_(std::make_shared<Cache>()) {}

const FeatureVector& AuthorProfile::vector(FeatureKind kind) const {
    std::lock_guard lock(cache_->mu);
    auto& slot = cache_->vectors[kind];
    if (!slot) slot = std::make_unique<FeatureVector>(feature_vector(merged_, kind));
    return *slot;
}

AuthorProfile build_profile(const std::string& author, std::span<const Document> docs) {
    if (docs.empty()) throw InputError("no documents for author '" + author + "'");
    std::string merged;
    for (std::size_t i = 0; i < docs.size(); ++i) {
        if (docs[i].author_label() != author) {
            throw InputError("document '" + docs[i].title() + "' is not by '" + author + "'");
        }
        if (i > 0) merged.push_back('\n');
        merged += docs[i].text();
    }
    return AuthorProfile(author, Document("profile:" + author, author, std::move(merged)));
}

} // namespace authorship
