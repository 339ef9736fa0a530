#include "authorship/distances.hpp"

#include "authorship/error.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace authorship {

namespace {

void require_same_length(std::size_t a, std::size_t b, std::string_view what) {
    if (a != b) {
        throw InputError(std::string(what) + ": length mismatch (" + std::to_string(a) + " vs " + std::to_string(b) +
                         ")");
    }
}

MeasureScore checked(MeasureId id, double value) {
    if (!std::isfinite(value) || value < 0.0) {
        throw InvariantError(std::string(to_string(id)) + " produced " + std::to_string(value));
    }
    return {id, value};
}

double kl_bits(std::span<const double> p, std::span<const double> q) {
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] > 0.0) sum += p[i] * std::log2(p[i] / q[i]);
    }
    return sum;
}

} // namespace

std::string_view to_string(MeasureId id) {
    switch (id) {
    case MeasureId::burrows_delta: return "burrows_delta";
    case MeasureId::eder_delta: return "eder_delta";
    case MeasureId::kullback_leibler: return "kullback_leibler";
    case MeasureId::perplexity: return "perplexity";
    case MeasureId::rank_based: return "rank_based";
    case MeasureId::cosine: return "cosine";
    }
    return "?";
}

std::optional<MeasureId> parse_measure(std::string_view name) {
    for (auto id : {MeasureId::burrows_delta, MeasureId::eder_delta, MeasureId::kullback_leibler,
                    MeasureId::perplexity, MeasureId::rank_based, MeasureId::cosine}) {
        if (name == to_string(id)) return id;
    }
    if (name == "kl") return MeasureId::kullback_leibler;
    if (name == "rank" || name == "ranking") return MeasureId::rank_based;
    if (name == "burrows") return MeasureId::burrows_delta;
    if (name == "eder") return MeasureId::eder_delta;
    if (name == "distributional") return MeasureId::cosine;
    return std::nullopt;
}

MeasureScore burrows_delta(std::span<const double> z1, std::span<const double> z2) {
    require_same_length(z1.size(), z2.size(), "burrows_delta");
    double sum = 0.0;
    for (std::size_t i = 0; i < z1.size(); ++i) sum += std::abs(z1[i] - z2[i]);
    return checked(MeasureId::burrows_delta, sum);
}

MeasureScore eder_delta(std::span<const double> z1, std::span<const double> z2, std::span<const std::size_t> ranks) {
    require_same_length(z1.size(), z2.size(), "eder_delta");
    require_same_length(z1.size(), ranks.size(), "eder_delta ranks");
    const auto n = static_cast<double>(z1.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < z1.size(); ++i) {
        if (ranks[i] < 1 || ranks[i] > z1.size()) throw InputError("eder_delta: rank out of range");
        sum += std::abs(z1[i] - z2[i]) * (n - static_cast<double>(ranks[i]) + 1.0) / n;
    }
    return checked(MeasureId::eder_delta, sum);
}

double symmetric_kl(std::span<const double> p, std::span<const double> q) {
    require_same_length(p.size(), q.size(), "kl_distance");
    if (p.empty()) throw InputError("kl_distance: empty vocabulary");
    return (kl_bits(p, q) + kl_bits(q, p)) / 2.0;
}

std::vector<double> smoothed_distribution(const FeatureVector& v, std::span<const std::string> vocab) {
    std::vector<double> out;
    out.reserve(vocab.size());
    double total = 0.0;
    for (const auto& f : vocab) {
        out.push_back(static_cast<double>(v.count(f)) + 1.0);
        total += out.back();
    }
    for (auto& x : out) x /= total;
    return out;
}

MeasureScore kl_distance(const FeatureVector& a, const FeatureVector& t, std::span<const std::string> vocab) {
    if (vocab.empty()) throw InputError("kl_distance: empty vocabulary");
    const auto p = smoothed_distribution(a, vocab);
    const auto q = smoothed_distribution(t, vocab);
    return checked(MeasureId::kullback_leibler, symmetric_kl(p, q));
}

MeasureScore perplexity_distance(const FeatureVector& model, const FeatureVector& test, UnseenNgrams unseen) {
    if (model.kind() != test.kind()) throw InputError("perplexity_distance: feature kinds differ");
    const auto& m = model.counts();
    const auto& t = test.counts();
    const auto m_total = static_cast<double>(model.total_count());
    const auto t_total = static_cast<double>(test.total_count());
    // Both tables are byte-ordered; walk them together.
    double exponent = 0.0;
    double unshared_mass = 0.0;
    bool shared = false;
    auto mi = m.begin();
    auto ti = t.begin();
    while (ti != t.end()) {
        const int c = mi == m.end() ? -1 : ti->first.compare(mi->first);
        if (c < 0) {
            unshared_mass += static_cast<double>(ti->second) / t_total;
            ++ti;
        } else if (c > 0) {
            ++mi;
        } else {
            shared = true;
            const double tf = static_cast<double>(ti->second) / t_total;
            const double mf = static_cast<double>(mi->second) / m_total;
            exponent -= tf * std::log2(mf);
            ++ti;
            ++mi;
        }
    }
    if (!shared) throw UndefinedDistance("perplexity: model and test share no n-gram");
    if (unseen == UnseenNgrams::floor) exponent += unshared_mass * std::log2(m_total + 1.0);
    return checked(MeasureId::perplexity, std::exp2(exponent));
}

double unseen_ngram_probability(const FeatureVector& model) {
    return 1.0 / (static_cast<double>(model.total_count()) + 1.0);
}

MeasureScore rank_distance(std::span<const std::string> rank_a, std::span<const std::string> rank_t, std::size_t k) {
    if (k < 1) throw InputError("rank_distance: k must be at least 1");
    std::unordered_map<std::string_view, std::size_t> a_rank;
    for (std::size_t i = 0; i < std::min(k, rank_a.size()); ++i) a_rank.emplace(rank_a[i], i + 1);
    double sum = 0.0;
    for (std::size_t i = 0; i < std::min(k, rank_t.size()); ++i) {
        const auto it = a_rank.find(rank_t[i]);
        const std::size_t ra = it == a_rank.end() ? k + 1 : it->second;
        const std::size_t rt = i + 1;
        sum += static_cast<double>(ra > rt ? ra - rt : rt - ra);
    }
    return checked(MeasureId::rank_based, sum);
}

double cosine_distance(std::span<const double> a, std::span<const double> t) {
    require_same_length(a.size(), t.size(), "cosine_distance");
    double dot = 0.0, aa = 0.0, tt = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * t[i];
        aa += a[i] * a[i];
        tt += t[i] * t[i];
    }
    if (aa == 0.0 || tt == 0.0) throw InputError("cosine_distance: zero vector");
    return std::clamp(1.0 - dot / std::sqrt(aa * tt), 0.0, 1.0);
}

MeasureScore cosine_distance(const FeatureVector& a, const FeatureVector& t, std::span<const std::string> vocab) {
    if (vocab.empty()) throw InputError("cosine_distance: empty vocabulary");
    return checked(MeasureId::cosine, cosine_distance(a.project(vocab), t.project(vocab)));
}

} // namespace authorship
