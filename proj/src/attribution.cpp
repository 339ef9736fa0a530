#include "authorship/attribution.hpp"

#include "authorship/error.hpp"
#include "authorship/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace authorship {

Normalized minmax_normalize(std::span<const double> raw) {
    if (raw.size() < 2) throw InputError("min-max normalization needs at least 2 scores");
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    Normalized out;
    for (double x : raw) {
        if (std::isnan(x) || x < 0.0) throw InputError("min-max normalization: invalid score");
        if (std::isinf(x)) {
            out.had_infinite = true;
            continue;
        }
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    const bool any_finite = lo <= hi;
    out.degenerate = !out.had_infinite && (!any_finite || lo == hi);
    out.values.reserve(raw.size());
    for (double x : raw) {
        if (std::isinf(x)) {
            out.values.push_back(1.0);
        } else if (hi > lo) {
            out.values.push_back((x - lo) / (hi - lo));
        } else {
            out.values.push_back(0.0);
        }
    }
    return out;
}

ScoreTable score_all(std::span<const AuthorProfile> profiles, const Document& unknown, const ScoringContext& ctx,
                     std::span<const MeasureId> measures, unsigned jobs) {
    if (profiles.size() < 2) throw InputError("attribution needs at least 2 candidate authors");
    if (measures.empty()) throw InputError("no measures selected");

    ScoreTable table;
    table.unknown_title = unknown.title();
    for (const auto& p : profiles) table.authors.push_back(p.author());

    const bool needs_words = std::any_of(measures.begin(), measures.end(), [](MeasureId m) {
        return m == MeasureId::kullback_leibler || m == MeasureId::rank_based || m == MeasureId::cosine;
    });
    const bool needs_chars = std::find(measures.begin(), measures.end(), MeasureId::perplexity) != measures.end();
    const auto words = FeatureKind::words();
    const auto chars = FeatureKind::chars(ctx.char_n);

    std::optional<FeatureVector> t_words, t_chars;
    std::vector<std::string> t_ranked;
    if (needs_words) {
        t_words.emplace(word_vector(unknown));
        t_ranked = t_words->ranked();
    }
    if (needs_chars) t_chars.emplace(char_ngram_vector(unknown, ctx.char_n));

    std::vector<std::vector<std::string>> a_ranked(profiles.size());
    parallel_for(profiles.size(), jobs, [&](std::size_t a) {
        if (needs_words) a_ranked[a] = profiles[a].vector(words).ranked();
        if (needs_chars) profiles[a].vector(chars);
    });

    const std::size_t n_authors = profiles.size();
    table.rows.resize(measures.size());
    for (std::size_t m = 0; m < measures.size(); ++m) {
        table.rows[m].measure = measures[m];
        table.rows[m].raw.assign(n_authors, 0.0);
    }
    parallel_for(measures.size() * n_authors, jobs, [&](std::size_t idx) {
        const std::size_t m = idx / n_authors;
        const std::size_t a = idx % n_authors;
        const auto& profile = profiles[a];
        double value = 0.0;
        switch (measures[m]) {
        case MeasureId::perplexity:
            try {
                value = perplexity_distance(profile.vector(chars), *t_chars, ctx.perplexity_unseen).value;
            } catch (const UndefinedDistance&) {
                value = std::numeric_limits<double>::infinity();
            }
            break;
        case MeasureId::kullback_leibler:
            value = kl_distance(profile.vector(words), *t_words, ctx.vocab).value;
            break;
        case MeasureId::rank_based:
            value = rank_distance(a_ranked[a], t_ranked, ctx.rank_k).value;
            break;
        case MeasureId::cosine:
            value = cosine_distance(profile.vector(words), *t_words, ctx.vocab).value;
            break;
        case MeasureId::burrows_delta:
        case MeasureId::eder_delta:
            throw InputError(std::string(to_string(measures[m])) + " is a clustering measure, not a profile measure");
        }
        table.rows[m].raw[a] = value;
    });
    return table;
}

void normalize_table(ScoreTable& table) {
    for (auto& row : table.rows) {
        auto n = minmax_normalize(row.raw);
        row.normalized = std::move(n.values);
        row.degenerate = n.degenerate;
        row.had_infinite = n.had_infinite;
    }
}

std::vector<double> mean_combine(const std::vector<std::vector<double>>& normalized) {
    if (normalized.empty()) throw InputError("mean_combine: no measures");
    const std::size_t n_authors = normalized.front().size();
    std::vector<double> means(n_authors);
    std::vector<double> column(normalized.size());
    for (std::size_t a = 0; a < n_authors; ++a) {
        for (std::size_t m = 0; m < normalized.size(); ++m) {
            if (normalized[m].size() != n_authors || std::isnan(normalized[m][a])) {
                throw InputError("mean_combine: missing measure value for author " + std::to_string(a));
            }
            column[m] = normalized[m][a];
        }
        // Summing in sorted order makes the result independent of measure order.
        std::sort(column.begin(), column.end());
        double sum = 0.0;
        for (double v : column) sum += v;
        means[a] = sum / static_cast<double>(column.size());
    }
    return means;
}

std::vector<double> mean_combine(const ScoreTable& table) {
    std::vector<std::vector<double>> normalized;
    for (const auto& row : table.rows) normalized.push_back(row.normalized);
    return mean_combine(normalized);
}

Verdict rank_authors(std::span<const std::string> authors, std::span<const double> scores) {
    if (authors.size() != scores.size()) throw InputError("rank_authors: size mismatch");
    Verdict v;
    std::vector<std::size_t> order(authors.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return scores[a] < scores[b]; });
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        const auto i = order[pos];
        std::size_t rank = pos + 1;
        if (pos > 0 && scores[i] == v.ranking.back().score) rank = v.ranking.back().rank;
        v.ranking.push_back({authors[i], scores[i], rank});
    }
    if (v.ranking.size() >= 2) {
        v.margin = v.ranking[1].score - v.ranking[0].score;
        v.tie = v.ranking[1].rank == 1;
    }
    return v;
}

AttributionReport attribute(std::span<const Document> corpus, const AttributionConfig& config, unsigned jobs) {
    AttributionReport report;
    report.config = config;

    std::vector<std::vector<Document>> by_author;
    std::vector<const Document*> unknowns;
    for (const auto& d : corpus) {
        if (d.is_unknown()) {
            unknowns.push_back(&d);
            continue;
        }
        const auto it = std::find(report.authors.begin(), report.authors.end(), d.author_label());
        if (it == report.authors.end()) {
            report.authors.push_back(d.author_label());
            by_author.emplace_back();
            by_author.back().push_back(d);
        } else {
            by_author[static_cast<std::size_t>(it - report.authors.begin())].push_back(d);
        }
    }
    if (report.authors.size() < 2) throw InputError("attribution needs at least 2 labeled authors");
    if (unknowns.empty()) throw InputError("attribution needs at least one text labeled 'unknown'");

    std::vector<AuthorProfile> profiles;
    for (std::size_t a = 0; a < report.authors.size(); ++a) {
        profiles.push_back(build_profile(report.authors[a], by_author[a]));
    }

    const auto stats = compute_corpus_stats(corpus, FeatureKind::words(), config.mfw_size, jobs);
    report.stats_documents = corpus.size();
    ScoringContext ctx{stats.mfw, config.mfw_size, config.char_n, config.perplexity_unseen};

    for (const auto* u : unknowns) {
        UnknownResult r;
        r.table = score_all(profiles, *u, ctx, config.measures, jobs);
        normalize_table(r.table);
        r.means = mean_combine(r.table);
        r.verdict = rank_authors(r.table.authors, r.means);
        report.results.push_back(std::move(r));
    }
    return report;
}

} // namespace authorship
