// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "authorship/attribution.hpp"
#include "authorship/clustering.hpp"
#include "authorship/commands.hpp"
#include "authorship/distances.hpp"
#include "authorship/error.hpp"
#include "authorship/fixtures.hpp"
#include "authorship/format.hpp"
#include "authorship/parallel.hpp"
#include "authorship/synthetic.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace authorship;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
    std::vector<std::string> failures;

    void check(bool cond, const std::string& what) {
        if (cond) return;
        ok = false;
        if (failures.size() < 10) failures.push_back(what);
    }
};

std::string num(double v) {
    std::ostringstream s;
    s.precision(17);
    s << v;
    return s.str();
}

std::vector<std::string> vocab_of(std::size_t n) {
    std::vector<std::string> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back("w" + std::to_string(i));
    return v;
}

std::vector<double> counts_over(const oracle::Counts& c, const std::vector<std::string>& vocab) {
    std::vector<double> out;
    for (const auto& w : vocab) {
        const auto it = c.find(w);
        out.push_back(it == c.end() ? 0.0 : static_cast<double>(it->second));
    }
    return out;
}

bool any_nonzero(const std::vector<double>& v) {
    return std::any_of(v.begin(), v.end(), [](double x) { return x != 0.0; });
}

bool shares_key(const oracle::Counts& a, const oracle::Counts& b) {
    for (const auto& kv : a)
        if (b.count(kv.first)) return true;
    return false;
}

// 1. Published means from the published normalized table.
Outcome table5_reproduction() {
    Outcome o;
    const auto dir = fixtures::default_data_dir();
    const auto normalized = fixtures::load_normalized(dir / "table4.csv");
    const auto means = fixtures::load_means(dir / "table5.csv");
    o.check(normalized.size() == 80, "expected 80 normalized values, got " + std::to_string(normalized.size()));
    const auto checks = fixtures::check_means(normalized, means, 0.0005);
    o.check(checks.size() == 20, "expected 20 means, got " + std::to_string(checks.size()));
    std::size_t good = 0;
    double worst = 0;
    for (const auto& c : checks) {
        good += c.ok;
        worst = std::max(worst, std::fabs(c.computed - c.expected));
        o.check(c.ok, c.unknown + " / " + c.author + ": " + num(c.computed) + " vs " + num(c.expected));
    }
    struct Spot {
        const char* unknown;
        const char* author;
        double value;
    };
    for (const auto& s : {Spot{"La ninfa del cielo", "Guev", 0.596}, Spot{"El burlador de Sevilla", "Tirso", 0.571},
                          Spot{"La ninfa del cielo", "Clar", 0.720},
                          Spot{"El condenado por desconfiado", "Mira", 0.123}}) {
        const auto it = std::find_if(checks.begin(), checks.end(),
                                     [&](const auto& c) { return c.unknown == s.unknown && c.author == s.author; });
        o.check(it != checks.end() && std::fabs(it->computed - s.value) <= 0.0005,
                std::string("spot value ") + s.unknown + " / " + s.author);
    }
    o.detail = std::to_string(good) + "/" + std::to_string(checks.size()) + " means within 0.0005, max |diff| " +
               num(worst);
    return o;
}

// 2. Every distance against its direct-evaluation oracle.
Outcome oracle_equivalence() {
    Outcome o;
    constexpr int kSeeds = 200;
    std::size_t comparisons = 0;
    for (int seed = 0; seed < kSeeds; ++seed) {
        std::mt19937_64 rng(static_cast<std::uint64_t>(seed) * 7919 + 1);
        const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 300)(rng);
        const std::string tag = "seed " + std::to_string(seed) + " n=" + std::to_string(n) + ": ";

        const auto z1 = testutil::random_vector(rng, n, -4, 4);
        const auto z2 = testutil::random_vector(rng, n, -4, 4);
        std::vector<std::size_t> ranks(n);
        for (std::size_t i = 0; i < n; ++i) ranks[i] = i + 1;
        const double b = burrows_delta(z1, z2).value, bo = oracle::burrows(z1, z2);
        o.check(std::fabs(b - bo) <= 1e-9, tag + "burrows " + num(b) + " vs " + num(bo));
        const double e = eder_delta(z1, z2, ranks).value, eo = oracle::eder(z1, z2);
        o.check(std::fabs(e - eo) <= 1e-9, tag + "eder " + num(e) + " vs " + num(eo));

        const auto ca = testutil::random_counts(rng, n + 20, 0.6);
        const auto ct = testutil::random_counts(rng, n + 20, 0.6);
        const FeatureVector wa(FeatureKind::words(), ca), wt(FeatureKind::words(), ct);
        const auto vocab = vocab_of(n);
        const double k = kl_distance(wa, wt, vocab).value, ko = oracle::kl(ca, ct, vocab);
        o.check(std::fabs(k - ko) <= 1e-9, tag + "kl " + num(k) + " vs " + num(ko));

        const auto ra = wa.ranked(), rt = wt.ranked();
        const std::size_t kk = std::uniform_int_distribution<std::size_t>(1, n)(rng);
        const double r = rank_distance(ra, rt, kk).value, ro = oracle::rank(ra, rt, kk);
        o.check(std::fabs(r - ro) <= 1e-9, tag + "rank " + num(r) + " vs " + num(ro));

        const auto va = counts_over(ca, vocab), vt = counts_over(ct, vocab);
        if (any_nonzero(va) && any_nonzero(vt)) {
            const double c = cosine_distance(wa, wt, vocab).value, co = oracle::cosine(va, vt);
            o.check(std::fabs(c - co) <= 1e-9, tag + "cosine " + num(c) + " vs " + num(co));
            ++comparisons;
        }

        const FeatureVector ga(FeatureKind::chars(7), ca), gt(FeatureKind::chars(7), ct);
        for (auto unseen : {UnseenNgrams::floor, UnseenNgrams::ignore}) {
            const bool floor = unseen == UnseenNgrams::floor;
            if (!shares_key(ca, ct)) {
                bool threw = false;
                try {
                    perplexity_distance(ga, gt, unseen);
                } catch (const UndefinedDistance&) {
                    threw = true;
                }
                o.check(threw, tag + "perplexity without shared n-grams must be undefined");
                continue;
            }
            const double p = perplexity_distance(ga, gt, unseen).value, po = oracle::perplexity(ca, ct, floor);
            o.check(std::fabs(p - po) <= 1e-6 * std::fabs(po), tag + "perplexity " + num(p) + " vs " + num(po));
            ++comparisons;
        }
        comparisons += 4;
    }
    o.detail = std::to_string(kSeeds) + " seeds, " + std::to_string(comparisons) + " comparisons, up to 300 features";
    return o;
}

// 3. Identity, symmetry, non-negativity, bounds, normalization.
Outcome distance_axioms() {
    Outcome o;
    constexpr int kCases = 1500;
    std::mt19937_64 rng(424242);
    for (int i = 0; i < kCases; ++i) {
        const std::string tag = "case " + std::to_string(i) + ": ";
        const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 120)(rng);
        const auto z1 = testutil::random_vector(rng, n, -3, 3);
        const auto z2 = testutil::random_vector(rng, n, -3, 3);
        std::vector<std::size_t> ranks(n);
        for (std::size_t r = 0; r < n; ++r) ranks[r] = r + 1;

        o.check(burrows_delta(z1, z1).value == 0.0, tag + "burrows identity");
        o.check(eder_delta(z1, z1, ranks).value == 0.0, tag + "eder identity");
        const double b12 = burrows_delta(z1, z2).value, b21 = burrows_delta(z2, z1).value;
        o.check(b12 == b21 && b12 >= 0, tag + "burrows symmetry/non-negativity");
        const double e12 = eder_delta(z1, z2, ranks).value, e21 = eder_delta(z2, z1, ranks).value;
        o.check(e12 == e21 && e12 >= 0 && e12 <= b12, tag + "eder symmetry/non-negativity/bound");

        const auto ca = testutil::random_counts(rng, n + 10), ct = testutil::random_counts(rng, n + 10);
        const FeatureVector wa(FeatureKind::words(), ca), wt(FeatureKind::words(), ct);
        const auto vocab = vocab_of(n);
        o.check(kl_distance(wa, wa, vocab).value == 0.0, tag + "kl identity");
        const double k12 = kl_distance(wa, wt, vocab).value, k21 = kl_distance(wt, wa, vocab).value;
        o.check(k12 == k21 && k12 >= 0, tag + "kl symmetry/non-negativity");

        const auto va = counts_over(ca, vocab), vt = counts_over(ct, vocab);
        if (any_nonzero(va)) o.check(cosine_distance(wa, wa, vocab).value == 0.0, tag + "cosine identity");
        if (any_nonzero(va) && any_nonzero(vt)) {
            const double c12 = cosine_distance(wa, wt, vocab).value, c21 = cosine_distance(wt, wa, vocab).value;
            o.check(c12 == c21, tag + "cosine symmetry");
            o.check(c12 >= 0.0 && c12 <= 1.0, tag + "cosine in [0,1]: " + num(c12));
        }
        o.check(rank_distance(wa.ranked(), wt.ranked(), n).value >= 0, tag + "rank non-negativity");
        o.check(rank_distance(wt.ranked(), wt.ranked(), n).value == 0, tag + "rank identity");

        const FeatureVector ga(FeatureKind::chars(7), ca), gt(FeatureKind::chars(7), ct);
        if (shares_key(ca, ct)) o.check(perplexity_distance(ga, gt).value >= 1.0, tag + "perplexity >= 1");

        const std::size_t m = std::uniform_int_distribution<std::size_t>(2, 8)(rng);
        auto raw = testutil::random_vector(rng, m, 0, 10);
        if (i % 10 == 0) raw[0] = std::numeric_limits<double>::infinity();
        const auto norm = minmax_normalize(raw);
        const auto [lo, hi] = std::minmax_element(norm.values.begin(), norm.values.end());
        o.check(*lo == 0.0 && *hi == 1.0, tag + "normalized bounds");
        const auto again = minmax_normalize(norm.values);
        for (std::size_t j = 0; j < m; ++j) {
            o.check(std::fabs(again.values[j] - norm.values[j]) <= 1e-12, tag + "normalization idempotence");
        }
    }
    o.detail = std::to_string(kCases) + " randomized cases";
    return o;
}

// 4. Every held-out synthetic text goes to its author, per measure and by mean.
Outcome synthetic_attribution() {
    Outcome o;
    const auto generated = synthetic::make_attribution_corpus();
    const auto report = attribute(synthetic::to_documents(generated), AttributionConfig{}, default_jobs());
    std::size_t correct = 0, total = 0;
    for (const auto& r : report.results) {
        const auto& truth = generated.true_author.at(r.table.unknown_title);
        for (const auto& row : r.table.rows) {
            const auto v = rank_authors(r.table.authors, row.raw);
            const bool ok = v.ranking.front().author == truth && !v.tie;
            correct += ok;
            ++total;
            o.check(ok, r.table.unknown_title + " / " + std::string(to_string(row.measure)) + " -> " +
                            v.ranking.front().author);
        }
        const bool ok = r.verdict.ranking.front().author == truth && !r.verdict.tie;
        correct += ok;
        ++total;
        o.check(ok, r.table.unknown_title + " / mean -> " + r.verdict.ranking.front().author);
    }
    o.check(total == 20, "expected 20 verdicts, got " + std::to_string(total));
    o.detail = std::to_string(correct) + "/" + std::to_string(total) + " verdicts correct";
    return o;
}

// 5. Text and 60%-shared variant are siblings at the lowest merge.
Outcome near_duplicate_clustering() {
    Outcome o;
    const auto nd = synthetic::make_near_duplicate_corpus();
    const auto docs = synthetic::to_documents(nd.corpus);
    o.check(docs.size() == 12, "expected 12 documents, got " + std::to_string(docs.size()));
    const auto stats = compute_corpus_stats(docs, FeatureKind::words(), 250, default_jobs());
    const auto matrix = delta_matrix(docs, stats, DeltaVariant::burrows, default_jobs());
    const auto tree = agglomerate(matrix, Linkage::ward);

    std::size_t orig = 0, variant = 0;
    for (std::size_t i = 0; i < matrix.size(); ++i) {
        if (matrix.labels()[i] == nd.original_title) orig = i;
        if (matrix.labels()[i] == nd.variant_title) variant = i;
    }
    const auto& first = tree.nodes[tree.leaf_count];
    const std::vector<std::size_t> pair = {std::min(orig, variant), std::max(orig, variant)};
    o.check(tree.leaves_under(tree.leaf_count) == pair, "first merge is not {Original, Variant}");
    double lowest = std::numeric_limits<double>::infinity();
    for (std::size_t i = tree.leaf_count; i < tree.nodes.size(); ++i) lowest = std::min(lowest, tree.nodes[i].height);
    o.check(first.height == lowest, "sibling merge is not at the minimum height");

    double nearest_other = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < matrix.size(); ++i)
        for (std::size_t j = i + 1; j < matrix.size(); ++j)
            if (!(i == pair[0] && j == pair[1])) nearest_other = std::min(nearest_other, matrix.at(i, j));
    o.detail = "sibling merge at " + fixed(first.height) + ", next closest pair " + fixed(nearest_other);
    return o;
}

// 6. Complete linkage against the naive recomputing oracle.
Outcome clustering_oracle() {
    Outcome o;
    constexpr int kSeeds = 100;
    for (int seed = 0; seed < kSeeds; ++seed) {
        std::mt19937_64 rng(static_cast<std::uint64_t>(seed) + 1000);
        const std::size_t n = std::uniform_int_distribution<std::size_t>(5, 8)(rng);
        // Integer-valued distances on a small range so ties occur.
        std::uniform_int_distribution<int> dist(1, seed % 2 ? 6 : 1000);
        std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
        std::vector<double> flat(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) d[i][j] = d[j][i] = dist(rng);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) flat[i * n + j] = d[i][j];
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < n; ++i) labels.push_back("L" + std::to_string(i));
        const auto tree = agglomerate(DistanceMatrix(labels, flat), Linkage::complete);

        // Canonical form: sorted (leaf set, height) pairs.
        std::vector<oracle::Merge> got;
        for (std::size_t i = tree.leaf_count; i < tree.nodes.size(); ++i)
            got.push_back({tree.leaves_under(i), tree.nodes[i].height});
        std::sort(got.begin(), got.end());
        o.check(got == oracle::complete_linkage(d), "seed " + std::to_string(seed) + " n=" + std::to_string(n));
    }
    o.detail = std::to_string(kSeeds) + " seeds, 5-8 leaves, half with tied distances";
    return o;
}

// 7. Byte-identical artifacts across reruns and job counts.
Outcome determinism() {
    Outcome o;
    testutil::TempDir dir("acceptance_determinism");
    const auto manifest = synthetic::write_corpus(synthetic::make_attribution_corpus(), dir / "corpus");
    std::vector<std::map<std::string, std::string>> runs;
    const unsigned jobs[] = {1, 4, 1, 4};
    for (std::size_t i = 0; i < std::size(jobs); ++i) {
        RunConfig c;
        c.manifest = manifest;
        c.jobs = jobs[i];
        std::ostringstream sink;
        c.output_dir = dir / ("run" + std::to_string(i)) / "cluster";
        cmd_cluster(c, sink);
        c.output_dir = dir / ("run" + std::to_string(i)) / "attribution";
        cmd_attribute(c, sink);
        runs.push_back(testutil::snapshot(dir / ("run" + std::to_string(i))));
    }
    const std::size_t files = runs.front().size();
    o.check(files >= 8, "expected at least 8 artifacts, got " + std::to_string(files));
    for (std::size_t i = 1; i < runs.size(); ++i) {
        o.check(runs[i] == runs.front(), "run " + std::to_string(i) + " (jobs " + std::to_string(jobs[i]) +
                                             ") differs from run 0 (jobs 1)");
    }
    o.detail = std::to_string(runs.size()) + " runs (jobs 1,4,1,4), " + std::to_string(files) + " artifacts each";
    return o;
}

struct Criterion {
    const char* name;
    std::function<Outcome()> run;
    double budget_seconds;  // 0: no time bound
};

} // namespace

int main() {
    const Criterion criteria[] = {
        {"1 table5-reproduction", table5_reproduction, 1.0},
        {"2 oracle-equivalence", oracle_equivalence, 10.0},
        {"3 distance-axioms", distance_axioms, 0.0},
        {"4 synthetic-attribution", synthetic_attribution, 30.0},
        {"5 near-duplicate-clustering", near_duplicate_clustering, 10.0},
        {"6 clustering-oracle", clustering_oracle, 0.0},
        {"7 determinism", determinism, 0.0},
    };
    bool all = true;
    for (const auto& c : criteria) {
        Outcome o;
        const auto start = std::chrono::steady_clock::now();
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.budget_seconds > 0 && seconds >= c.budget_seconds) {
            o.ok = false;
            o.failures.push_back("over the " + fixed(c.budget_seconds, 0) + " s budget");
        }
        all = all && o.ok;
        std::printf("%s  %-28s %s (%.3f s)\n", o.ok ? "PASS" : "FAIL", c.name, o.detail.c_str(), seconds);
        for (const auto& f : o.failures) std::printf("      %s\n", f.c_str());
    }
    return all ? 0 : 1;
}
