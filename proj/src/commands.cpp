#include "authorship/commands.hpp"

#include "authorship/attribution.hpp"
#include "authorship/corpus.hpp"
#include "authorship/error.hpp"
#include "authorship/features.hpp"
#include "authorship/fixtures.hpp"
#include "authorship/format.hpp"
#include "authorship/report.hpp"
#include "authorship/synthetic.hpp"

#include <fstream>
#include <ostream>

namespace authorship {

namespace fs = std::filesystem;

namespace {

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + path.string());
    out << content;
    if (!out) throw InputError("failed writing " + path.string());
}

void prepare_output_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw InputError("output directory not writable: " + dir.string());
}

Corpus load_corpus(const RunConfig& config) {
    config.validate();
    return ingest(load_manifest(config.manifest), config.jobs);
}

std::string dump_vector(const FeatureVector& v) {
    std::string out = "# " + v.kind().name() + " total=" + std::to_string(v.total_count()) + "\n";
    for (const auto& [feature, c] : v.counts()) {
        out += feature + "\t" + shortest(static_cast<double>(c) / static_cast<double>(v.total_count())) + "\n";
    }
    return out;
}

std::string dump_stats(const CorpusStats& stats) {
    std::string out = "# " + stats.kind.name() + " mfw_size=" + std::to_string(stats.mfw_size) + "\n";
    out += "rank\tfeature\tmean\tstddev\n";
    for (std::size_t i = 0; i < stats.mfw.size(); ++i) {
        out += std::to_string(i + 1) + "\t" + stats.mfw[i] + "\t" + shortest(stats.mean[i]) + "\t" +
               shortest(stats.stddev[i]) + "\n";
    }
    return out;
}

} // namespace

void RunConfig::validate() const {
    if (manifest.empty()) throw InputError("no manifest given");
    if (mfw_size < 1) throw InputError("mfw size must be at least 1");
    if (char_n < 1) throw InputError("character n-gram size must be at least 1");
    if (jobs < 1) throw InputError("jobs must be at least 1");
    if (measures.empty()) throw InputError("no measures selected");
}

int cmd_ingest(const RunConfig& config, bool dump_features, std::ostream& out) {
    const auto corpus = load_corpus(config);
    out << "documents: " << corpus.size() << "\n";
    for (const auto& d : corpus) {
        out << d.title() << "\t" << d.author_label() << "\t" << d.token_count() << " tokens\n";
    }
    if (!dump_features || corpus.empty()) return kExitOk;

    prepare_output_dir(config.output_dir);
    const auto dir = config.output_dir / "features";
    prepare_output_dir(dir);
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const auto base = std::string(i < 9 ? "0" : "") + std::to_string(i + 1) + "_" + slugify(corpus[i].title());
        write_file(dir / (base + ".words.tsv"), dump_vector(word_vector(corpus[i])));
        write_file(dir / (base + ".chars.tsv"), dump_vector(char_ngram_vector(corpus[i], config.char_n)));
    }
    write_file(dir / "corpus_stats.tsv",
               dump_stats(compute_corpus_stats(corpus, FeatureKind::words(), config.mfw_size, config.jobs)));
    out << "feature tables written to " << dir.string() << "\n";
    return kExitOk;
}

int cmd_cluster(const RunConfig& config, std::ostream& out) {
    const auto corpus = load_corpus(config);
    if (corpus.size() < 2) throw InputError("clustering needs at least 2 documents");
    prepare_output_dir(config.output_dir);

    const auto stats = compute_corpus_stats(corpus, FeatureKind::words(), config.mfw_size, config.jobs);
    const auto matrix = delta_matrix(corpus, stats, config.delta, config.jobs);
    const auto tree = agglomerate(matrix, config.linkage);
    const ClusterRunInfo info{config.delta, config.linkage, config.mfw_size, stats.zscore_features().size()};

    write_file(config.output_dir / "dendrogram.nwk", serialize_tree(tree, TreeFormat::newick));
    write_file(config.output_dir / "dendrogram.dot", serialize_tree(tree, TreeFormat::dot));
    write_file(config.output_dir / "distances.csv", matrix_to_csv(matrix));
    const auto report = render_cluster_report(info, matrix, tree);
    write_file(config.output_dir / "cluster_report.txt", report);
    out << report;
    return kExitOk;
}

int cmd_attribute(const RunConfig& config, std::ostream& out) {
    config.validate();
    const auto manifest = load_manifest(config.manifest);
    if (manifest.unknown_count() == 0) {
        throw InputError("manifest has no entries with author 'unknown'; nothing to attribute");
    }
    if (manifest.known_authors().size() < 2) throw InputError("attribution needs at least 2 labeled authors");
    const auto corpus = ingest(manifest, config.jobs);
    prepare_output_dir(config.output_dir);

    AttributionConfig ac;
    ac.mfw_size = config.mfw_size;
    ac.char_n = config.char_n;
    ac.measures = config.measures;
    ac.perplexity_unseen = config.perplexity_unseen;
    const auto report = attribute(corpus, ac, config.jobs);

    for (std::size_t i = 0; i < report.results.size(); ++i) {
        const auto& r = report.results[i];
        const auto name = "report_" + std::string(i < 9 ? "0" : "") + std::to_string(i + 1) + "_" +
                          slugify(r.table.unknown_title) + ".json";
        write_file(config.output_dir / name, result_to_json(report, r));
    }
    const auto text = render_attribution_text(report);
    write_file(config.output_dir / "attribution.txt", text);
    out << text;
    return kExitOk;
}

int cmd_run(const RunConfig& config, std::ostream& out) {
    if (config.mode != RunConfig::Mode::attribute) {
        RunConfig c = config;
        if (config.mode == RunConfig::Mode::both) c.output_dir /= "cluster";
        cmd_cluster(c, out);
    }
    if (config.mode != RunConfig::Mode::cluster) {
        RunConfig c = config;
        if (config.mode == RunConfig::Mode::both) c.output_dir /= "attribution";
        cmd_attribute(c, out);
    }
    return kExitOk;
}

namespace {

struct CheckOutcome {
    bool passed;
    std::string detail;
};

CheckOutcome check_fixture_means(const SelftestOptions& options, std::ostream& out) {
    const auto dir = fixtures::default_data_dir();
    const auto t4 = options.normalized_fixture.empty() ? dir / "table4.csv" : options.normalized_fixture;
    const auto t5 = options.means_fixture.empty() ? dir / "table5.csv" : options.means_fixture;
    const auto checks = fixtures::check_means(fixtures::load_normalized(t4), fixtures::load_means(t5));
    std::size_t failed = 0;
    for (const auto& c : checks) {
        if (!c.ok) ++failed;
        if (options.verbose || !c.ok) {
            out << "    " << (c.ok ? "ok   " : "FAIL ") << c.unknown << " / " << c.author << ": expected "
                << fixed(c.expected, 3) << ", computed " << fixed(c.computed) << " (diff "
                << fixed(c.computed - c.expected, 6) << ")\n";
        }
    }
    return {failed == 0 && checks.size() == 20,
            std::to_string(checks.size() - failed) + "/" + std::to_string(checks.size()) + " means within 0.0005"};
}

CheckOutcome check_synthetic(const SelftestOptions& options, std::ostream& out) {
    synthetic::AttributionSpec spec;
    spec.seed = options.seed;
    const auto generated = synthetic::make_attribution_corpus(spec);
    const auto corpus = synthetic::to_documents(generated);
    const auto report = attribute(corpus, AttributionConfig{}, options.jobs);
    std::size_t correct = 0, total = 0;
    for (const auto& r : report.results) {
        const auto& truth = generated.true_author.at(r.table.unknown_title);
        for (const auto& row : r.table.rows) {
            const auto v = rank_authors(r.table.authors, row.raw);
            const bool ok = v.ranking.front().author == truth && !v.tie;
            correct += ok;
            ++total;
            if (options.verbose || !ok) {
                out << "    " << (ok ? "ok   " : "FAIL ") << r.table.unknown_title << " / " << to_string(row.measure)
                    << ": " << v.ranking.front().author << "\n";
            }
        }
        const bool ok = r.verdict.ranking.front().author == truth && !r.verdict.tie;
        correct += ok;
        ++total;
        if (options.verbose || !ok) {
            out << "    " << (ok ? "ok   " : "FAIL ") << r.table.unknown_title << " / mean: "
                << r.verdict.ranking.front().author << " (margin " << fixed(r.verdict.margin.value_or(0.0)) << ")\n";
        }
    }
    return {correct == total && total > 0, std::to_string(correct) + "/" + std::to_string(total) + " verdicts correct"};
}

} // namespace

int cmd_selftest(const SelftestOptions& options, std::ostream& out) {
    struct Check {
        const char* name;
        CheckOutcome (*run)(const SelftestOptions&, std::ostream&);
    };
    const Check checks[] = {
        {"fixture means", check_fixture_means},
        {"synthetic attribution", check_synthetic},
    };
    bool all = true;
    for (const auto& check : checks) {
        CheckOutcome outcome;
        try {
            outcome = check.run(options, out);
        } catch (const std::exception& e) {
            outcome = {false, std::string("error: ") + e.what()};
        }
        all = all && outcome.passed;
        out << (outcome.passed ? "PASS  " : "FAIL  ") << check.name << ": " << outcome.detail << "\n";
    }
    return all ? kExitOk : kExitInternalError;
}

int cmd_generate(std::uint64_t seed, const fs::path& dir, std::ostream& out) {
    synthetic::AttributionSpec spec;
    spec.seed = seed;
    const auto manifest = synthetic::write_corpus(synthetic::make_attribution_corpus(spec), dir);
    out << "wrote " << manifest.string() << "\n";
    return kExitOk;
}

} // namespace authorship
