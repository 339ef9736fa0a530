// Command-line front end: ingest, cluster, attribute, run, selftest, generate.

#include "authorship/commands.hpp"
#include "authorship/error.hpp"
#include "authorship/parallel.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <algorithm>
#include <sstream>

namespace {

using namespace authorship;

std::vector<MeasureId> parse_measures(const std::string& list) {
    std::vector<MeasureId> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto m = parse_measure(item);
        if (!m || *m == MeasureId::burrows_delta || *m == MeasureId::eder_delta) {
            throw InputError("unknown profile measure '" + item +
                             "' (expected perplexity, kullback_leibler, rank_based, cosine)");
        }
        if (std::find(out.begin(), out.end(), *m) == out.end()) out.push_back(*m);
    }
    if (out.empty()) throw InputError("empty measure list");
    return out;
}

void add_corpus_options(CLI::App* cmd, RunConfig& config, std::string& out_dir) {
    cmd->add_option("-m,--manifest", config.manifest, "Tab-separated corpus manifest")->required();
    cmd->add_option("-o,--out", out_dir, "Output directory")->envname("AUTHORSHIP_OUTPUT_DIR");
    cmd->add_option("--mfw", config.mfw_size, "Number of most frequent words")->check(CLI::PositiveNumber);
    cmd->add_option("--char-n", config.char_n, "Character n-gram size for perplexity")->check(CLI::PositiveNumber);
    cmd->add_option("-j,--jobs", config.jobs, "Worker threads")->check(CLI::PositiveNumber);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Authorship attribution: Delta clustering and profile-based distance measures"};
    app.require_subcommand(1);
    app.set_config("--config", "", "TOML/INI file with option defaults; flags override it");

    RunConfig config;
    config.jobs = default_jobs();
    std::string out_dir = "out";
    std::string delta = "burrows";
    std::string linkage = "ward";
    std::string measures = "perplexity,kullback_leibler,rank_based,cosine";
    std::string mode = "both";
    std::string unseen = "floor";
    bool dump_features = false;

    auto* ingest = app.add_subcommand("ingest", "Load and preprocess a corpus, print a summary");
    add_corpus_options(ingest, config, out_dir);
    ingest->add_flag("--dump-features", dump_features, "Write feature tables under <out>/features");

    auto* cluster = app.add_subcommand("cluster", "Delta distance matrix and dendrogram");
    add_corpus_options(cluster, config, out_dir);
    cluster->add_option("--delta", delta, "burrows or eder")->check(CLI::IsMember({"burrows", "eder"}));
    cluster->add_option("--linkage", linkage, "ward, complete, average or single")
        ->check(CLI::IsMember({"ward", "complete", "average", "single"}));

    auto* attribute = app.add_subcommand("attribute", "Score unknown texts against author profiles");
    add_corpus_options(attribute, config, out_dir);
    attribute->add_option("--measures", measures, "Comma-separated subset of the profile measures");
    attribute->add_option("--perplexity-unseen", unseen, "floor (penalize unmatched n-grams) or ignore")
        ->check(CLI::IsMember({"floor", "ignore"}));

    auto* run = app.add_subcommand("run", "Cluster and/or attribute in one go");
    add_corpus_options(run, config, out_dir);
    run->add_option("--mode", mode, "cluster, attribute or both")
        ->check(CLI::IsMember({"cluster", "attribute", "both"}));
    run->add_option("--delta", delta, "burrows or eder")->check(CLI::IsMember({"burrows", "eder"}));
    run->add_option("--linkage", linkage, "ward, complete, average or single")
        ->check(CLI::IsMember({"ward", "complete", "average", "single"}));
    run->add_option("--measures", measures, "Comma-separated subset of the profile measures");
    run->add_option("--perplexity-unseen", unseen, "floor (penalize unmatched n-grams) or ignore")
        ->check(CLI::IsMember({"floor", "ignore"}));

    SelftestOptions selftest_options;
    selftest_options.jobs = config.jobs;
    auto* selftest = app.add_subcommand("selftest", "Fixture and synthetic-corpus checks");
    selftest->add_flag("-v,--verbose", selftest_options.verbose, "Print every compared value");
    selftest->add_option("--normalized-fixture", selftest_options.normalized_fixture, "Normalized score table CSV");
    selftest->add_option("--means-fixture", selftest_options.means_fixture, "Published means CSV");
    selftest->add_option("--seed", selftest_options.seed, "Synthetic corpus seed");

    std::uint64_t generate_seed = 20190601;
    std::string generate_dir;
    auto* generate = app.add_subcommand("generate", "Write a synthetic corpus with a manifest");
    generate->add_option("dir", generate_dir, "Target directory")->required();
    generate->add_option("--seed", generate_seed, "Generator seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUserError;
    }

    try {
        config.output_dir = out_dir;
        config.delta = *parse_delta_variant(delta);
        config.linkage = *parse_linkage(linkage);
        config.measures = parse_measures(measures);
        config.perplexity_unseen = unseen == "ignore" ? UnseenNgrams::ignore : UnseenNgrams::floor;
        config.mode = mode == "cluster"     ? RunConfig::Mode::cluster
                      : mode == "attribute" ? RunConfig::Mode::attribute
                                            : RunConfig::Mode::both;

        if (ingest->parsed()) return cmd_ingest(config, dump_features, std::cout);
        if (cluster->parsed()) return cmd_cluster(config, std::cout);
        if (attribute->parsed()) return cmd_attribute(config, std::cout);
        if (run->parsed()) return cmd_run(config, std::cout);
        if (selftest->parsed()) return cmd_selftest(selftest_options, std::cout);
        if (generate->parsed()) return cmd_generate(generate_seed, generate_dir, std::cout);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUserError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternalError;
    }
    return kExitUserError;
}
