#include "authorship/commands.hpp"
#include "authorship/clustering.hpp"
#include "authorship/error.hpp"
#include "authorship/fixtures.hpp"
#include "authorship/synthetic.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace authorship;
namespace fs = std::filesystem;

namespace {

fs::path toy_manifest(const testutil::TempDir& dir) {
    testutil::write(dir / "a.txt", "que de la casa y la sierra\r\nde la mar\r\n");
    testutil::write(dir / "b.txt", "la mar y el cielo\n    10\nque de la mar\n");
    testutil::write(dir / "c.txt", "el cielo y el mar de la sierra que\n");
    testutil::write(dir / "d.txt", "y que de la casa en el monte\n");
    testutil::write(dir / "manifest.tsv", "# toy\n"
                                          "a.txt\tPrimera\tX\n"
                                          "b.txt\tSegunda\tY\t1620\n"
                                          "c.txt\tTercera\tX\n"
                                          "d.txt\tCuarta\tunknown\n");
    return dir / "manifest.tsv";
}

// Synthetic 4-author corpus plus one more unknown text, five unknowns in all.
fs::path five_unknowns(const testutil::TempDir& dir) {
    auto generated = synthetic::make_attribution_corpus();
    auto extra = generated.texts.front();
    extra.title = "Extra unknown";
    extra.author = "unknown";
    generated.texts.push_back(extra);
    return synthetic::write_corpus(generated, dir / "corpus");
}

RunConfig config_for(const fs::path& manifest, const fs::path& out) {
    RunConfig c;
    c.manifest = manifest;
    c.output_dir = out;
    return c;
}

} // namespace

TEST(RunConfig, Validate) {
    RunConfig c;
    EXPECT_THROW(c.validate(), InputError);
    c.manifest = "m.tsv";
    EXPECT_NO_THROW(c.validate());
    c.mfw_size = 0;
    EXPECT_THROW(c.validate(), InputError);
    c.mfw_size = 1;
    c.char_n = 0;
    EXPECT_THROW(c.validate(), InputError);
    c.char_n = 7;
    c.measures.clear();
    EXPECT_THROW(c.validate(), InputError);
}

TEST(CmdCluster, ToyManifestGivesFourLeafNewick) {
    testutil::TempDir dir("cluster_toy");
    std::ostringstream out;
    EXPECT_EQ(cmd_cluster(config_for(toy_manifest(dir), dir / "out"), out), kExitOk);
    const auto tree = parse_newick(testutil::read(dir / "out/dendrogram.nwk"));
    EXPECT_EQ(tree.leaf_count, 4u);
    EXPECT_TRUE(fs::exists(dir / "out/dendrogram.dot"));
    const auto csv = testutil::read(dir / "out/distances.csv");
    EXPECT_EQ(csv.substr(0, csv.find('\n')), ",Primera,Segunda,Tercera,Cuarta");
    EXPECT_NE(out.str().find("# delta: burrows\n"), std::string::npos);
    EXPECT_NE(out.str().find("# linkage: ward\n"), std::string::npos);
}

TEST(CmdCluster, EderIsEchoedInTheReportHeader) {
    testutil::TempDir dir("cluster_eder");
    auto c = config_for(toy_manifest(dir), dir / "out");
    c.delta = DeltaVariant::eder;
    c.linkage = Linkage::complete;
    std::ostringstream out;
    cmd_cluster(c, out);
    const auto report = testutil::read(dir / "out/cluster_report.txt");
    EXPECT_NE(report.find("# delta: eder"), std::string::npos);
    EXPECT_NE(report.find("# linkage: complete"), std::string::npos);
}

TEST(CmdAttribute, OneReportPerUnknown) {
    testutil::TempDir dir("attr_five");
    std::ostringstream out;
    EXPECT_EQ(cmd_attribute(config_for(five_unknowns(dir), dir / "out"), out), kExitOk);
    std::size_t reports = 0;
    for (const auto& e : fs::directory_iterator(dir / "out"))
        if (e.path().filename().string().rfind("report_", 0) == 0) ++reports;
    EXPECT_EQ(reports, 5u);
    EXPECT_NE(out.str().find("# measures: perplexity,kullback_leibler,rank_based,cosine\n"), std::string::npos);
}

TEST(CmdAttribute, MeasureSubsetIsNotedInTheHeader) {
    testutil::TempDir dir("attr_subset");
    auto c = config_for(five_unknowns(dir), dir / "out");
    c.measures = {MeasureId::perplexity, MeasureId::cosine};
    std::ostringstream out;
    cmd_attribute(c, out);
    EXPECT_NE(out.str().find("# measures: perplexity,cosine (subset"), std::string::npos);
    EXPECT_EQ(out.str().find("kullback_leibler  "), std::string::npos);
}

TEST(CmdAttribute, MissingUnknownsOrAuthorsAreExplicitErrors) {
    testutil::TempDir dir("attr_errors");
    testutil::write(dir / "a.txt", "que de la\n");
    testutil::write(dir / "b.txt", "la y de\n");
    testutil::write(dir / "known.tsv", "a.txt\tA\tX\nb.txt\tB\tY\n");
    testutil::write(dir / "single.tsv", "a.txt\tA\tX\nb.txt\tB\tunknown\n");
    std::ostringstream out;
    try {
        cmd_attribute(config_for(dir / "known.tsv", dir / "out"), out);
        FAIL() << "expected InputError";
    } catch (const InputError& e) {
        EXPECT_NE(std::string(e.what()).find("unknown"), std::string::npos);
    }
    EXPECT_THROW(cmd_attribute(config_for(dir / "single.tsv", dir / "out"), out), InputError);
}

TEST(CmdRun, BothModesWriteIntoSubdirectoriesAndRerunsAreByteIdentical) {
    testutil::TempDir dir("run_both");
    const auto manifest = five_unknowns(dir);
    auto c = config_for(manifest, dir / "first");
    std::ostringstream out;
    EXPECT_EQ(cmd_run(c, out), kExitOk);
    EXPECT_TRUE(fs::exists(dir / "first/cluster/dendrogram.nwk"));
    EXPECT_TRUE(fs::exists(dir / "first/attribution/attribution.txt"));

    c.output_dir = dir / "second";
    c.jobs = 4;
    cmd_run(c, out);
    const auto a = testutil::snapshot(dir / "first"), b = testutil::snapshot(dir / "second");
    EXPECT_EQ(a.size(), b.size());
    EXPECT_TRUE(a == b);
}

TEST(CmdIngest, DumpsFeatureTables) {
    testutil::TempDir dir("ingest");
    std::ostringstream out;
    EXPECT_EQ(cmd_ingest(config_for(toy_manifest(dir), dir / "out"), true, out), kExitOk);
    EXPECT_NE(out.str().find("documents: 4\n"), std::string::npos);
    EXPECT_TRUE(fs::exists(dir / "out/features/01_primera.words.tsv"));
    EXPECT_TRUE(fs::exists(dir / "out/features/04_cuarta.chars.tsv"));
    EXPECT_TRUE(fs::exists(dir / "out/features/corpus_stats.tsv"));
}

TEST(CmdSelftest, PristineFixturesPass) {
    std::ostringstream out;
    EXPECT_EQ(cmd_selftest({}, out), kExitOk);
    EXPECT_NE(out.str().find("PASS  fixture means: 20/20"), std::string::npos);
    EXPECT_NE(out.str().find("PASS  synthetic attribution: 20/20"), std::string::npos);
}

TEST(CmdSelftest, CorruptedFixtureFailsOnlyTheFixtureCheck) {
    testutil::TempDir dir("selftest_corrupt");
    auto means = testutil::read(fixtures::default_data_dir() / "table5.csv");
    const auto at = means.find("Guev,0.596");
    ASSERT_NE(at, std::string::npos);
    means.replace(at, 10, "Guev,0.696");
    testutil::write(dir / "t5.csv", means);

    SelftestOptions options;
    options.means_fixture = dir / "t5.csv";
    std::ostringstream out;
    EXPECT_EQ(cmd_selftest(options, out), kExitInternalError);
    EXPECT_NE(out.str().find("FAIL  fixture means: 19/20"), std::string::npos);
    EXPECT_NE(out.str().find("FAIL La ninfa del cielo / Guev"), std::string::npos);
    EXPECT_NE(out.str().find("PASS  synthetic attribution"), std::string::npos);
}

TEST(CmdSelftest, VerbosePrintsEveryValue) {
    SelftestOptions options;
    options.verbose = true;
    std::ostringstream out;
    cmd_selftest(options, out);
    EXPECT_NE(out.str().find("ok   El condenado por desconfiado / Mira: expected 0.123"), std::string::npos);
    EXPECT_NE(out.str().find("/ mean: "), std::string::npos);
}
