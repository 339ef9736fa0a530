#pragma once

#include "authorship/corpus.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

// Seeded generator of play-like texts for end-to-end checks. Output depends
// only on the seed: sampling is built on std::mt19937_64 words directly, not
// on the implementation-defined standard distributions.
namespace authorship::synthetic {

struct Text {
    std::string title;
    std::string author;  // "unknown" for held-out texts
    std::string body;    // raw text, CRLF line breaks and verse numbers included
};

struct GeneratedCorpus {
    std::vector<Text> texts;
    std::map<std::string, std::string> true_author;  // title -> author, every text
};

struct AttributionSpec {
    std::uint64_t seed = 20190601;
    std::size_t authors = 4;
    std::size_t training_texts = 3;
    std::size_t heldout_texts = 1;
    std::size_t tokens_per_text = 3000;
};

// Authors share a Zipf-shaped function-word pool but each reweights it and
// adds its own content words. Held-out texts are labeled "unknown".
GeneratedCorpus make_attribution_corpus(const AttributionSpec& spec = {});

struct NearDuplicateSpec {
    std::uint64_t seed = 20190602;
    double shared_fraction = 0.6;
    std::size_t distractors = 10;
    std::size_t tokens_per_text = 3000;
};

struct NearDuplicateCorpus {
    GeneratedCorpus corpus;
    std::string original_title;
    std::string variant_title;
};

// An original text, a variant keeping `shared_fraction` of its lines (the
// rest rewritten by the same author), and distractors by the same pool of
// authors, the original's author included.
NearDuplicateCorpus make_near_duplicate_corpus(const NearDuplicateSpec& spec = {});

// Preprocesses every text into a Document.
Corpus to_documents(const GeneratedCorpus& corpus);

// Writes one file per text plus manifest.tsv; returns the manifest path.
std::filesystem::path write_corpus(const GeneratedCorpus& corpus, const std::filesystem::path& dir);

} // namespace authorship::synthetic
