#include "authorship/synthetic.hpp"

#include "authorship/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <set>

namespace authorship::synthetic {

namespace {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform in [0, 1) from the top 53 bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    std::size_t below(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }

    double normal() {
        const double u1 = 1.0 - uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    bool chance(double p) { return uniform() < p; }

    std::uint64_t next() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

// Weighted sampler over a fixed vocabulary.
class Sampler {
public:
    Sampler(std::vector<std::string> words, const std::vector<double>& weights) : words_(std::move(words)) {
        double sum = 0.0;
        for (double w : weights) {
            sum += w;
            cumulative_.push_back(sum);
        }
        for (auto& c : cumulative_) c /= sum;
    }

    const std::string& draw(Rng& rng) const {
        const double u = rng.uniform();
        const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
        return words_[std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()), words_.size() - 1)];
    }

private:
    std::vector<std::string> words_;
    std::vector<double> cumulative_;
};

constexpr std::array kFunctionWords = {
    "que",   "de",    "y",     "la",    "a",     "el",    "en",    "no",    "me",    "es",   "lo",    "se",
    "mi",    "con",   "por",   "te",    "un",    "si",    "los",   "tu",    "las",   "del",  "una",   "le",
    "yo",    "su",    "para",  "pues",  "mas",   "ya",    "como",  "al",    "qué",   "he",   "ha",    "tan",
    "cuando", "esta", "este",  "bien",  "señor", "amor",  "sin",   "sois",  "soy",   "vos",  "os",    "aquí",
    "quien", "ni",    "oh",    "ay",    "todo",  "hoy",   "así",   "donde", "nos",   "porque", "sus", "cielo",
    "mucho", "fue",   "esto",  "eso",   "aunque", "siempre", "nunca", "vida", "alma",  "honor", "tanto", "hay",
    "dios",  "ser",   "hacer", "decir", "ver",   "más",   "dónde", "cómo",  "muy",   "tal",  "gran",  "otra",
};

constexpr std::array kOnsets = {"b", "c", "d", "f", "g", "l", "m", "n", "p", "r", "s", "t", "v", "ch", "ll", "br",
                                "tr", "pl", "gr", "cl"};
constexpr std::array kVowels = {"a", "e", "i", "o", "u", "á", "é", "ió", "ue", "ie"};
constexpr std::array kCodas = {"", "", "", "n", "s", "r", "l", "z", "d"};

std::string make_word(Rng& rng, std::size_t syllables) {
    std::string w;
    for (std::size_t i = 0; i < syllables; ++i) {
        w += kOnsets[rng.below(kOnsets.size())];
        w += kVowels[rng.below(kVowels.size())];
        if (i + 1 == syllables) w += kCodas[rng.below(kCodas.size())];
    }
    return w;
}

std::vector<std::string> unique_words(Rng& rng, std::size_t count, std::set<std::string>& taken) {
    std::vector<std::string> out;
    while (out.size() < count) {
        auto w = make_word(rng, 2 + rng.below(2));
        if (taken.insert(w).second) out.push_back(std::move(w));
    }
    return out;
}

struct AuthorStyle {
    std::string name;
    Sampler words;
    std::vector<std::string> cast;
    double question_rate;
    double exclamation_rate;
    double comma_rate;
};

std::vector<AuthorStyle> make_styles(Rng& rng, std::size_t n_authors) {
    std::set<std::string> taken(kFunctionWords.begin(), kFunctionWords.end());
    std::vector<std::string> pool(kFunctionWords.begin(), kFunctionWords.end());
    auto shared = unique_words(rng, 320, taken);
    pool.insert(pool.end(), shared.begin(), shared.end());

    std::vector<AuthorStyle> styles;
    for (std::size_t a = 0; a < n_authors; ++a) {
        std::vector<std::string> vocab = pool;
        std::vector<double> weights;
        for (std::size_t r = 0; r < pool.size(); ++r) {
            // Zipf shape shared by everyone, scaled by an author-specific lognormal factor.
            weights.push_back(std::exp(0.8 * rng.normal()) / std::pow(static_cast<double>(r) + 2.0, 1.05));
        }
        for (auto& w : unique_words(rng, 60, taken)) {
            vocab.push_back(std::move(w));
            weights.push_back(0.004 * std::exp(0.5 * rng.normal()));
        }
        std::vector<std::string> cast;
        for (auto& c : unique_words(rng, 6, taken)) {
            std::string upper;
            for (char ch : c) upper.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(ch))));
            cast.push_back(upper);
        }
        styles.push_back({"Author " + std::string(1, static_cast<char>('A' + a)), Sampler(vocab, weights),
                          std::move(cast), 0.1 + 0.1 * rng.uniform(), 0.05 + 0.1 * rng.uniform(),
                          0.1 + 0.2 * rng.uniform()});
    }
    return styles;
}

std::string make_line(const AuthorStyle& style, Rng& rng, std::size_t& tokens) {
    const std::size_t length = 6 + rng.below(5);
    std::string line;
    for (std::size_t i = 0; i < length; ++i) {
        std::string w = style.words.draw(rng);
        if (i == 0) w[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(w[0])));
        if (i > 0) line += rng.chance(style.comma_rate / 4) ? ", " : " ";
        line += w;
    }
    tokens += length;
    const double u = rng.uniform();
    if (u < style.question_rate) {
        line = "¿" + line + "?";
    } else if (u < style.question_rate + style.exclamation_rate) {
        line = "¡" + line + "!";
    } else if (rng.chance(0.5)) {
        line += ".";
    } else {
        line += ",";
    }
    return line;
}

// Verse lines with speaker tags and a verse number every fifth line.
std::vector<std::string> make_lines(const AuthorStyle& style, Rng& rng, std::size_t target_tokens) {
    std::vector<std::string> lines;
    std::size_t tokens = 0;
    std::size_t verse = 0;
    while (tokens < target_tokens) {
        if (verse % 8 == 0) lines.push_back(style.cast[rng.below(style.cast.size())]);
        lines.push_back(make_line(style, rng, tokens));
        ++verse;
        if (verse % 5 == 0) lines.push_back("    " + std::to_string(verse));
    }
    return lines;
}

std::string join_crlf(const std::vector<std::string>& lines) {
    std::string out;
    for (const auto& l : lines) out += l + "\r\n";
    return out;
}

} // namespace

GeneratedCorpus make_attribution_corpus(const AttributionSpec& spec) {
    if (spec.authors < 2) throw InputError("synthetic corpus needs at least 2 authors");
    Rng rng(spec.seed);
    const auto styles = make_styles(rng, spec.authors);
    GeneratedCorpus out;
    for (const auto& style : styles) {
        for (std::size_t t = 0; t < spec.training_texts + spec.heldout_texts; ++t) {
            const bool heldout = t >= spec.training_texts;
            Text text;
            text.title = style.name + (heldout ? " held-out " : " play ") + std::to_string(t + 1);
            text.author = heldout ? std::string(kUnknownAuthor) : style.name;
            text.body = join_crlf(make_lines(style, rng, spec.tokens_per_text));
            out.true_author[text.title] = style.name;
            out.texts.push_back(std::move(text));
        }
    }
    return out;
}

NearDuplicateCorpus make_near_duplicate_corpus(const NearDuplicateSpec& spec) {
    Rng rng(spec.seed);
    const auto styles = make_styles(rng, 4);
    NearDuplicateCorpus out;
    auto& corpus = out.corpus;

    const auto original = make_lines(styles[0], rng, spec.tokens_per_text);
    // Keep a shared_fraction of the original lines in place; the rest are
    // fresh lines by the same author, as in a revised edition.
    std::vector<std::string> variant;
    std::size_t tokens = 0;
    for (const auto& line : original) {
        if (rng.chance(spec.shared_fraction)) {
            variant.push_back(line);
        } else {
            variant.push_back(make_line(styles[0], rng, tokens));
        }
    }
    out.original_title = "Original";
    out.variant_title = "Variant";
    corpus.texts.push_back({out.original_title, styles[0].name, join_crlf(original)});
    corpus.texts.push_back({out.variant_title, styles[0].name, join_crlf(variant)});
    corpus.true_author[out.original_title] = styles[0].name;
    corpus.true_author[out.variant_title] = styles[0].name;
    for (std::size_t d = 0; d < spec.distractors; ++d) {
        const auto& style = styles[d % styles.size()];
        Text text{"Distractor " + std::to_string(d + 1), style.name,
                  join_crlf(make_lines(style, rng, spec.tokens_per_text))};
        corpus.true_author[text.title] = style.name;
        corpus.texts.push_back(std::move(text));
    }
    return out;
}

Corpus to_documents(const GeneratedCorpus& corpus) {
    Corpus docs;
    for (const auto& t : corpus.texts) docs.emplace_back(t.title, t.author, preprocess(t.body));
    return docs;
}

std::filesystem::path write_corpus(const GeneratedCorpus& corpus, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    const auto manifest_path = dir / "manifest.tsv";
    std::ofstream manifest(manifest_path, std::ios::binary);
    if (!manifest) throw InputError("cannot write " + manifest_path.string());
    manifest << "# path\ttitle\tauthor\tdate\tsource\n";
    for (std::size_t i = 0; i < corpus.texts.size(); ++i) {
        const auto& t = corpus.texts[i];
        const std::string name = "text_" + std::string(i < 9 ? "0" : "") + std::to_string(i + 1) + ".txt";
        std::ofstream out(dir / name, std::ios::binary);
        if (!out) throw InputError("cannot write " + (dir / name).string());
        out << t.body;
        manifest << name << '\t' << t.title << '\t' << t.author << "\t\tsynthetic\n";
    }
    return manifest_path;
}

} // namespace authorship::synthetic
