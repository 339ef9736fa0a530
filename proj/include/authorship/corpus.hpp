#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace authorship {

// Author label reserved for texts whose authorship is under study.
inline constexpr std::string_view kUnknownAuthor = "unknown";

struct ManifestEntry {
    std::filesystem::path path;
    std::string title;
    std::string author;
    std::optional<std::string> date;
    std::optional<std::string> source;
    // Charset of the file when it is not UTF-8, e.g. "latin-1".
    std::optional<std::string> encoding;

    bool is_unknown() const { return author == kUnknownAuthor; }
};

struct Manifest {
    std::vector<ManifestEntry> entries;

    bool has_known_author() const;
    std::size_t unknown_count() const;
    // Distinct non-unknown author labels, in order of first appearance.
    std::vector<std::string> known_authors() const;
};

// Parses manifest text. Relative paths are resolved against base_dir and
// must name readable files. Throws InputError on any violation.
Manifest parse_manifest(std::string_view text, const std::filesystem::path& base_dir);
Manifest load_manifest(const std::filesystem::path& path);

// Decodes raw bytes (under encoding_hint, else UTF-8), applies canonical
// composition, normalizes line breaks to '\n' and drops lines made only of
// digits and whitespace (verse numbers). Everything else, speaker names and
// stage directions included, is kept.
std::string preprocess(std::string_view raw, std::optional<std::string_view> encoding_hint = std::nullopt);

// True for a line of optional whitespace, at least one digit, optional whitespace.
bool is_verse_number_line(std::u32string_view line);

// One preprocessed text. Immutable after construction.
class Document {
public:
    // `text` must already be preprocessed; throws InvariantError otherwise.
    Document(std::string title, std::string author_label, std::string text);

    const std::string& title() const { return title_; }
    const std::string& author_label() const { return author_; }
    const std::string& text() const { return text_; }
    std::size_t token_count() const { return token_count_; }
    bool is_unknown() const { return author_ == kUnknownAuthor; }

    friend bool operator==(const Document&, const Document&) = default;

private:
    std::string title_;
    std::string author_;
    std::string text_;
    std::size_t token_count_;
};

using Corpus = std::vector<Document>;

// One Document per entry, in manifest order. Files are read and
// preprocessed on up to `jobs` threads.
Corpus ingest(const Manifest& manifest, unsigned jobs = 1);

} // namespace authorship
