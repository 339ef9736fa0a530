#include "authorship/corpus.hpp"

#include "authorship/error.hpp"
#include "authorship/features.hpp"
#include "authorship/parallel.hpp"
#include "authorship/unicode.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

namespace authorship {

namespace fs = std::filesystem;

namespace {

std::string_view trim(std::string_view s) {
    const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find('\t', start);
        if (pos == std::string_view::npos) {
            fields.push_back(trim(line.substr(start)));
            break;
        }
        fields.push_back(trim(line.substr(start, pos - start)));
        start = pos + 1;
    }
    return fields;
}

std::optional<std::string> optional_field(const std::vector<std::string_view>& fields, std::size_t i) {
    if (i < fields.size() && !fields[i].empty()) {
        return std::string(fields[i]);
    }
    return std::nullopt;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot read file: " + path.string());
    }
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

bool is_utf8_label(std::string_view hint) {
    std::string h;
    for (char c : hint) {
        if (c != '-' && c != '_') h.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    return h == "utf8";
}

} // namespace

bool Manifest::has_known_author() const {
    return std::any_of(entries.begin(), entries.end(), [](const auto& e) { return !e.is_unknown(); });
}

std::size_t Manifest::unknown_count() const {
    return static_cast<std::size_t>(
        std::count_if(entries.begin(), entries.end(), [](const auto& e) { return e.is_unknown(); }));
}

std::vector<std::string> Manifest::known_authors() const {
    std::vector<std::string> out;
    for (const auto& e : entries) {
        if (!e.is_unknown() && std::find(out.begin(), out.end(), e.author) == out.end()) {
            out.push_back(e.author);
        }
    }
    return out;
}

Manifest parse_manifest(std::string_view text, const fs::path& base_dir) {
    Manifest manifest;
    std::set<std::string> titles;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;

        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (trim(line).empty() || trim(line).front() == '#') continue;

        const auto where = "manifest line " + std::to_string(line_no) + ": ";
        const auto fields = split_tabs(line);
        if (fields.size() < 3 || fields.size() > 6) {
            throw InputError(where + "expected 3 to 6 tab-separated fields, got " + std::to_string(fields.size()));
        }
        if (fields[0].empty()) throw InputError(where + "empty path");
        if (fields[1].empty()) throw InputError(where + "empty title");
        if (fields[2].empty()) throw InputError(where + "empty author for '" + std::string(fields[1]) + "'");

        ManifestEntry entry;
        entry.path = fs::path(std::string(fields[0]));
        if (entry.path.is_relative()) entry.path = base_dir / entry.path;
        entry.title = std::string(fields[1]);
        entry.author = std::string(fields[2]);
        entry.date = optional_field(fields, 3);
        entry.source = optional_field(fields, 4);
        entry.encoding = optional_field(fields, 5);

        if (!titles.insert(entry.title).second) {
            throw InputError(where + "duplicate title '" + entry.title + "'");
        }
        std::error_code ec;
        if (!fs::is_regular_file(entry.path, ec)) {
            throw InputError(where + "missing file: " + entry.path.string());
        }
        if (!std::ifstream(entry.path, std::ios::binary)) {
            throw InputError(where + "unreadable file: " + entry.path.string());
        }
        manifest.entries.push_back(std::move(entry));
        if (end == text.size()) break;
    }
    return manifest;
}

Manifest load_manifest(const fs::path& path) {
    std::error_code ec;
    if (!fs::is_regular_file(path, ec)) {
        throw InputError("missing manifest file: " + path.string());
    }
    return parse_manifest(read_file(path), path.parent_path());
}

bool is_verse_number_line(std::u32string_view line) {
    bool digit = false;
    for (char32_t c : line) {
        if (unicode::is_decimal_digit(c)) {
            digit = true;
        } else if (!unicode::is_whitespace(c)) {
            return false;
        }
    }
    return digit;
}

std::string preprocess(std::string_view raw, std::optional<std::string_view> encoding_hint) {
    std::string utf8;
    if (encoding_hint && !is_utf8_label(*encoding_hint)) {
        // A misspelled encoding is a manifest error, not a reason to guess.
        if (!unicode::is_known_charset(*encoding_hint)) {
            throw InputError("unknown encoding '" + std::string(*encoding_hint) + "'");
        }
        try {
            utf8 = unicode::to_utf8(raw, *encoding_hint);
        } catch (const InputError&) {
            if (!unicode::is_valid_utf8(raw)) {
                throw InputError("undecodable bytes under " + std::string(*encoding_hint) + " and UTF-8");
            }
            utf8 = std::string(raw);
        }
    } else {
        if (!unicode::is_valid_utf8(raw)) {
            throw InputError("undecodable bytes: input is not valid UTF-8");
        }
        utf8 = std::string(raw);
    }
    if (utf8.starts_with("\xEF\xBB\xBF")) utf8.erase(0, 3);

    const std::u32string text = unicode::decode(unicode::nfc(utf8));

    std::u32string out;
    out.reserve(text.size());
    std::u32string line;
    bool first = true;
    const auto flush = [&] {
        if (!is_verse_number_line(line)) {
            if (!first) out.push_back(U'\n');
            out += line;
            first = false;
        }
        line.clear();
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char32_t c = text[i];
        if (c == U'\r') {
            if (i + 1 < text.size() && text[i + 1] == U'\n') ++i;
            flush();
        } else if (c == U'\n') {
            flush();
        } else {
            line.push_back(c);
        }
    }
    flush();
    return unicode::encode(out);
}

Document::Document(std::string title, std::string author_label, std::string text)
    : title_(std::move(title)), author_(std::move(author_label)), text_(std::move(text)) {
    if (text_.find('\r') != std::string::npos) {
        throw InvariantError("document '" + title_ + "' contains a carriage return");
    }
    const auto cps = unicode::decode(text_);
    std::size_t start = 0;
    while (start <= cps.size()) {
        auto end = cps.find(U'\n', start);
        if (end == std::u32string::npos) end = cps.size();
        if (is_verse_number_line(std::u32string_view(cps).substr(start, end - start))) {
            throw InvariantError("document '" + title_ + "' contains a verse-number line");
        }
        start = end + 1;
    }
    token_count_ = tokenize(text_).size();
}

Corpus ingest(const Manifest& manifest, unsigned jobs) {
    std::vector<std::optional<Document>> slots(manifest.entries.size());
    parallel_for(slots.size(), jobs, [&](std::size_t i) {
        const auto& e = manifest.entries[i];
        try {
            std::optional<std::string_view> hint;
            if (e.encoding) hint = *e.encoding;
            slots[i].emplace(e.title, e.author, preprocess(read_file(e.path), hint));
        } catch (const InputError& err) {
            throw InputError("'" + e.title + "': " + err.what());
        }
    });
    Corpus corpus;
    corpus.reserve(slots.size());
    for (auto& d : slots) corpus.push_back(std::move(*d));
    return corpus;
}

} // namespace authorship
