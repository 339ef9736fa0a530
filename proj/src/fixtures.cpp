#include "authorship/fixtures.hpp"

#include "authorship/attribution.hpp"
#include "authorship/error.hpp"

#include <algorithm>
#include <cmath>
#include <charconv>
#include <fstream>
#include <limits>
#include <map>

namespace authorship::fixtures {

namespace {

std::vector<std::vector<std::string>> read_rows(const std::filesystem::path& path, std::size_t columns) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read fixture " + path.string());
    std::vector<std::vector<std::string>> rows;
    std::string line;
    bool header = true;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        if (header) {
            header = false;
            continue;
        }
        std::vector<std::string> fields;
        std::size_t start = 0;
        while (true) {
            const auto pos = line.find(',', start);
            fields.push_back(line.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
            if (pos == std::string::npos) break;
            start = pos + 1;
        }
        if (fields.size() != columns) {
            throw InputError(path.filename().string() + ":" + std::to_string(line_no) + ": expected " +
                             std::to_string(columns) + " fields");
        }
        rows.push_back(std::move(fields));
    }
    return rows;
}

double parse_number(const std::string& s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw InputError("bad number '" + s + "' in fixture");
    return v;
}

} // namespace

std::filesystem::path default_data_dir() { return AUTHORSHIP_DATA_DIR; }

std::vector<NormalizedCell> load_normalized(const std::filesystem::path& path) {
    std::vector<NormalizedCell> out;
    for (auto& r : read_rows(path, 4)) {
        const auto m = parse_measure(r[1]);
        if (!m) throw InputError("unknown measure '" + r[1] + "' in fixture");
        out.push_back({r[0], *m, r[2], parse_number(r[3])});
    }
    return out;
}

std::vector<MeanCell> load_means(const std::filesystem::path& path) {
    std::vector<MeanCell> out;
    for (auto& r : read_rows(path, 3)) out.push_back({r[0], r[1], parse_number(r[2])});
    return out;
}

std::vector<MeanCheck> check_means(const std::vector<NormalizedCell>& normalized, const std::vector<MeanCell>& means,
                                   double tolerance) {
    std::vector<std::string> unknowns;
    for (const auto& m : means) {
        if (std::find(unknowns.begin(), unknowns.end(), m.unknown) == unknowns.end()) unknowns.push_back(m.unknown);
    }
    std::vector<MeanCheck> out;
    for (const auto& u : unknowns) {
        std::vector<std::string> authors;
        for (const auto& m : means) {
            if (m.unknown == u) authors.push_back(m.author);
        }
        std::vector<MeasureId> measures;
        for (const auto& c : normalized) {
            if (c.unknown == u && std::find(measures.begin(), measures.end(), c.measure) == measures.end()) {
                measures.push_back(c.measure);
            }
        }
        std::vector<std::vector<double>> table(measures.size(),
                                               std::vector<double>(authors.size(), std::numeric_limits<double>::quiet_NaN()));
        for (const auto& c : normalized) {
            if (c.unknown != u) continue;
            const auto mi = std::find(measures.begin(), measures.end(), c.measure) - measures.begin();
            const auto ai = std::find(authors.begin(), authors.end(), c.author) - authors.begin();
            if (static_cast<std::size_t>(ai) == authors.size()) {
                throw InputError("fixture author '" + c.author + "' for '" + u + "' has no published mean");
            }
            table[static_cast<std::size_t>(mi)][static_cast<std::size_t>(ai)] = c.value;
        }
        const auto computed = mean_combine(table);
        for (const auto& m : means) {
            if (m.unknown != u) continue;
            const auto ai = static_cast<std::size_t>(std::find(authors.begin(), authors.end(), m.author) - authors.begin());
            const double c = computed[ai];
            out.push_back({u, m.author, m.value, c, std::abs(c - m.value) <= tolerance});
        }
    }
    return out;
}

} // namespace authorship::fixtures
