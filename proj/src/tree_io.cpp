#include "authorship/clustering.hpp"
#include "authorship/error.hpp"
#include "authorship/format.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <sstream>

namespace authorship {

namespace {

std::string newick_label(std::string_view label) {
    if (!label.empty() && label.find_first_of(" \t\r\n()[]':;,_") == std::string_view::npos) {
        return std::string(label);
    }
    std::string out = "'";
    for (char c : label) {
        if (c == '\'') out.push_back('\'');
        out.push_back(c);
    }
    out.push_back('\'');
    return out;
}

std::string dot_string(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        if (c == '\n') {
            out += "\\n";
            continue;
        }
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

void write_newick(const ClusterTree& tree, std::size_t node, std::string& out) {
    const auto& nd = tree.nodes[node];
    if (nd.is_leaf()) {
        out += newick_label(nd.label);
        return;
    }
    out.push_back('(');
    bool first = true;
    for (int child : {nd.left, nd.right}) {
        if (!first) out.push_back(',');
        first = false;
        const auto c = static_cast<std::size_t>(child);
        write_newick(tree, c, out);
        out.push_back(':');
        out += shortest(nd.height - tree.nodes[c].height);
    }
    out.push_back(')');
}

void write_ascii(const ClusterTree& tree, std::size_t node, std::size_t depth, std::string& out) {
    const auto& nd = tree.nodes[node];
    out.append(depth * 2, ' ');
    if (nd.is_leaf()) {
        out += "- " + nd.label + "\n";
        return;
    }
    out += "+ " + fixed(nd.height) + "\n";
    write_ascii(tree, static_cast<std::size_t>(nd.left), depth + 1, out);
    write_ascii(tree, static_cast<std::size_t>(nd.right), depth + 1, out);
}

class NewickParser {
public:
    explicit NewickParser(std::string_view text) : s_(text) {}

    ClusterTree parse() {
        ClusterTree tree;
        std::vector<Parsed> parsed;
        skip_space();
        const auto root = subtree(parsed);
        skip_space();
        expect(';');
        skip_space();
        if (pos_ != s_.size()) fail("trailing characters after ';'");

        // Leaves first in order of appearance, then internal nodes in post-order.
        std::vector<int> index(parsed.size(), -1);
        for (std::size_t i = 0; i < parsed.size(); ++i) {
            if (parsed[i].left < 0) {
                index[i] = static_cast<int>(tree.nodes.size());
                tree.nodes.push_back({parsed[i].label, -1, -1, 0.0, 1});
            }
        }
        tree.leaf_count = tree.nodes.size();
        std::function<double(std::size_t)> place = [&](std::size_t i) -> double {
            auto& p = parsed[i];
            if (p.left < 0) return 0.0;
            const auto l = static_cast<std::size_t>(p.left);
            const auto r = static_cast<std::size_t>(p.right);
            const double h = std::max(place(l) + parsed[l].length, place(r) + parsed[r].length);
            index[i] = static_cast<int>(tree.nodes.size());
            tree.nodes.push_back({"", index[l], index[r], h,
                                  tree.nodes[static_cast<std::size_t>(index[l])].size +
                                      tree.nodes[static_cast<std::size_t>(index[r])].size});
            return h;
        };
        place(root);
        return tree;
    }

private:
    struct Parsed {
        std::string label;
        int left = -1;
        int right = -1;
        double length = 0.0;
    };

    [[noreturn]] void fail(const std::string& msg) const {
        throw InputError("newick: " + msg + " at offset " + std::to_string(pos_));
    }

    void skip_space() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    void expect(char c) {
        if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    std::string label() {
        std::string out;
        if (pos_ < s_.size() && s_[pos_] == '\'') {
            ++pos_;
            while (true) {
                if (pos_ >= s_.size()) fail("unterminated quoted label");
                if (s_[pos_] == '\'') {
                    if (pos_ + 1 < s_.size() && s_[pos_ + 1] == '\'') {
                        out.push_back('\'');
                        pos_ += 2;
                        continue;
                    }
                    ++pos_;
                    break;
                }
                out.push_back(s_[pos_++]);
            }
            return out;
        }
        while (pos_ < s_.size() && std::string_view("(),:;").find(s_[pos_]) == std::string_view::npos &&
               !std::isspace(static_cast<unsigned char>(s_[pos_]))) {
            const char c = s_[pos_++];
            out.push_back(c == '_' ? ' ' : c);
        }
        return out;
    }

    double length() {
        skip_space();
        if (pos_ >= s_.size() || s_[pos_] != ':') return 0.0;
        ++pos_;
        skip_space();
        double v = 0.0;
        const auto res = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
        if (res.ec != std::errc()) fail("bad branch length");
        pos_ = static_cast<std::size_t>(res.ptr - s_.data());
        return v;
    }

    std::size_t subtree(std::vector<Parsed>& out) {
        skip_space();
        Parsed node;
        if (pos_ < s_.size() && s_[pos_] == '(') {
            ++pos_;
            const auto l = subtree(out);
            skip_space();
            expect(',');
            const auto r = subtree(out);
            skip_space();
            if (pos_ < s_.size() && s_[pos_] == ',') fail("only binary trees are supported");
            expect(')');
            node.left = static_cast<int>(l);
            node.right = static_cast<int>(r);
            skip_space();
            label();  // internal labels are ignored
        } else {
            node.label = label();
            if (node.label.empty()) fail("empty leaf label");
        }
        node.length = length();
        out.push_back(std::move(node));
        return out.size() - 1;
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

} // namespace

std::string serialize_tree(const ClusterTree& tree, TreeFormat format) {
    if (tree.nodes.empty()) throw InputError("cannot serialize an empty tree");
    std::string out;
    switch (format) {
    case TreeFormat::newick:
        write_newick(tree, tree.root(), out);
        out += ";\n";
        break;
    case TreeFormat::ascii:
        write_ascii(tree, tree.root(), 0, out);
        break;
    case TreeFormat::dot: {
        out += "digraph dendrogram {\n";
        out += "  rankdir=LR;\n";
        out += "  edge [arrowhead=none];\n";
        for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
            const auto& nd = tree.nodes[i];
            out += "  n" + std::to_string(i) + " [";
            if (nd.is_leaf()) {
                out += "shape=plaintext, label=" + dot_string(nd.label);
            } else {
                out += "shape=point, xlabel=" + dot_string(fixed(nd.height));
            }
            out += "];\n";
        }
        for (std::size_t i = tree.leaf_count; i < tree.nodes.size(); ++i) {
            const auto& nd = tree.nodes[i];
            for (int child : {nd.left, nd.right}) {
                out += "  n" + std::to_string(i) + " -> n" + std::to_string(child) + ";\n";
            }
        }
        out += "}\n";
        break;
    }
    }
    return out;
}

ClusterTree parse_newick(std::string_view text) { return NewickParser(text).parse(); }

std::string matrix_to_csv(const DistanceMatrix& m) {
    std::string out;
    for (const auto& l : m.labels()) out += "," + csv_field(l);
    out += "\n";
    for (std::size_t i = 0; i < m.size(); ++i) {
        out += csv_field(m.labels()[i]);
        for (std::size_t j = 0; j < m.size(); ++j) out += "," + fixed(m.at(i, j));
        out += "\n";
    }
    return out;
}

} // namespace authorship
