#pragma once

#include "authorship/corpus.hpp"
#include "authorship/features.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace authorship {

// Symmetric, zero-diagonal, finite, non-negative.
class DistanceMatrix {
public:
    // Throws InputError if `values` (row-major, n*n) breaks an invariant.
    DistanceMatrix(std::vector<std::string> labels, std::vector<double> values);

    std::size_t size() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    double at(std::size_t i, std::size_t j) const { return values_[i * labels_.size() + j]; }

private:
    std::vector<std::string> labels_;
    std::vector<double> values_;
};

enum class DeltaVariant { burrows, eder };
enum class Linkage { ward, complete, average, single };

std::string_view to_string(DeltaVariant v);
std::string_view to_string(Linkage l);
std::optional<DeltaVariant> parse_delta_variant(std::string_view s);
std::optional<Linkage> parse_linkage(std::string_view s);

// Pairwise Delta over the documents' z-scores against `stats`. Needs at
// least two documents.
DistanceMatrix delta_matrix(std::span<const Document> corpus, const CorpusStats& stats, DeltaVariant variant,
                            unsigned jobs = 1);

// Binary merge tree. Nodes [0, leaf_count) are leaves in label order; each
// merge appends one internal node, the root is last.
struct ClusterTree {
    struct Node {
        std::string label;  // leaves only
        int left = -1;
        int right = -1;
        double height = 0.0;
        std::size_t size = 1;

        bool is_leaf() const { return left < 0; }
    };

    std::vector<Node> nodes;
    std::size_t leaf_count = 0;

    std::size_t root() const { return nodes.size() - 1; }
    // Leaf indices under `node`, ascending.
    std::vector<std::size_t> leaves_under(std::size_t node) const;
};

// Agglomerative clustering with Lance-Williams updates. Ties on the merge
// distance go to the pair with the smallest (lower, higher) cluster ids,
// where a cluster's id is its smallest leaf index.
ClusterTree agglomerate(const DistanceMatrix& matrix, Linkage linkage);

enum class TreeFormat { newick, dot, ascii };

std::string serialize_tree(const ClusterTree& tree, TreeFormat format);

// Reads a rooted binary Newick tree with branch lengths, such as the output
// of serialize_tree. Heights are recovered from leaf depth 0.
ClusterTree parse_newick(std::string_view text);

// Header row of labels, then one row per label. Values with 4 decimals.
std::string matrix_to_csv(const DistanceMatrix& m);

} // namespace authorship
