#include "authorship/clustering.hpp"

#include "authorship/distances.hpp"
#include "authorship/error.hpp"
#include "authorship/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace authorship {

DistanceMatrix::DistanceMatrix(std::vector<std::string> labels, std::vector<double> values)
    : labels_(std::move(labels)), values_(std::move(values)) {
    const std::size_t n = labels_.size();
    if (values_.size() != n * n) throw InputError("distance matrix: expected " + std::to_string(n * n) + " values");
    for (std::size_t i = 0; i < n; ++i) {
        if (at(i, i) != 0.0) throw InputError("distance matrix: non-zero diagonal at " + labels_[i]);
        for (std::size_t j = 0; j < n; ++j) {
            const double v = at(i, j);
            if (!std::isfinite(v) || v < 0.0) throw InputError("distance matrix: invalid entry");
            if (v != at(j, i)) throw InputError("distance matrix: not symmetric");
        }
    }
}

std::string_view to_string(DeltaVariant v) { return v == DeltaVariant::burrows ? "burrows" : "eder"; }

std::string_view to_string(Linkage l) {
    switch (l) {
    case Linkage::ward: return "ward";
    case Linkage::complete: return "complete";
    case Linkage::average: return "average";
    case Linkage::single: return "single";
    }
    return "?";
}

std::optional<DeltaVariant> parse_delta_variant(std::string_view s) {
    if (s == "burrows") return DeltaVariant::burrows;
    if (s == "eder") return DeltaVariant::eder;
    return std::nullopt;
}

std::optional<Linkage> parse_linkage(std::string_view s) {
    for (auto l : {Linkage::ward, Linkage::complete, Linkage::average, Linkage::single}) {
        if (s == to_string(l)) return l;
    }
    return std::nullopt;
}

DistanceMatrix delta_matrix(std::span<const Document> corpus, const CorpusStats& stats, DeltaVariant variant,
                            unsigned jobs) {
    const std::size_t n = corpus.size();
    if (n < 2) throw InputError("clustering needs at least 2 documents");

    std::vector<std::vector<double>> z(n);
    parallel_for(n, jobs, [&](std::size_t i) { z[i] = zscore_vector(corpus[i], stats); });
    const auto ranks = stats.zscore_ranks();

    std::vector<double> values(n * n, 0.0);
    parallel_for(n, jobs, [&](std::size_t i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            values[i * n + j] = variant == DeltaVariant::burrows ? burrows_delta(z[i], z[j]).value
                                                                 : eder_delta(z[i], z[j], ranks).value;
        }
    });
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) values[i * n + j] = values[j * n + i];
    }
    std::vector<std::string> labels;
    labels.reserve(n);
    for (const auto& d : corpus) labels.push_back(d.title());
    return DistanceMatrix(std::move(labels), std::move(values));
}

std::vector<std::size_t> ClusterTree::leaves_under(std::size_t node) const {
    std::vector<std::size_t> out;
    std::vector<std::size_t> stack{node};
    while (!stack.empty()) {
        const auto k = stack.back();
        stack.pop_back();
        if (nodes[k].is_leaf()) {
            out.push_back(k);
        } else {
            stack.push_back(static_cast<std::size_t>(nodes[k].left));
            stack.push_back(static_cast<std::size_t>(nodes[k].right));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// Lance-Williams update for d(k, i+j) given d(k,i), d(k,j), d(i,j).
double lance_williams(Linkage linkage, double dki, double dkj, double dij, double ni, double nj, double nk) {
    switch (linkage) {
    case Linkage::single: return std::min(dki, dkj);
    case Linkage::complete: return std::max(dki, dkj);
    case Linkage::average: return (ni * dki + nj * dkj) / (ni + nj);
    case Linkage::ward: {
        const double total = ni + nj + nk;
        return ((ni + nk) * dki + (nj + nk) * dkj - nk * dij) / total;
    }
    }
    return 0.0;
}

} // namespace

ClusterTree agglomerate(const DistanceMatrix& matrix, Linkage linkage) {
    const std::size_t n = matrix.size();
    ClusterTree tree;
    tree.leaf_count = n;
    if (n == 0) throw InputError("cannot cluster an empty matrix");
    for (std::size_t i = 0; i < n; ++i) tree.nodes.push_back({matrix.labels()[i], -1, -1, 0.0, 1});
    if (n == 1) return tree;

    // Active clusters are addressed by slot = their smallest leaf index; a
    // merge keeps the lower slot, so slot order matches the tie-break order.
    std::vector<double> d(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) d[i * n + j] = matrix.at(i, j);
    std::vector<bool> active(n, true);
    std::vector<std::size_t> node_of(n);
    for (std::size_t i = 0; i < n; ++i) node_of[i] = i;

    for (std::size_t step = 0; step + 1 < n; ++step) {
        std::size_t bi = 0, bj = 0;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            if (!active[i]) continue;
            for (std::size_t j = i + 1; j < n; ++j) {
                if (active[j] && d[i * n + j] < best) {
                    best = d[i * n + j];
                    bi = i;
                    bj = j;
                }
            }
        }
        if (!std::isfinite(best)) throw InvariantError("agglomerate: no finite merge distance");

        const auto& li = tree.nodes[node_of[bi]];
        const auto& lj = tree.nodes[node_of[bj]];
        const double ni = static_cast<double>(li.size);
        const double nj = static_cast<double>(lj.size);
        // Heights never drop below a child's height, even with rounding.
        const double height = std::max({best, li.height, lj.height});
        ClusterTree::Node merged{"", static_cast<int>(node_of[bi]), static_cast<int>(node_of[bj]), height,
                                 li.size + lj.size};

        for (std::size_t k = 0; k < n; ++k) {
            if (!active[k] || k == bi || k == bj) continue;
            const double nk = static_cast<double>(tree.nodes[node_of[k]].size);
            const double v = lance_williams(linkage, d[k * n + bi], d[k * n + bj], best, ni, nj, nk);
            d[k * n + bi] = d[bi * n + k] = v;
        }
        active[bj] = false;
        tree.nodes.push_back(std::move(merged));
        node_of[bi] = tree.nodes.size() - 1;
    }
    return tree;
}

} // namespace authorship
