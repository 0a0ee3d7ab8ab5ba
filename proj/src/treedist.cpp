#include "netmon/treedist.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <unordered_map>

#include <fmt/core.h>

#include "netmon/assignment.hpp"
#include "netmon/error.hpp"

namespace netmon {

namespace {

constexpr const char* kModule = "treedist";

double plogp_ratio(double joint, double pa, double pb) {
    return joint > 0.0 ? joint * std::log2(joint / (pa * pb)) : 0.0;
}

std::vector<std::size_t> leaf_permutation(const Dendrogram& tree,
                                          const std::vector<std::string>& leaf_order) {
    if (tree.leaf_count() != leaf_order.size())
        throw DataError(kModule, fmt::format("leaf-set mismatch: {} vs {} leaves",
                                             tree.leaf_count(), leaf_order.size()));
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < leaf_order.size(); ++i) index.emplace(leaf_order[i], i);
    std::vector<std::size_t> perm(tree.leaf_count());
    for (std::size_t i = 0; i < tree.leaf_count(); ++i) {
        auto it = index.find(tree.leaves[i]);
        if (it == index.end())
            throw DataError(kModule, "leaf-set mismatch: " + tree.leaves[i] + " not shared");
        perm[i] = it->second;
    }
    return perm;
}

}  // namespace

Split::Split(std::size_t n_leaves, const std::vector<std::size_t>& side)
    : n_(n_leaves), bits_((n_leaves + 63) / 64, 0) {
    for (auto leaf : side) {
        if (leaf >= n_leaves) throw DataError(kModule, "split leaf index out of range");
        bits_[leaf / 64] |= std::uint64_t{1} << (leaf % 64);
    }
    if (n_ > 0 && contains(0)) {
        for (auto& w : bits_) w = ~w;
        if (n_ % 64 != 0) bits_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
    }
}

std::size_t Split::size() const {
    std::size_t c = 0;
    for (auto w : bits_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

std::size_t Split::overlap(const Split& other) const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < bits_.size(); ++i)
        c += static_cast<std::size_t>(std::popcount(bits_[i] & other.bits_[i]));
    return c;
}

SplitSet extract_splits(const Dendrogram& tree, const std::vector<std::string>& leaf_order) {
    validate(tree);
    const auto perm = leaf_permutation(tree, leaf_order);
    const auto members = cluster_members(tree);
    const std::size_t n = tree.leaf_count();
    SplitSet out{{}, n};
    for (const auto& m : tree.merges) {
        if (m.id == tree.root()) continue;
        std::vector<std::size_t> side;
        side.reserve(members[m.id].size());
        for (auto leaf : members[m.id]) side.push_back(perm[leaf]);
        Split s(n, side);
        if (!s.trivial()) out.splits.push_back(std::move(s));
    }
    std::sort(out.splits.begin(), out.splits.end());
    out.splits.erase(std::unique(out.splits.begin(), out.splits.end()), out.splits.end());
    return out;
}

SplitSet extract_splits(const Dendrogram& tree) { return extract_splits(tree, tree.leaves); }

double rf_distance(const Dendrogram& t1, const Dendrogram& t2) {
    const auto a = extract_splits(t1, t1.leaves);
    const auto b = extract_splits(t2, t1.leaves);
    std::vector<Split> diff;
    std::set_symmetric_difference(a.splits.begin(), a.splits.end(), b.splits.begin(),
                                  b.splits.end(), std::back_inserter(diff));
    return 0.5 * static_cast<double>(diff.size());
}

double split_entropy(const Split& s) {
    const double n = static_cast<double>(s.n_leaves());
    const double pa = static_cast<double>(s.size()) / n;
    const double pb = 1.0 - pa;
    double h = 0.0;
    if (pa > 0.0) h -= pa * std::log2(pa);
    if (pb > 0.0) h -= pb * std::log2(pb);
    return h;
}

double clustering_entropy(const SplitSet& s) {
    double h = 0.0;
    for (const auto& split : s.splits) h += split_entropy(split);
    return h;
}

double mutual_clustering_info(const Split& s1, const Split& s2, std::size_t n_leaves) {
    if (s1.n_leaves() != n_leaves || s2.n_leaves() != n_leaves)
        throw DataError(kModule, "splits are over different leaf sets");
    const double n = static_cast<double>(n_leaves);
    const double a = static_cast<double>(s1.size());
    const double a2 = static_cast<double>(s2.size());
    const double aa = static_cast<double>(s1.overlap(s2));
    const double pa = a / n, pb = 1.0 - pa;
    const double pa2 = a2 / n, pb2 = 1.0 - pa2;
    return plogp_ratio(aa / n, pa, pa2) + plogp_ratio((a - aa) / n, pa, pb2) +
           plogp_ratio((a2 - aa) / n, pb, pa2) + plogp_ratio((n - a - a2 + aa) / n, pb, pb2);
}

Eigen::MatrixXd pairing_scores(const SplitSet& a, const SplitSet& b) {
    if (a.n_leaves != b.n_leaves) throw DataError(kModule, "split sets over different leaf sets");
    Eigen::MatrixXd s(static_cast<Eigen::Index>(a.splits.size()),
                      static_cast<Eigen::Index>(b.splits.size()));
    for (std::size_t i = 0; i < a.splits.size(); ++i)
        for (std::size_t j = 0; j < b.splits.size(); ++j)
            s(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                mutual_clustering_info(a.splits[i], b.splits[j], a.n_leaves);
    return s;
}

double optimal_matching_score(const SplitSet& a, const SplitSet& b) {
    return max_weight_assignment(pairing_scores(a, b)).score;
}

double clustering_info_distance(const Dendrogram& t1, const Dendrogram& t2) {
    const auto a = extract_splits(t1, t1.leaves);
    const auto b = extract_splits(t2, t1.leaves);
    const double d = clustering_entropy(a) + clustering_entropy(b) - 2.0 * optimal_matching_score(a, b);
    return std::max(d, 0.0);
}

std::string to_string(TreeMetric m) { return m == TreeMetric::RF ? "rf" : "cid"; }

double tree_distance(const Dendrogram& t1, const Dendrogram& t2, TreeMetric metric) {
    return metric == TreeMetric::RF ? rf_distance(t1, t2) : clustering_info_distance(t1, t2);
}

DistanceSeries tree_distance_series(const std::vector<Dendrogram>& trees,
                                    const std::vector<Date>& window_end_dates, TreeMetric metric,
                                    std::string label) {
    if (trees.size() < 2) throw DataError(kModule, "a distance series needs at least two trees");
    if (window_end_dates.size() != trees.size())
        throw DataError(kModule, "one end date per tree is required");
    DistanceSeries series;
    series.label = std::move(label);
    for (std::size_t k = 0; k + 1 < trees.size(); ++k) {
        series.timestamps.push_back(window_end_dates[k + 1]);
        series.values.push_back(tree_distance(trees[k], trees[k + 1], metric));
    }
    return series;
}

}  // namespace netmon
