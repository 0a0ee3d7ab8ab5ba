#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "netmon/date.hpp"
#include "netmon/hclust.hpp"

namespace netmon {

// Leaf bipartition stored as the side that does not contain leaf 0.
class Split {
public:
    // `side` lists leaf indices of one side; it is canonicalised on construction.
    Split(std::size_t n_leaves, const std::vector<std::size_t>& side);

    std::size_t n_leaves() const { return n_; }
    std::size_t size() const;  // leaves on the canonical side
    bool contains(std::size_t leaf) const { return (bits_[leaf / 64] >> (leaf % 64)) & 1U; }
    bool trivial() const { return size() < 2 || n_ - size() < 2; }
    std::size_t overlap(const Split& other) const;  // |canonical ∩ other.canonical|

    auto operator<=>(const Split&) const = default;

private:
    std::size_t n_;
    std::vector<std::uint64_t> bits_;
};

struct SplitSet {
    std::vector<Split> splits;  // sorted, unique, all nontrivial
    std::size_t n_leaves = 0;
};

// Nontrivial splits of `tree` with leaves indexed by their position in `leaf_order`.
SplitSet extract_splits(const Dendrogram& tree, const std::vector<std::string>& leaf_order);
SplitSet extract_splits(const Dendrogram& tree);

double rf_distance(const Dendrogram& t1, const Dendrogram& t2);

// Information-theoretic quantities below are in bits.
double split_entropy(const Split& s);
double clustering_entropy(const SplitSet& s);
double mutual_clustering_info(const Split& s1, const Split& s2, std::size_t n_leaves);
inline double mutual_clustering_info(const Split& s1, const Split& s2) {
    return mutual_clustering_info(s1, s2, s1.n_leaves());
}

Eigen::MatrixXd pairing_scores(const SplitSet& a, const SplitSet& b);

// Score of the best one-to-one pairing of splits.
double optimal_matching_score(const SplitSet& a, const SplitSet& b);

// H(t1) + H(t2) - 2 * optimal matching score.
double clustering_info_distance(const Dendrogram& t1, const Dendrogram& t2);

enum class TreeMetric { RF, CID };
std::string to_string(TreeMetric m);

double tree_distance(const Dendrogram& t1, const Dendrogram& t2, TreeMetric metric);

struct DistanceSeries {
    std::vector<Date> timestamps;
    std::vector<double> values;
    std::string label;
};

// values[k] = distance(trees[k], trees[k+1]) stamped with window_end_dates[k+1].
DistanceSeries tree_distance_series(const std::vector<Dendrogram>& trees,
                                    const std::vector<Date>& window_end_dates, TreeMetric metric,
                                    std::string label);

}  // namespace netmon
