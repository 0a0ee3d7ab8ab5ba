#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace netmon {

// Cluster ids 0..N-1 are the leaves; merge k creates cluster N+k.
struct Merge {
    std::size_t left = 0;
    std::size_t right = 0;
    double height = 0.0;
    std::size_t id = 0;
    bool operator==(const Merge&) const = default;
};

struct Dendrogram {
    std::vector<std::string> leaves;
    std::vector<Merge> merges;

    std::size_t leaf_count() const { return leaves.size(); }
    std::size_t root() const { return leaves.size() + merges.size() - 1; }
};

// Throws DataError unless the merge list forms a single binary tree over all leaves with
// non-decreasing heights.
void validate(const Dendrogram& tree);

// Leaf indices under every cluster id, each list sorted ascending.
std::vector<std::vector<std::size_t>> cluster_members(const Dendrogram& tree);

// Height of every cluster id (0 for leaves).
std::vector<double> cluster_heights(const Dendrogram& tree);

Eigen::MatrixXd symmetrize_max(const Eigen::MatrixXd& d);

/// Agglomerative single-linkage clustering of a symmetric dissimilarity matrix.
///
/// Each step merges the closest pair of active clusters; among equal distances the pair with
/// the lexicographically smallest (smaller id, larger id) wins. The merge record stores the
/// smaller id as `left`.
Dendrogram single_linkage(const Eigen::MatrixXd& d, std::vector<std::string> labels);

// Children are written in order of their smallest leaf label; leaves sit at height 0.
std::string to_newick(const Dendrogram& tree);

// Inverse of to_newick for binary trees. Leaves are numbered in order of appearance.
Dendrogram parse_newick(std::string_view text);

}  // namespace netmon
