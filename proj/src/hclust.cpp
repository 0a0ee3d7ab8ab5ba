#include "netmon/hclust.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include <fmt/core.h>

#include "netmon/error.hpp"

namespace netmon {

namespace {
constexpr const char* kModule = "hclust";
}

void validate(const Dendrogram& tree) {
    const std::size_t n = tree.leaf_count();
    if (n < 2) throw DataError(kModule, "dendrogram needs at least two leaves");
    if (tree.merges.size() != n - 1)
        throw DataError(kModule, fmt::format("{} merges for {} leaves", tree.merges.size(), n));
    std::vector<bool> used(2 * n - 1, false);
    double last = 0.0;
    for (std::size_t k = 0; k < tree.merges.size(); ++k) {
        const auto& m = tree.merges[k];
        if (m.id != n + k) throw DataError(kModule, "merge ids must be N, N+1, ... in order");
        for (auto child : {m.left, m.right}) {
            if (child >= m.id || used[child])
                throw DataError(kModule, fmt::format("cluster {} used invalidly in merge {}", child, k));
            used[child] = true;
        }
        if (!(m.height >= 0.0) || m.height < last)
            throw DataError(kModule, "merge heights must be nonnegative and non-decreasing");
        last = m.height;
    }
}

std::vector<std::vector<std::size_t>> cluster_members(const Dendrogram& tree) {
    const std::size_t n = tree.leaf_count();
    std::vector<std::vector<std::size_t>> members(n + tree.merges.size());
    for (std::size_t i = 0; i < n; ++i) members[i] = {i};
    for (const auto& m : tree.merges) {
        auto& out = members[m.id];
        std::merge(members[m.left].begin(), members[m.left].end(), members[m.right].begin(),
                   members[m.right].end(), std::back_inserter(out));
    }
    return members;
}

std::vector<double> cluster_heights(const Dendrogram& tree) {
    std::vector<double> h(tree.leaf_count() + tree.merges.size(), 0.0);
    for (const auto& m : tree.merges) h[m.id] = m.height;
    return h;
}

Eigen::MatrixXd symmetrize_max(const Eigen::MatrixXd& d) {
    if (d.rows() != d.cols()) throw DataError(kModule, "dissimilarity matrix must be square");
    Eigen::MatrixXd out = d.cwiseMax(d.transpose());
    out.diagonal() = d.diagonal();
    return out;
}

Dendrogram single_linkage(const Eigen::MatrixXd& d, std::vector<std::string> labels) {
    const Eigen::Index n = d.rows();
    if (d.cols() != n) throw DataError(kModule, "dissimilarity matrix must be square");
    if (n < 2) throw DataError(kModule, "clustering needs at least two objects");
    if (static_cast<Eigen::Index>(labels.size()) != n)
        throw DataError(kModule, "label count does not match matrix size");
    if (d.hasNaN()) throw NumericalError(kModule, "NaN in dissimilarity matrix");
    if ((d - d.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw DataError(kModule, "single linkage requires a symmetric matrix; symmetrize first");

    // slot s holds cluster id ids[s]; dist is the Lance-Williams min-updated matrix.
    Eigen::MatrixXd dist = d.cwiseMax(d.transpose());
    std::vector<std::size_t> ids(static_cast<std::size_t>(n));
    for (std::size_t s = 0; s < ids.size(); ++s) ids[s] = s;
    std::vector<Eigen::Index> active(static_cast<std::size_t>(n));
    for (Eigen::Index s = 0; s < n; ++s) active[static_cast<std::size_t>(s)] = s;

    Dendrogram tree{std::move(labels), {}};
    tree.merges.reserve(static_cast<std::size_t>(n - 1));
    std::size_t next_id = static_cast<std::size_t>(n);
    while (active.size() > 1) {
        using Key = std::tuple<double, std::size_t, std::size_t>;
        Key best{std::numeric_limits<double>::infinity(), 0, 0};
        Eigen::Index best_a = -1, best_b = -1;
        for (std::size_t x = 0; x < active.size(); ++x)
            for (std::size_t y = x + 1; y < active.size(); ++y) {
                const Eigen::Index a = active[x], b = active[y];
                const auto ia = ids[static_cast<std::size_t>(a)];
                const auto ib = ids[static_cast<std::size_t>(b)];
                Key key{dist(a, b), std::min(ia, ib), std::max(ia, ib)};
                if (best_a < 0 || key < best) {
                    best = key;
                    best_a = a;
                    best_b = b;
                }
            }
        const auto [height, lo, hi] = best;
        tree.merges.push_back(Merge{lo, hi, height, next_id});

        // merged cluster takes slot best_a
        for (auto s : active) {
            if (s == best_a || s == best_b) continue;
            const double v = std::min(dist(best_a, s), dist(best_b, s));
            dist(best_a, s) = dist(s, best_a) = v;
        }
        ids[static_cast<std::size_t>(best_a)] = next_id++;
        active.erase(std::find(active.begin(), active.end(), best_b));
    }
    return tree;
}

}  // namespace netmon
