#include "netmon/graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "netmon/error.hpp"

namespace netmon {

namespace {
constexpr const char* kModule = "graph";
}

WeightedGraph to_graph(const DissimilarityMatrix& d) {
    return WeightedGraph{d.labels, d.values, d.kind == Measure::GVDD};
}

GraphDistanceMatrix shortest_path_matrix(const WeightedGraph& graph, EccentricityMode mode) {
    const auto& a = graph.adjacency;
    const Eigen::Index n = a.rows();
    if (a.cols() != n) throw DataError(kModule, "adjacency matrix must be square");
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            if (!std::isfinite(a(i, j)) || a(i, j) < 0.0)
                throw DataError(kModule, "edge weights must be finite and nonnegative");
            if (!graph.directed && std::abs(a(i, j) - a(j, i)) > 1e-12)
                throw DataError(kModule, "undirected graph with asymmetric adjacency");
        }

    Eigen::MatrixXd dist = a;
    dist.diagonal().setZero();
    for (Eigen::Index k = 0; k < n; ++k)
        for (Eigen::Index i = 0; i < n; ++i) {
            const double dik = dist(i, k);
            for (Eigen::Index j = 0; j < n; ++j)
                if (dik + dist(k, j) < dist(i, j)) dist(i, j) = dik + dist(k, j);
        }

    Eigen::VectorXd ecc = Eigen::VectorXd::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            if (i != j)
                ecc(i) = std::max(ecc(i), mode == EccentricityMode::Out ? dist(i, j) : dist(j, i));
    return GraphDistanceMatrix{graph.labels, std::move(dist), std::move(ecc)};
}

std::vector<std::string> center(const GraphDistanceMatrix& dm) {
    const auto& ecc = dm.eccentricity;
    if (ecc.size() == 0) throw DataError(kModule, "center of an empty graph");
    const double best = ecc.minCoeff();
    std::vector<std::string> out;
    for (Eigen::Index i = 0; i < ecc.size(); ++i)
        if (ecc(i) - best <= kEccentricityTolerance) out.push_back(dm.labels[static_cast<std::size_t>(i)]);
    return out;
}

std::vector<CenterCount> center_frequency(const std::vector<std::vector<std::string>>& per_window) {
    if (per_window.empty()) throw DataError(kModule, "center frequency over zero windows");
    std::map<std::string, std::size_t> counts;
    for (const auto& window : per_window) {
        std::vector<std::string> unique(window.begin(), window.end());
        std::sort(unique.begin(), unique.end());
        unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
        for (const auto& t : unique) ++counts[t];
    }
    std::vector<CenterCount> out;
    for (auto& [ticker, count] : counts) out.push_back({ticker, count});
    std::stable_sort(out.begin(), out.end(),
                     [](const CenterCount& a, const CenterCount& b) { return a.count > b.count; });
    return out;
}

}  // namespace netmon
