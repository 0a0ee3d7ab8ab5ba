#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "netmon/dissim.hpp"

namespace netmon {

struct WeightedGraph {
    std::vector<std::string> labels;
    Eigen::MatrixXd adjacency;
    bool directed = false;
};

// PCCD matrices become undirected graphs, GVDD matrices directed ones.
WeightedGraph to_graph(const DissimilarityMatrix& d);

// Out: row maxima (distance from the vertex). In: column maxima (distance to it).
enum class EccentricityMode { Out, In };

struct GraphDistanceMatrix {
    std::vector<std::string> labels;
    Eigen::MatrixXd distances;
    Eigen::VectorXd eccentricity;
};

// Floyd-Warshall over a complete nonnegative graph.
GraphDistanceMatrix shortest_path_matrix(const WeightedGraph& graph,
                                         EccentricityMode mode = EccentricityMode::Out);

inline constexpr double kEccentricityTolerance = 1e-12;

// Every vertex whose eccentricity is within tolerance of the minimum, in vertex order.
std::vector<std::string> center(const GraphDistanceMatrix& dm);

struct CenterCount {
    std::string ticker;
    std::size_t count = 0;
    bool operator==(const CenterCount&) const = default;
};

// Sorted by descending count, then ticker.
std::vector<CenterCount> center_frequency(const std::vector<std::vector<std::string>>& per_window);

}  // namespace netmon
