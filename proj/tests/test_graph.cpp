#include <doctest.h>

#include "netmon/dissim.hpp"
#include "netmon/error.hpp"
#include "netmon/graph.hpp"
#include "support.hpp"

using namespace netmon;

TEST_CASE("shortest paths: triangle with a long edge") {
    Eigen::MatrixXd w(3, 3);
    w << 0, 1, 3,  //
        1, 0, 1,   //
        3, 1, 0;
    const auto dm = shortest_path_matrix(WeightedGraph{{"A", "B", "C"}, w, false});
    CHECK(dm.distances(0, 2) == testing::brute_shortest_path(w, 0, 2));
    CHECK(dm.distances(0, 2) == 2.0);
    CHECK(dm.eccentricity(1) == 1.0);
    CHECK(center(dm) == std::vector<std::string>{"B"});
}

TEST_CASE("shortest paths: directed asymmetry") {
    Eigen::MatrixXd w = Eigen::MatrixXd::Constant(4, 4, 10.0);
    w.diagonal().setZero();
    w(0, 1) = 1.0;
    const auto dm = shortest_path_matrix(WeightedGraph{{"A", "B", "C", "D"}, w, true});
    CHECK(dm.distances(0, 1) == 1.0);
    CHECK(dm.distances(1, 0) == 10.0);

    Eigen::MatrixXd ww(2, 2);
    ww << 0, 1, 3, 0;
    const auto out = shortest_path_matrix(WeightedGraph{{"A", "B"}, ww, true}, EccentricityMode::Out);
    const auto in = shortest_path_matrix(WeightedGraph{{"A", "B"}, ww, true}, EccentricityMode::In);
    CHECK(center(out) == std::vector<std::string>{"A"});
    CHECK(center(in) == std::vector<std::string>{"B"});
}

TEST_CASE("shortest paths reject bad weights") {
    Eigen::MatrixXd w(2, 2);
    w << 0, -1, -1, 0;
    CHECK_THROWS_AS(shortest_path_matrix(WeightedGraph{{"A", "B"}, w, false}), DataError);
    w << 0, 1, 2, 0;
    CHECK_THROWS_AS(shortest_path_matrix(WeightedGraph{{"A", "B"}, w, false}), DataError);
    CHECK_NOTHROW(shortest_path_matrix(WeightedGraph{{"A", "B"}, w, true}));
}

TEST_CASE("Floyd-Warshall agrees with Dijkstra from every source") {
    testing::Rng rng(31);
    std::uniform_int_distribution<int> size(1, 10);
    std::uniform_real_distribution<double> weight(0.0, 5.0);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = size(rng);
        const bool directed = trial % 2 == 0;
        Eigen::MatrixXd w(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) w(i, j) = i == j ? 0.0 : weight(rng);
        if (!directed) w = w.cwiseMin(w.transpose()).eval();
        const auto dm = shortest_path_matrix(WeightedGraph{testing::letters(static_cast<std::size_t>(n)), w, directed});
        CHECK((dm.distances - testing::dijkstra_all(w)).cwiseAbs().maxCoeff() <= 1e-10);
        for (int i = 0; i < n; ++i) {
            CHECK(dm.distances(i, i) == 0.0);
            for (int j = 0; j < n; ++j) {
                CHECK(dm.distances(i, j) <= w(i, j));
                for (int k = 0; k < n; ++k) CHECK(dm.distances(i, k) <= dm.distances(i, j) + dm.distances(j, k) + 1e-9);
            }
        }
    }
}

TEST_CASE("PCCD distance matrix equals its adjacency") {
    testing::Rng rng(37);
    for (int trial = 0; trial < 50; ++trial) {
        const auto h = pccd_values(testing::random_returns(63, 9, rng), testing::letters(9));
        const auto dm = shortest_path_matrix(WeightedGraph{testing::letters(9), h, false});
        CHECK((dm.distances - h).cwiseAbs().maxCoeff() <= 1e-9);
    }
}

TEST_CASE("center examples") {
    Eigen::MatrixXd eq = Eigen::MatrixXd::Constant(4, 4, 0.7);
    eq.diagonal().setZero();
    CHECK(center(shortest_path_matrix(WeightedGraph{testing::letters(4), eq, false})) == testing::letters(4));

    const auto single = shortest_path_matrix(WeightedGraph{{"X"}, Eigen::MatrixXd::Zero(1, 1), false});
    CHECK(single.eccentricity(0) == 0.0);
    CHECK(center(single) == std::vector<std::string>{"X"});
}

TEST_CASE("center is invariant under vertex permutation") {
    testing::Rng rng(41);
    for (int trial = 0; trial < 50; ++trial) {
        const Eigen::Index n = 7;
        Eigen::MatrixXd w = testing::random_symmetric(n, rng);
        const auto labels = testing::letters(static_cast<std::size_t>(n));
        auto base = center(shortest_path_matrix(WeightedGraph{labels, w, false}));

        Eigen::PermutationMatrix<Eigen::Dynamic> perm(n);
        perm.setIdentity();
        std::shuffle(perm.indices().data(), perm.indices().data() + n, rng);
        std::vector<std::string> plabels(static_cast<std::size_t>(n));
        for (Eigen::Index i = 0; i < n; ++i) plabels[static_cast<std::size_t>(perm.indices()(i))] = labels[static_cast<std::size_t>(i)];
        auto moved = center(shortest_path_matrix(WeightedGraph{plabels, perm * w * perm.transpose(), false}));
        std::sort(base.begin(), base.end());
        std::sort(moved.begin(), moved.end());
        CHECK(base == moved);
    }
}

TEST_CASE("center_frequency") {
    using V = std::vector<std::vector<std::string>>;
    CHECK(center_frequency(V{{"A"}, {"A"}, {"B"}}) == std::vector<CenterCount>{{"A", 2}, {"B", 1}});
    CHECK(center_frequency(V{{"A", "B"}, {"A"}}) == std::vector<CenterCount>{{"A", 2}, {"B", 1}});
    CHECK(center_frequency(V{{"C"}, {"B"}, {"A", "C"}}) ==
          std::vector<CenterCount>{{"C", 2}, {"A", 1}, {"B", 1}});
    CHECK_THROWS_AS(center_frequency(V{}), DataError);

    const V windows{{"A", "B"}, {"C"}, {"B"}};
    std::size_t total = 0;
    for (const auto& c : center_frequency(windows)) total += c.count;
    CHECK(total == 4);
}
