#pragma once

#include <vector>

#include <Eigen/Dense>

namespace netmon {

struct Assignment {
    double score = 0.0;
    // row_to_col[r] is the matched column, or -1 when row r is paired with a dummy.
    std::vector<int> row_to_col;
};

// Exact maximum-weight matching on a rectangular score matrix (Hungarian method with
// potentials, O(k^3)). The smaller side is padded with zero-score dummies.
Assignment max_weight_assignment(const Eigen::MatrixXd& scores);

}  // namespace netmon
