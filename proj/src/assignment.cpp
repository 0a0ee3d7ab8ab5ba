#include "netmon/assignment.hpp"

#include <algorithm>
#include <limits>

namespace netmon {

Assignment max_weight_assignment(const Eigen::MatrixXd& scores) {
    const int rows = static_cast<int>(scores.rows());
    const int cols = static_cast<int>(scores.cols());
    const int k = std::max(rows, cols);
    Assignment result;
    result.row_to_col.assign(static_cast<std::size_t>(rows), -1);
    if (k == 0) return result;

    // Minimise cost = -score over a k x k padded matrix, 1-based with a virtual column 0.
    auto cost = [&](int r, int c) {
        return (r < rows && c < cols) ? -scores(r, c) : 0.0;
    };
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(static_cast<std::size_t>(k + 1), 0.0), v(static_cast<std::size_t>(k + 1), 0.0);
    std::vector<int> match(static_cast<std::size_t>(k + 1), 0), way(static_cast<std::size_t>(k + 1), 0);
    for (int i = 1; i <= k; ++i) {
        match[0] = i;
        int j0 = 0;
        std::vector<double> minv(static_cast<std::size_t>(k + 1), inf);
        std::vector<bool> used(static_cast<std::size_t>(k + 1), false);
        do {
            used[static_cast<std::size_t>(j0)] = true;
            const int i0 = match[static_cast<std::size_t>(j0)];
            double delta = inf;
            int j1 = 0;
            for (int j = 1; j <= k; ++j) {
                if (used[static_cast<std::size_t>(j)]) continue;
                const double cur = cost(i0 - 1, j - 1) - u[static_cast<std::size_t>(i0)] -
                                   v[static_cast<std::size_t>(j)];
                if (cur < minv[static_cast<std::size_t>(j)]) {
                    minv[static_cast<std::size_t>(j)] = cur;
                    way[static_cast<std::size_t>(j)] = j0;
                }
                if (minv[static_cast<std::size_t>(j)] < delta) {
                    delta = minv[static_cast<std::size_t>(j)];
                    j1 = j;
                }
            }
            for (int j = 0; j <= k; ++j) {
                if (used[static_cast<std::size_t>(j)]) {
                    u[static_cast<std::size_t>(match[static_cast<std::size_t>(j)])] += delta;
                    v[static_cast<std::size_t>(j)] -= delta;
                } else {
                    minv[static_cast<std::size_t>(j)] -= delta;
                }
            }
            j0 = j1;
        } while (match[static_cast<std::size_t>(j0)] != 0);
        do {
            const int j1 = way[static_cast<std::size_t>(j0)];
            match[static_cast<std::size_t>(j0)] = match[static_cast<std::size_t>(j1)];
            j0 = j1;
        } while (j0 != 0);
    }
    for (int j = 1; j <= k; ++j) {
        const int r = match[static_cast<std::size_t>(j)] - 1;
        const int c = j - 1;
        if (r < rows && c < cols) {
            result.row_to_col[static_cast<std::size_t>(r)] = c;
            result.score += scores(r, c);
        }
    }
    return result;
}

}  // namespace netmon
