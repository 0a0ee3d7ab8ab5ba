// Test-only generators and brute-force oracles. Nothing here calls the code paths it checks.
#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "netmon/hclust.hpp"

namespace testing {

using Rng = std::mt19937_64;

inline std::filesystem::path temp_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("netmon_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline std::filesystem::path write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream(path, std::ios::binary) << text;
    return path;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline Eigen::MatrixXd random_normal(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
    std::normal_distribution<double> z(0.0, 1.0);
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = z(rng);
    return m;
}

// Returns with a random common factor so correlations span a range of values.
inline Eigen::MatrixXd random_returns(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::MatrixXd base = random_normal(rows, cols, rng);
    Eigen::VectorXd f = random_normal(rows, 1, rng);
    for (Eigen::Index j = 0; j < cols; ++j) base.col(j) += 2.0 * u(rng) * f;
    return 0.01 * base;
}

inline Eigen::MatrixXd random_symmetric(Eigen::Index n, Rng& rng) {
    std::uniform_real_distribution<double> u(0.0, 2.0);
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j) d(i, j) = d(j, i) = u(rng);
    return d;
}

inline std::vector<std::string> letters(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(std::string(1, static_cast<char>('a' + i)));
    return out;
}

// Random stable VAR coefficient matrices (companion spectral radius < 1).
inline std::vector<Eigen::MatrixXd> random_stable_var(Eigen::Index n, int p, Rng& rng) {
    while (true) {
        std::vector<Eigen::MatrixXd> b;
        for (int j = 0; j < p; ++j) b.push_back(0.35 / p * random_normal(n, n, rng) / std::sqrt(double(n)));
        Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n * p, n * p);
        for (int j = 0; j < p; ++j) comp.block(0, j * n, n, n) = b[static_cast<std::size_t>(j)];
        if (p > 1) comp.block(n, 0, n * (p - 1), n * (p - 1)).setIdentity();
        if (comp.eigenvalues().cwiseAbs().maxCoeff() < 0.95) return b;
    }
}

inline Eigen::MatrixXd random_spd(Eigen::Index n, Rng& rng) {
    Eigen::MatrixXd a = random_normal(n, n, rng);
    return a * a.transpose() / double(n) + 0.2 * Eigen::MatrixXd::Identity(n, n);
}

// y_t = c + sum_j B_j y_{t-j} + L e_t with L L' = sigma, after a burn-in.
inline Eigen::MatrixXd simulate_var(const std::vector<Eigen::MatrixXd>& b, const Eigen::MatrixXd& sigma,
                                    const Eigen::VectorXd& intercept, Eigen::Index t, Rng& rng,
                                    Eigen::Index burn = 500) {
    const Eigen::Index n = sigma.rows();
    const Eigen::MatrixXd l = sigma.llt().matrixL();
    const Eigen::Index total = t + burn;
    Eigen::MatrixXd y = Eigen::MatrixXd::Zero(total, n);
    const Eigen::MatrixXd e = random_normal(total, n, rng);
    for (Eigen::Index s = 0; s < total; ++s) {
        Eigen::VectorXd v = intercept + l * e.row(s).transpose();
        for (std::size_t j = 0; j < b.size(); ++j)
            if (s - 1 - static_cast<Eigen::Index>(j) >= 0)
                v += b[j] * y.row(s - 1 - static_cast<Eigen::Index>(j)).transpose();
        y.row(s) = v.transpose();
    }
    return y.bottomRows(t);
}

// All-simple-path enumeration for small graphs.
inline double brute_shortest_path(const Eigen::MatrixXd& w, int from, int to) {
    const int n = static_cast<int>(w.rows());
    double best = std::numeric_limits<double>::infinity();
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::function<void(int, double)> go = [&](int at, double len) {
        if (at == to) {
            best = std::min(best, len);
            return;
        }
        seen[static_cast<std::size_t>(at)] = true;
        for (int nx = 0; nx < n; ++nx)
            if (!seen[static_cast<std::size_t>(nx)]) go(nx, len + w(at, nx));
        seen[static_cast<std::size_t>(at)] = false;
    };
    if (from == to) return 0.0;
    go(from, 0.0);
    return best;
}

inline Eigen::MatrixXd dijkstra_all(const Eigen::MatrixXd& w) {
    const Eigen::Index n = w.rows();
    Eigen::MatrixXd d = Eigen::MatrixXd::Constant(n, n, std::numeric_limits<double>::infinity());
    for (Eigen::Index s = 0; s < n; ++s) {
        std::vector<bool> done(static_cast<std::size_t>(n), false);
        d(s, s) = 0.0;
        for (Eigen::Index it = 0; it < n; ++it) {
            Eigen::Index u = -1;
            for (Eigen::Index v = 0; v < n; ++v)
                if (!done[static_cast<std::size_t>(v)] && (u < 0 || d(s, v) < d(s, u))) u = v;
            done[static_cast<std::size_t>(u)] = true;
            for (Eigen::Index v = 0; v < n; ++v)
                if (v != u && d(s, u) + w(u, v) < d(s, v)) d(s, v) = d(s, u) + w(u, v);
        }
    }
    return d;
}

// Naive single linkage: inter-cluster distance recomputed from the original matrix as the
// minimum over all cross pairs, ties broken by the smallest (id, id) pair.
inline netmon::Dendrogram naive_single_linkage(const Eigen::MatrixXd& d, std::vector<std::string> labels) {
    const std::size_t n = static_cast<std::size_t>(d.rows());
    std::map<std::size_t, std::vector<std::size_t>> clusters;
    for (std::size_t i = 0; i < n; ++i) clusters[i] = {i};
    netmon::Dendrogram t{std::move(labels), {}};
    std::size_t next = n;
    while (clusters.size() > 1) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t bu = 0, bv = 0;
        bool found = false;
        for (auto a = clusters.begin(); a != clusters.end(); ++a)
            for (auto b = std::next(a); b != clusters.end(); ++b) {
                double m = std::numeric_limits<double>::infinity();
                for (auto i : a->second)
                    for (auto j : b->second)
                        m = std::min(m, d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
                if (!found || m < best) {  // map order gives lexicographic id pairs
                    found = true;
                    best = m;
                    bu = a->first;
                    bv = b->first;
                }
            }
        auto merged = clusters[bu];
        merged.insert(merged.end(), clusters[bv].begin(), clusters[bv].end());
        clusters.erase(bu);
        clusters.erase(bv);
        clusters[next] = merged;
        t.merges.push_back({bu, bv, best, next});
        ++next;
    }
    return t;
}

// Minimax path weight between i and j by exhaustive simple-path search.
inline double brute_minimax(const Eigen::MatrixXd& w, int from, int to) {
    const int n = static_cast<int>(w.rows());
    double best = std::numeric_limits<double>::infinity();
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::function<void(int, double)> go = [&](int at, double worst) {
        if (worst >= best) return;
        if (at == to) {
            best = worst;
            return;
        }
        seen[static_cast<std::size_t>(at)] = true;
        for (int nx = 0; nx < n; ++nx)
            if (!seen[static_cast<std::size_t>(nx)]) go(nx, std::max(worst, w(at, nx)));
        seen[static_cast<std::size_t>(at)] = false;
    };
    go(from, 0.0);
    return best;
}

// Random binary dendrogram on the given labels: random merge order, increasing heights.
inline netmon::Dendrogram random_tree(const std::vector<std::string>& labels, Rng& rng) {
    const std::size_t n = labels.size();
    std::vector<std::size_t> active(n);
    std::iota(active.begin(), active.end(), std::size_t{0});
    netmon::Dendrogram t{labels, {}};
    double h = 0.0;
    std::uniform_real_distribution<double> step(0.01, 1.0);
    for (std::size_t id = n; active.size() > 1; ++id) {
        std::shuffle(active.begin(), active.end(), rng);
        auto a = active.back();
        active.pop_back();
        auto b = active.back();
        active.pop_back();
        h += step(rng);
        t.merges.push_back({std::min(a, b), std::max(a, b), h, id});
        active.push_back(id);
    }
    return t;
}

// Nontrivial bipartitions as sorted label-set pairs, computed by walking the merge list.
using LabelSplit = std::pair<std::set<std::string>, std::set<std::string>>;

inline std::set<LabelSplit> brute_splits(const netmon::Dendrogram& t) {
    const std::size_t n = t.leaves.size();
    std::vector<std::set<std::string>> below(n + t.merges.size());
    for (std::size_t i = 0; i < n; ++i) below[i] = {t.leaves[i]};
    std::set<LabelSplit> out;
    const std::set<std::string> all(t.leaves.begin(), t.leaves.end());
    for (const auto& m : t.merges) {
        below[m.id] = below[m.left];
        below[m.id].insert(below[m.right].begin(), below[m.right].end());
    }
    for (std::size_t id = 0; id + 1 < below.size(); ++id) {
        std::set<std::string> rest;
        std::set_difference(all.begin(), all.end(), below[id].begin(), below[id].end(),
                            std::inserter(rest, rest.begin()));
        if (below[id].size() < 2 || rest.size() < 2) continue;
        out.insert(std::min(below[id], rest) == below[id] ? LabelSplit{below[id], rest}
                                                          : LabelSplit{rest, below[id]});
    }
    return out;
}

// Mutual information (bits) of two leaf labellings given as 0/1 membership vectors.
inline double brute_mutual_information(const std::vector<int>& x, const std::vector<int>& y) {
    const double n = static_cast<double>(x.size());
    double joint[2][2] = {{0, 0}, {0, 0}}, px[2] = {0, 0}, py[2] = {0, 0};
    for (std::size_t i = 0; i < x.size(); ++i) {
        joint[x[i]][y[i]] += 1.0 / n;
        px[x[i]] += 1.0 / n;
        py[y[i]] += 1.0 / n;
    }
    double mi = 0.0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            if (joint[a][b] > 0) mi += joint[a][b] * std::log2(joint[a][b] / (px[a] * py[b]));
    return mi;
}

// Best one-to-one matching score by enumerating injections of the smaller side.
inline double brute_matching(const Eigen::MatrixXd& s) {
    const bool flip = s.rows() > s.cols();
    const Eigen::MatrixXd m = flip ? Eigen::MatrixXd(s.transpose()) : s;
    const int rows = static_cast<int>(m.rows()), cols = static_cast<int>(m.cols());
    double best = 0.0;
    std::vector<bool> used(static_cast<std::size_t>(cols), false);
    std::function<void(int, double)> go = [&](int r, double acc) {
        if (r == rows) {
            best = std::max(best, acc);
            return;
        }
        go(r + 1, acc);  // row left unmatched
        for (int c = 0; c < cols; ++c)
            if (!used[static_cast<std::size_t>(c)]) {
                used[static_cast<std::size_t>(c)] = true;
                go(r + 1, acc + m(r, c));
                used[static_cast<std::size_t>(c)] = false;
            }
    };
    go(0, 0.0);
    return best;
}

}  // namespace testing
