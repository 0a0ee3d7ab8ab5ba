#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "netmon/date.hpp"
#include "netmon/ingest.hpp"

namespace netmon {

enum class Measure { PCCD, GVDD };

std::string to_string(Measure m);

// Edge weights for one window. PCCD is symmetric, GVDD generally is not.
struct DissimilarityMatrix {
    Measure kind = Measure::PCCD;
    std::vector<std::string> labels;
    Eigen::MatrixXd values;
    std::size_t window_index = 0;
    Date window_end_date{};
};

// sqrt(2(1 - rho)) over the columns of `data`; labels name columns in error messages.
Eigen::MatrixXd pccd_values(const Eigen::Ref<const Eigen::MatrixXd>& data,
                            const std::vector<std::string>& labels);
DissimilarityMatrix pccd(const WindowView& window);

/// Vector autoregression fitted by (optionally ridge-penalised) least squares.
///
/// Row i of every coefficient matrix is equation i; `std_errors` is laid out like the
/// stacked regressor block [B_1 ... B_p] (N x N*p) and is absent when ridge_lambda > 0.
struct VarModel {
    int lag_order = 0;
    std::vector<Eigen::MatrixXd> coefficients;
    Eigen::VectorXd intercept;
    Eigen::MatrixXd residual_covariance;
    Eigen::Index n_obs = 0;
    std::optional<Eigen::MatrixXd> std_errors;
    double ridge_lambda = 0.0;
};

/// Fits a VAR(p) without intercept to the per-column demeaned `data` (rows = time).
///
/// The ridge penalty is ridge_lambda * n_obs * ||B||^2, i.e. ridge_lambda is on the scale of
/// a regressor variance. Residual covariance uses the denominator n_obs = M - p.
VarModel fit_var(const Eigen::Ref<const Eigen::MatrixXd>& data, int lag_order,
                 double ridge_lambda = 0.0);

// 1e-4 times the mean column variance of `data`.
double auto_ridge_lambda(const Eigen::Ref<const Eigen::MatrixXd>& data);

// Theta_0 = I, Theta_k = sum_{j=1}^{min(k,p)} B_j Theta_{k-j}.
std::vector<Eigen::MatrixXd> ma_coefficients(const std::vector<Eigen::MatrixXd>& coefficients,
                                             Eigen::Index dim, int horizon);
std::vector<Eigen::MatrixXd> ma_coefficients(const VarModel& model, int horizon);

// Row-normalised generalised forecast-error variance shares at horizon K.
struct GvdShareMatrix {
    Eigen::MatrixXd values;
    int horizon = 0;
};

GvdShareMatrix gvd_shares(const std::vector<Eigen::MatrixXd>& coefficients,
                          const Eigen::MatrixXd& sigma, int horizon);
GvdShareMatrix gvd_shares(const VarModel& model, int horizon);

DissimilarityMatrix gvdd(const GvdShareMatrix& shares, std::vector<std::string> labels,
                         std::size_t window_index, Date window_end_date);

struct GvddOptions {
    int lag_order = 1;
    int horizon = 10;
    // nullopt: automatic ridge (auto_ridge_lambda of the window); 0 disables.
    std::optional<double> ridge_lambda = 0.0;
};

DissimilarityMatrix gvdd(const WindowView& window, const GvddOptions& options);

}  // namespace netmon
