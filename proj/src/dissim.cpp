#include "netmon/dissim.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/core.h>

#include "netmon/error.hpp"

namespace netmon {

namespace {

constexpr const char* kModule = "dissim";

Eigen::MatrixXd demean(const Eigen::Ref<const Eigen::MatrixXd>& data) {
    return data.rowwise() - data.colwise().mean();
}

}  // namespace

std::string to_string(Measure m) { return m == Measure::PCCD ? "PCCD" : "GVDD"; }

Eigen::MatrixXd pccd_values(const Eigen::Ref<const Eigen::MatrixXd>& data,
                            const std::vector<std::string>& labels) {
    if (data.rows() < 3) throw DataError(kModule, "PCCD needs at least 3 observations");
    const Eigen::MatrixXd centered = demean(data);
    const Eigen::MatrixXd cross = centered.transpose() * centered;
    const Eigen::Index n = data.cols();
    Eigen::VectorXd scale(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!(cross(i, i) > 0.0)) {
            auto name = static_cast<std::size_t>(i) < labels.size()
                            ? labels[static_cast<std::size_t>(i)]
                            : fmt::format("column {}", i);
            throw NumericalError(kModule, "zero sample variance for " + name);
        }
        scale(i) = std::sqrt(cross(i, i));
    }
    Eigen::MatrixXd h(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        h(i, i) = 0.0;
        for (Eigen::Index j = i + 1; j < n; ++j) {
            double rho = std::clamp(cross(i, j) / (scale(i) * scale(j)), -1.0, 1.0);
            h(i, j) = h(j, i) = std::sqrt(2.0 * (1.0 - rho));
        }
    }
    return h;
}

DissimilarityMatrix pccd(const WindowView& window) {
    return DissimilarityMatrix{Measure::PCCD, window.tickers(),
                               pccd_values(window.data(), window.tickers()), window.index(),
                               window.end_date()};
}

double auto_ridge_lambda(const Eigen::Ref<const Eigen::MatrixXd>& data) {
    const Eigen::MatrixXd centered = demean(data);
    const double denom = static_cast<double>(std::max<Eigen::Index>(data.rows() - 1, 1));
    return 1e-4 * centered.colwise().squaredNorm().mean() / denom;
}

VarModel fit_var(const Eigen::Ref<const Eigen::MatrixXd>& data, int lag_order,
                 double ridge_lambda) {
    if (lag_order < 1) throw UsageError(kModule, "VAR lag order must be at least 1");
    if (!(ridge_lambda >= 0.0)) throw UsageError(kModule, "ridge lambda must be nonnegative");
    const Eigen::Index m = data.rows();
    const Eigen::Index n = data.cols();
    const Eigen::Index p = lag_order;
    const Eigen::Index t_eff = m - p;
    if (t_eff <= 0)
        throw DataError(kModule, fmt::format("{} observations cannot support {} lags", m, p));
    if (ridge_lambda == 0.0 && t_eff <= n * p)
        throw DataError(kModule, "insufficient observations for OLS; supply ridge_lambda > 0");

    const Eigen::MatrixXd y_all = demean(data);
    const Eigen::MatrixXd y = y_all.bottomRows(t_eff);
    Eigen::MatrixXd x(t_eff, n * p);
    for (Eigen::Index j = 1; j <= p; ++j) x.middleCols((j - 1) * n, n) = y_all.middleRows(p - j, t_eff);

    Eigen::MatrixXd xtx = x.transpose() * x;
    if (ridge_lambda > 0.0)
        xtx.diagonal().array() += ridge_lambda * static_cast<double>(t_eff);
    Eigen::LDLT<Eigen::MatrixXd> ldlt(xtx);
    const double scale = std::max(xtx.diagonal().maxCoeff(), 1e-300);
    const double min_pivot = ldlt.vectorD().minCoeff();
    if (ldlt.info() != Eigen::Success || !(min_pivot > 1e-12 * scale))
        throw NumericalError(kModule, "singular regressor cross-product in VAR fit");

    const Eigen::MatrixXd beta = ldlt.solve(x.transpose() * y);  // (N*p) x N
    const Eigen::MatrixXd resid = y - x * beta;

    VarModel model;
    model.lag_order = lag_order;
    model.ridge_lambda = ridge_lambda;
    model.n_obs = t_eff;
    model.intercept = Eigen::VectorXd::Zero(n);
    for (Eigen::Index j = 0; j < p; ++j)
        model.coefficients.push_back(beta.middleRows(j * n, n).transpose());
    Eigen::MatrixXd sigma = resid.transpose() * resid / static_cast<double>(t_eff);
    model.residual_covariance = 0.5 * (sigma + sigma.transpose());

    if (ridge_lambda == 0.0) {
        const Eigen::MatrixXd xtx_inv = ldlt.solve(Eigen::MatrixXd::Identity(n * p, n * p));
        const double dof = static_cast<double>(t_eff - n * p);
        Eigen::MatrixXd se(n, n * p);
        for (Eigen::Index i = 0; i < n; ++i) {
            const double s2 = resid.col(i).squaredNorm() / dof;
            se.row(i) = (s2 * xtx_inv.diagonal().array()).sqrt().matrix().transpose();
        }
        model.std_errors = std::move(se);
    }
    return model;
}

std::vector<Eigen::MatrixXd> ma_coefficients(const std::vector<Eigen::MatrixXd>& coefficients,
                                             Eigen::Index dim, int horizon) {
    if (horizon < 1) throw UsageError(kModule, "MA horizon must be at least 1");
    std::vector<Eigen::MatrixXd> theta;
    theta.reserve(static_cast<std::size_t>(horizon));
    theta.push_back(Eigen::MatrixXd::Identity(dim, dim));
    const int p = static_cast<int>(coefficients.size());
    for (int k = 1; k < horizon; ++k) {
        Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(dim, dim);
        for (int j = 1; j <= std::min(k, p); ++j)
            acc.noalias() += coefficients[static_cast<std::size_t>(j - 1)] *
                             theta[static_cast<std::size_t>(k - j)];
        theta.push_back(std::move(acc));
    }
    return theta;
}

std::vector<Eigen::MatrixXd> ma_coefficients(const VarModel& model, int horizon) {
    return ma_coefficients(model.coefficients, model.residual_covariance.rows(), horizon);
}

GvdShareMatrix gvd_shares(const std::vector<Eigen::MatrixXd>& coefficients,
                          const Eigen::MatrixXd& sigma, int horizon) {
    const Eigen::Index n = sigma.rows();
    for (Eigen::Index j = 0; j < n; ++j)
        if (!(sigma(j, j) > 0.0))
            throw NumericalError(kModule, fmt::format("nonpositive residual variance for variable {}", j));
    const auto theta = ma_coefficients(coefficients, n, horizon);

    Eigen::MatrixXd numer = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd denom = Eigen::VectorXd::Zero(n);
    for (const auto& th : theta) {
        const Eigen::MatrixXd ts = th * sigma;  // (i,j) = e_i' Theta_k Sigma e_j
        numer.array() += ts.array().square();
        denom.array() += (ts.array() * th.array()).rowwise().sum();  // e_i' Theta Sigma Theta' e_i
    }
    Eigen::MatrixXd nu(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!(denom(i) > 0.0))
            throw NumericalError(kModule, "zero forecast-error variance in GVD");
        for (Eigen::Index j = 0; j < n; ++j) nu(i, j) = numer(i, j) / sigma(j, j) / denom(i);
    }
    GvdShareMatrix out;
    out.horizon = horizon;
    out.values = nu.array().colwise() / nu.rowwise().sum().array();
    return out;
}

GvdShareMatrix gvd_shares(const VarModel& model, int horizon) {
    return gvd_shares(model.coefficients, model.residual_covariance, horizon);
}

DissimilarityMatrix gvdd(const GvdShareMatrix& shares, std::vector<std::string> labels,
                         std::size_t window_index, Date window_end_date) {
    const Eigen::Index n = shares.values.rows();
    Eigen::MatrixXd h(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            h(i, j) = i == j ? 0.0 : std::sqrt(2.0 * std::max(0.0, 1.0 - shares.values(i, j)));
    return DissimilarityMatrix{Measure::GVDD, std::move(labels), std::move(h), window_index,
                               window_end_date};
}

DissimilarityMatrix gvdd(const WindowView& window, const GvddOptions& options) {
    const auto data = window.data();
    const double lambda = options.ridge_lambda ? *options.ridge_lambda : auto_ridge_lambda(data);
    const auto model = fit_var(data, options.lag_order, lambda);
    return gvdd(gvd_shares(model, options.horizon), window.tickers(), window.index(),
                window.end_date());
}

}  // namespace netmon
