#include "netmon/monitor.hpp"

#include <cmath>
#include <numeric>

#include <boost/math/distributions/students_t.hpp>
#include <fmt/core.h>

#include "netmon/error.hpp"

namespace netmon {

namespace {

constexpr const char* kModule = "monitor";

struct OlsFit {
    Eigen::MatrixXd beta;  // (1 + n*p) x n, row 0 = intercept
    Eigen::MatrixXd resid;
    Eigen::MatrixXd xtx_inv;
};

// Regress rows [first_row, T) of `series` on an intercept and p lags.
OlsFit ols_with_intercept(const Eigen::Ref<const Eigen::MatrixXd>& series, int p,
                          Eigen::Index first_row, bool need_inverse) {
    const Eigen::Index n = series.cols();
    const Eigen::Index t_eff = series.rows() - first_row;
    Eigen::MatrixXd x(t_eff, 1 + n * p);
    x.col(0).setOnes();
    for (int j = 1; j <= p; ++j) x.middleCols(1 + (j - 1) * n, n) = series.middleRows(first_row - j, t_eff);
    const Eigen::MatrixXd y = series.bottomRows(t_eff);

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
    if (qr.rank() < x.cols()) throw NumericalError(kModule, "singular VAR design matrix");
    OlsFit fit;
    fit.beta = qr.solve(y);
    fit.resid = y - x * fit.beta;
    if (need_inverse) {
        const Eigen::MatrixXd xtx = x.transpose() * x;
        fit.xtx_inv = xtx.ldlt().solve(Eigen::MatrixXd::Identity(x.cols(), x.cols()));
    }
    return fit;
}

}  // namespace

ControlChartReport shewhart(const DistanceSeries& series, double k, ThresholdMode mode,
                            const std::optional<DateRange>& baseline) {
    if (!(k > 0.0)) throw UsageError(kModule, "control chart multiplier k must be positive");
    if (series.values.size() != series.timestamps.size())
        throw DataError(kModule, "series timestamps and values differ in length");

    std::vector<double> base;
    for (std::size_t i = 0; i < series.values.size(); ++i)
        if (!baseline || baseline->contains(series.timestamps[i])) base.push_back(series.values[i]);
    if (base.size() < 2)
        throw DataError(kModule, "control chart needs at least two baseline observations");

    ControlChartReport report;
    report.k = k;
    report.mode = mode;
    const double nb = static_cast<double>(base.size());
    report.mean = std::accumulate(base.begin(), base.end(), 0.0) / nb;
    double ss = 0.0;
    for (double v : base) ss += (v - report.mean) * (v - report.mean);
    report.sd = std::sqrt(ss / (nb - 1.0));
    report.threshold = (mode == ThresholdMode::MeanPlusKSd ? report.mean : 0.0) + k * report.sd;
    for (std::size_t i = 0; i < series.values.size(); ++i)
        if (series.values[i] > report.threshold)
            report.alarms.push_back({series.timestamps[i], series.values[i]});
    report.alarm_count = report.alarms.size();
    return report;
}

std::string significance_code(double p) {
    if (p <= 0.001) return "***";
    if (p <= 0.01) return "**";
    if (p <= 0.05) return "*";
    if (p <= 0.1) return ".";
    return "";
}

HqSelection hq_order_select(const Eigen::Ref<const Eigen::MatrixXd>& series, int p_max) {
    if (p_max < 1) throw UsageError(kModule, "p_max must be at least 1");
    const Eigen::Index n = series.cols();
    const Eigen::Index t = series.rows();
    if (t <= p_max * n + p_max)
        throw DataError(kModule, fmt::format("{} observations are too few for p_max = {} with {} series",
                                             t, p_max, n));
    const Eigen::Index t_eff = t - p_max;
    const double te = static_cast<double>(t_eff);
    HqSelection sel;
    double best = 0.0;
    for (int p = 1; p <= p_max; ++p) {
        const auto fit = ols_with_intercept(series, p, p_max, false);
        const Eigen::MatrixXd sigma = fit.resid.transpose() * fit.resid / te;
        const double det = sigma.determinant();
        if (!(det > 0.0)) throw NumericalError(kModule, "residual covariance is not positive definite");
        const double hq = std::log(det) + 2.0 * std::log(std::log(te)) / te *
                                              static_cast<double>(p * n * n);
        sel.criterion[p] = hq;
        if (p == 1 || hq < best) {
            best = hq;
            sel.order = p;
        }
    }
    return sel;
}

VarFitReport fit_var_report(const Eigen::Ref<const Eigen::MatrixXd>& series,
                            std::vector<std::string> names, int lag_order) {
    if (lag_order < 1) throw UsageError(kModule, "VAR lag order must be at least 1");
    const Eigen::Index n = series.cols();
    const Eigen::Index p = lag_order;
    if (static_cast<Eigen::Index>(names.size()) != n)
        throw DataError(kModule, "one name per series is required");
    const Eigen::Index t_eff = series.rows() - p;
    const Eigen::Index dof = t_eff - n * p - 1;
    if (dof < 1)
        throw DataError(kModule, fmt::format("insufficient observations ({}) for a VAR({}) in {} series",
                                             series.rows(), p, n));
    const auto fit = ols_with_intercept(series, lag_order, p, true);

    VarFitReport report;
    report.lag_order = lag_order;
    report.names = std::move(names);
    report.n_obs = t_eff;
    report.dof = dof;
    report.residual_covariance = fit.resid.transpose() * fit.resid / static_cast<double>(dof);
    report.residual_covariance =
        0.5 * (report.residual_covariance + report.residual_covariance.transpose()).eval();

    const boost::math::students_t dist(static_cast<double>(dof));
    const Eigen::Index k = 1 + n * p;
    Eigen::MatrixXd est(n, k), se(n, k), tstat(n, k), pval(n, k);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double s2 = fit.resid.col(i).squaredNorm() / static_cast<double>(dof);
        for (Eigen::Index c = 0; c < k; ++c) {
            est(i, c) = fit.beta(c, i);
            se(i, c) = std::sqrt(s2 * fit.xtx_inv(c, c));
            tstat(i, c) = se(i, c) > 0.0 ? est(i, c) / se(i, c) : 0.0;
            pval(i, c) = se(i, c) > 0.0
                             ? 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(tstat(i, c))))
                             : 1.0;
        }
    }
    auto slice = [&](Eigen::Index first, Eigen::Index cols) {
        return CoefficientTable{est.middleCols(first, cols), se.middleCols(first, cols),
                                tstat.middleCols(first, cols), pval.middleCols(first, cols)};
    };
    report.intercept = slice(0, 1);
    for (Eigen::Index j = 0; j < p; ++j) report.lags.push_back(slice(1 + j * n, n));
    return report;
}

}  // namespace netmon
