#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "netmon/date.hpp"
#include "netmon/treedist.hpp"

namespace netmon {

// MeanPlusKSd: alarm line at mean + k*sd. KSd: alarm line at k*sd.
enum class ThresholdMode { MeanPlusKSd, KSd };

struct Alarm {
    Date timestamp;
    double value = 0.0;
};

struct ControlChartReport {
    double mean = 0.0;
    double sd = 0.0;  // sample SD, denominator n-1
    double k = 5.0;
    double threshold = 0.0;
    ThresholdMode mode = ThresholdMode::MeanPlusKSd;
    std::vector<Alarm> alarms;
    std::size_t alarm_count = 0;
};

/// Shewhart chart over a distance series. Mean and SD come from the whole series, or from
/// the points inside `baseline` when given; alarms are points strictly above the threshold.
ControlChartReport shewhart(const DistanceSeries& series, double k,
                            ThresholdMode mode = ThresholdMode::MeanPlusKSd,
                            const std::optional<DateRange>& baseline = std::nullopt);

// "***" <= 0.001, "**" <= 0.01, "*" <= 0.05, "." <= 0.1, otherwise "".
std::string significance_code(double p_value);

struct CoefficientTable {
    Eigen::MatrixXd estimate;
    Eigen::MatrixXd std_error;
    Eigen::MatrixXd t_stat;
    Eigen::MatrixXd p_value;
};

struct HqSelection {
    int order = 1;
    std::map<int, double> criterion;
};

/// Hannan-Quinn lag selection for a VAR with intercept. Every candidate 1..p_max is fitted on
/// the same sample (the first p_max rows are presample) and scored as
/// ln det(Sigma_ML) + 2 ln ln(T) / T * p * n^2. Ties go to the smaller order.
HqSelection hq_order_select(const Eigen::Ref<const Eigen::MatrixXd>& series, int p_max);

struct VarFitReport {
    int lag_order = 0;
    std::vector<std::string> names;
    CoefficientTable intercept;          // n x 1
    std::vector<CoefficientTable> lags;  // p tables, n x n, row = equation
    Eigen::MatrixXd residual_covariance;
    Eigen::Index n_obs = 0;
    Eigen::Index dof = 0;
    std::map<int, double> hq_values;
};

// Per-equation OLS with intercept; t-based two-sided p-values on n_obs - n*p - 1 dof.
VarFitReport fit_var_report(const Eigen::Ref<const Eigen::MatrixXd>& series,
                            std::vector<std::string> names, int lag_order);

}  // namespace netmon
