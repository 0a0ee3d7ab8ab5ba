#include "netmon/simulate.hpp"

#include <cmath>
#include <random>

#include <fmt/core.h>

#include "netmon/error.hpp"

namespace netmon {

namespace {

Date next_weekday(Date d) {
    std::chrono::sys_days day{d};
    do {
        day += std::chrono::days{1};
    } while (std::chrono::weekday{day} == std::chrono::Saturday ||
             std::chrono::weekday{day} == std::chrono::Sunday);
    return Date{day};
}

}  // namespace

double implied_correlation(const SimulationSpec& spec) {
    const double common = spec.loading * spec.loading * spec.factor_sd * spec.factor_sd;
    return common / (common + spec.idio_sd * spec.idio_sd);
}

PricePanel simulate_prices(const SimulationSpec& spec) {
    if (spec.assets < 2 || spec.days < 2)
        throw UsageError("simulate", "need at least 2 assets and 2 days");
    if (!(spec.loading >= 0.0 && spec.loading < 1.0))
        throw UsageError("simulate", "factor loading must lie in [0, 1)");

    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> normal(0.0, 1.0);

    const bool with_index = !spec.index_ticker.empty();
    const Eigen::Index n = spec.assets;
    const Eigen::Index cols = n + (with_index ? 1 : 0);
    PricePanel panel;
    for (Eigen::Index i = 0; i < n; ++i) panel.tickers.push_back(fmt::format("S{:02d}", i + 1));
    if (with_index) panel.tickers.push_back(spec.index_ticker);
    panel.prices.resize(spec.days, cols);
    panel.prices.row(0).setConstant(100.0);

    Date date = spec.start;
    const auto start_wd = std::chrono::weekday{std::chrono::sys_days{date}};
    if (start_wd == std::chrono::Saturday || start_wd == std::chrono::Sunday) date = next_weekday(date);
    panel.dates.push_back(date);

    Eigen::VectorXd log_price = Eigen::VectorXd::Constant(cols, std::log(100.0));
    for (int t = 1; t < spec.days; ++t) {
        const double f = spec.factor_sd * normal(rng);
        double mean_return = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double r = spec.loading * f + spec.idio_sd * normal(rng);
            log_price(i) += r;
            mean_return += r;
        }
        if (with_index) log_price(n) += mean_return / static_cast<double>(n);
        panel.prices.row(t) = log_price.array().exp().matrix().transpose();
        date = next_weekday(date);
        panel.dates.push_back(date);
    }
    return panel;
}

std::string to_csv(const PricePanel& panel) {
    std::string out = "Date";
    for (const auto& t : panel.tickers) out += "," + t;
    out += '\n';
    for (Eigen::Index r = 0; r < panel.rows(); ++r) {
        out += format_date(panel.dates[static_cast<std::size_t>(r)]);
        for (Eigen::Index c = 0; c < panel.cols(); ++c) out += fmt::format(",{:.15g}", panel.prices(r, c));
        out += '\n';
    }
    return out;
}

}  // namespace netmon
