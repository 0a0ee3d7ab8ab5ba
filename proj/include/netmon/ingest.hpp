#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "netmon/date.hpp"

namespace netmon {

// Adjusted closing prices, one row per trading day, one column per ticker.
struct PricePanel {
    std::vector<Date> dates;
    std::vector<std::string> tickers;
    Eigen::MatrixXd prices;  // T x N

    Eigen::Index rows() const { return prices.rows(); }
    Eigen::Index cols() const { return prices.cols(); }
};

// Throws DataError if any PricePanel invariant is violated.
void validate(const PricePanel& panel);

struct LoadOptions {
    std::optional<std::vector<std::string>> ticker_filter;
    bool drop_incomplete_rows = false;
};

PricePanel load_prices(const std::filesystem::path& path, const LoadOptions& options = {});

// Restricts the panel to the given tickers, in the given order.
PricePanel select_columns(const PricePanel& panel, const std::vector<std::string>& tickers);

// Log returns. Storage is shared between copies and with every WindowView cut from it.
class ReturnPanel {
public:
    ReturnPanel(std::vector<Date> dates, std::vector<std::string> tickers, Eigen::MatrixXd returns);

    const std::vector<Date>& dates() const { return *dates_; }
    const std::vector<std::string>& tickers() const { return *tickers_; }
    const Eigen::MatrixXd& returns() const { return *returns_; }
    Eigen::Index rows() const { return returns_->rows(); }
    Eigen::Index cols() const { return returns_->cols(); }

    // Column by ticker name; throws DataError if absent.
    Eigen::VectorXd column(const std::string& ticker) const;

private:
    friend class WindowView;
    std::shared_ptr<const std::vector<Date>> dates_;
    std::shared_ptr<const std::vector<std::string>> tickers_;
    std::shared_ptr<const Eigen::MatrixXd> returns_;
};

ReturnPanel log_returns(const PricePanel& panel);

class WindowView {
public:
    using Block = Eigen::Block<const Eigen::MatrixXd, Eigen::Dynamic, Eigen::Dynamic>;

    WindowView(const ReturnPanel& panel, std::size_t index, Eigen::Index first_row,
               Eigen::Index length);

    std::size_t index() const { return index_; }
    Eigen::Index first_row() const { return first_row_; }
    Eigen::Index length() const { return length_; }
    Date start_date() const { return (*dates_)[static_cast<std::size_t>(first_row_)]; }
    Date end_date() const { return (*dates_)[static_cast<std::size_t>(first_row_ + length_ - 1)]; }
    const std::vector<std::string>& tickers() const { return *tickers_; }
    Block data() const { return storage_->middleRows(first_row_, length_); }

private:
    std::size_t index_;
    Eigen::Index first_row_;
    Eigen::Index length_;
    std::shared_ptr<const std::vector<Date>> dates_;
    std::shared_ptr<const std::vector<std::string>> tickers_;
    std::shared_ptr<const Eigen::MatrixXd> storage_;
};

std::vector<WindowView> rolling_windows(const ReturnPanel& panel, std::size_t window_len,
                                        std::size_t step = 1);

}  // namespace netmon
