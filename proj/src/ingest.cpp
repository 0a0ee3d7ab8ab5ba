#include "netmon/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

#include <fmt/core.h>

#include "netmon/error.hpp"

namespace netmon {

namespace {

constexpr const char* kModule = "ingest";

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_csv_line(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        auto comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            cells.push_back(trim(line.substr(start)));
            break;
        }
        cells.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
    return cells;
}

std::optional<double> parse_number(std::string_view s) {
    if (s.empty()) return std::nullopt;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

}  // namespace

void validate(const PricePanel& panel) {
    const auto t = static_cast<Eigen::Index>(panel.dates.size());
    const auto n = static_cast<Eigen::Index>(panel.tickers.size());
    if (n < 2) throw DataError(kModule, "at least two tickers are required");
    if (panel.prices.rows() != t || panel.prices.cols() != n)
        throw DataError(kModule, fmt::format("price matrix is {}x{}, expected {}x{}",
                                             panel.prices.rows(), panel.prices.cols(), t, n));
    std::set<std::string> seen;
    for (const auto& tk : panel.tickers)
        if (!seen.insert(tk).second) throw DataError(kModule, "duplicate ticker " + tk);
    for (std::size_t i = 1; i < panel.dates.size(); ++i)
        if (!(panel.dates[i - 1] < panel.dates[i]))
            throw DataError(kModule, "dates not strictly increasing at " +
                                         format_date(panel.dates[i]));
    for (Eigen::Index r = 0; r < t; ++r)
        for (Eigen::Index c = 0; c < n; ++c) {
            double p = panel.prices(r, c);
            if (!std::isfinite(p) || p <= 0.0)
                throw DataError(kModule, fmt::format("nonpositive price at ({},{})", r + 1,
                                                     panel.tickers[static_cast<std::size_t>(c)]));
        }
}

PricePanel load_prices(const std::filesystem::path& path, const LoadOptions& options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError(kModule, "cannot open " + path.string());

    std::string line;
    if (!std::getline(in, line)) throw DataError(kModule, "empty file " + path.string());
    if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);

    auto header = split_csv_line(line);
    if (header.empty() || header[0] != "Date")
        throw DataError(kModule, "first header cell must be 'Date'");
    std::vector<std::string> all_tickers(header.begin() + 1, header.end());
    {
        std::set<std::string> seen;
        for (const auto& tk : all_tickers) {
            if (tk.empty()) throw DataError(kModule, "empty ticker name in header");
            if (!seen.insert(tk).second) throw DataError(kModule, "duplicate ticker " + tk);
        }
    }

    std::vector<std::size_t> columns;  // indices into all_tickers
    if (options.ticker_filter) {
        for (const auto& want : *options.ticker_filter) {
            auto it = std::find(all_tickers.begin(), all_tickers.end(), want);
            if (it == all_tickers.end())
                throw DataError(kModule, "requested ticker " + want + " not in " + path.string());
            columns.push_back(static_cast<std::size_t>(it - all_tickers.begin()));
        }
    } else {
        columns.resize(all_tickers.size());
        std::iota(columns.begin(), columns.end(), std::size_t{0});
    }

    struct Row {
        Date date;
        std::vector<double> values;
    };
    std::vector<Row> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto cells = split_csv_line(line);
        if (cells.size() != header.size())
            throw DataError(kModule, fmt::format("line {}: expected {} cells, found {}", line_no,
                                                 header.size(), cells.size()));
        auto date = parse_date(cells[0]);
        if (!date)
            throw DataError(kModule, fmt::format("malformed cell at (line {}, column Date): '{}'",
                                                 line_no, cells[0]));
        Row row{*date, {}};
        row.values.reserve(columns.size());
        bool complete = true;
        for (auto c : columns) {
            auto v = parse_number(cells[c + 1]);
            if (!v) {
                if (options.drop_incomplete_rows) {
                    complete = false;
                    break;
                }
                throw DataError(kModule,
                                fmt::format("malformed cell at (line {}, column {}): '{}'",
                                            line_no, all_tickers[c], cells[c + 1]));
            }
            row.values.push_back(*v);
        }
        if (complete) rows.push_back(std::move(row));
    }

    std::stable_sort(rows.begin(), rows.end(),
                     [](const Row& a, const Row& b) { return a.date < b.date; });
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].date == rows[i - 1].date)
            throw DataError(kModule, "duplicate date " + format_date(rows[i].date));

    PricePanel panel;
    for (auto c : columns) panel.tickers.push_back(all_tickers[c]);
    panel.prices.resize(static_cast<Eigen::Index>(rows.size()),
                        static_cast<Eigen::Index>(columns.size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        panel.dates.push_back(rows[r].date);
        for (std::size_t c = 0; c < columns.size(); ++c)
            panel.prices(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                rows[r].values[c];
    }
    validate(panel);
    return panel;
}

PricePanel select_columns(const PricePanel& panel, const std::vector<std::string>& tickers) {
    PricePanel out;
    out.dates = panel.dates;
    out.tickers = tickers;
    out.prices.resize(panel.rows(), static_cast<Eigen::Index>(tickers.size()));
    for (std::size_t c = 0; c < tickers.size(); ++c) {
        auto it = std::find(panel.tickers.begin(), panel.tickers.end(), tickers[c]);
        if (it == panel.tickers.end()) throw DataError(kModule, "unknown ticker " + tickers[c]);
        out.prices.col(static_cast<Eigen::Index>(c)) =
            panel.prices.col(static_cast<Eigen::Index>(it - panel.tickers.begin()));
    }
    return out;
}

ReturnPanel::ReturnPanel(std::vector<Date> dates, std::vector<std::string> tickers,
                         Eigen::MatrixXd returns)
    : dates_(std::make_shared<const std::vector<Date>>(std::move(dates))),
      tickers_(std::make_shared<const std::vector<std::string>>(std::move(tickers))),
      returns_(std::make_shared<const Eigen::MatrixXd>(std::move(returns))) {
    if (static_cast<Eigen::Index>(dates_->size()) != returns_->rows() ||
        static_cast<Eigen::Index>(tickers_->size()) != returns_->cols())
        throw DataError(kModule, "return panel shape does not match its labels");
    if (!returns_->allFinite()) throw DataError(kModule, "non-finite log return");
}

Eigen::VectorXd ReturnPanel::column(const std::string& ticker) const {
    auto it = std::find(tickers_->begin(), tickers_->end(), ticker);
    if (it == tickers_->end()) throw DataError(kModule, "unknown ticker " + ticker);
    return returns_->col(static_cast<Eigen::Index>(it - tickers_->begin()));
}

ReturnPanel log_returns(const PricePanel& panel) {
    if (panel.rows() < 2)
        throw DataError(kModule, "log returns need at least two price rows");
    const Eigen::MatrixXd logp = panel.prices.array().log().matrix();
    Eigen::MatrixXd r = logp.bottomRows(panel.rows() - 1) - logp.topRows(panel.rows() - 1);
    return ReturnPanel(std::vector<Date>(panel.dates.begin() + 1, panel.dates.end()),
                       panel.tickers, std::move(r));
}

WindowView::WindowView(const ReturnPanel& panel, std::size_t index, Eigen::Index first_row,
                       Eigen::Index length)
    : index_(index), first_row_(first_row), length_(length), dates_(panel.dates_),
      tickers_(panel.tickers_), storage_(panel.returns_) {
    if (first_row < 0 || length < 1 || first_row + length > panel.rows())
        throw DataError(kModule, "window outside the return panel");
}

std::vector<WindowView> rolling_windows(const ReturnPanel& panel, std::size_t window_len,
                                        std::size_t step) {
    if (window_len < 2) throw UsageError(kModule, "window length must be at least 2");
    if (step < 1) throw UsageError(kModule, "window step must be at least 1");
    const auto rows = static_cast<std::size_t>(panel.rows());
    if (rows < window_len)
        throw DataError(kModule, fmt::format("{} return rows is shorter than the window of {}",
                                             rows, window_len));
    const std::size_t count = (rows - window_len) / step + 1;
    std::vector<WindowView> windows;
    windows.reserve(count);
    for (std::size_t k = 0; k < count; ++k)
        windows.emplace_back(panel, k, static_cast<Eigen::Index>(k * step),
                             static_cast<Eigen::Index>(window_len));
    return windows;
}

}  // namespace netmon
