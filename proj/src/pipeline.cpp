#include "netmon/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <map>
#include <sstream>

#include <fmt/core.h>
#include <json.hpp>

#include "netmon/error.hpp"
#include "netmon/output.hpp"
#include "netmon/parallel.hpp"
#include "netmon/simulate.hpp"

namespace netmon {

namespace {

constexpr const char* kModule = "pipeline";

using Json = nlohmann::ordered_json;

std::string lower(Measure m) { return m == Measure::PCCD ? "pccd" : "gvdd"; }

std::string join(const std::vector<std::string>& v, char sep) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += sep;
        out += v[i];
    }
    return out;
}

std::vector<Date> end_dates(const std::vector<DissimilarityMatrix>& matrices) {
    std::vector<Date> out;
    for (const auto& m : matrices) out.push_back(m.window_end_date);
    return out;
}

Json table_json(const CoefficientTable& t, Eigen::Index row, Eigen::Index col) {
    Json j;
    j["estimate"] = round15(t.estimate(row, col));
    j["std_error"] = round15(t.std_error(row, col));
    j["t_stat"] = round15(t.t_stat(row, col));
    j["p_value"] = round15(t.p_value(row, col));
    j["code"] = significance_code(t.p_value(row, col));
    return j;
}

Json varfit_json(const VarFitOutcome& outcome) {
    const auto& r = outcome.report;
    const auto n = static_cast<Eigen::Index>(r.names.size());
    Json j;
    j["lag_order"] = r.lag_order;
    j["names"] = r.names;
    j["n_obs"] = r.n_obs;
    j["dof"] = r.dof;
    Json intercept = Json::array();
    for (Eigen::Index i = 0; i < n; ++i) {
        Json e = table_json(r.intercept, i, 0);
        e["equation"] = r.names[static_cast<std::size_t>(i)];
        intercept.push_back(std::move(e));
    }
    j["intercept"] = std::move(intercept);
    Json lags = Json::array();
    for (std::size_t lag = 0; lag < r.lags.size(); ++lag) {
        Json coefs = Json::array();
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index k = 0; k < n; ++k) {
                Json e;
                e["equation"] = r.names[static_cast<std::size_t>(i)];
                e["regressor"] = r.names[static_cast<std::size_t>(k)];
                e.update(table_json(r.lags[lag], i, k));
                coefs.push_back(std::move(e));
            }
        lags.push_back(Json{{"lag", lag + 1}, {"coefficients", std::move(coefs)}});
    }
    j["lags"] = std::move(lags);
    Json sigma = Json::array();
    for (Eigen::Index i = 0; i < n; ++i) {
        Json row = Json::array();
        for (Eigen::Index k = 0; k < n; ++k) row.push_back(round15(r.residual_covariance(i, k)));
        sigma.push_back(std::move(row));
    }
    j["residual_covariance"] = std::move(sigma);
    if (outcome.selection) {
        Json hq = Json::array();
        for (const auto& [p, v] : outcome.selection->criterion)
            hq.push_back(Json{{"lag", p}, {"hq", round15(v)}});
        j["hq"] = std::move(hq);
        j["selected_order"] = outcome.selection->order;
    }
    return j;
}

std::string chart_csv(const DistanceSeries& s, const ControlChartReport& c) {
    std::string out = "date,value,mean,threshold,alarm\n";
    for (std::size_t i = 0; i < s.values.size(); ++i)
        out += fmt::format("{},{},{},{},{}\n", format_date(s.timestamps[i]), format_number(s.values[i]),
                           format_number(c.mean), format_number(c.threshold),
                           s.values[i] > c.threshold ? 1 : 0);
    return out;
}

std::string series_csv(const DistanceSeries& s) {
    std::string out = "date,distance\n";
    for (std::size_t i = 0; i < s.values.size(); ++i)
        out += fmt::format("{},{}\n", format_date(s.timestamps[i]), format_number(s.values[i]));
    return out;
}

std::string returns_csv(const PreparedData& data) {
    std::vector<std::string> names = data.returns.tickers();
    if (data.index) names.push_back(data.index->tickers().front());
    std::string out = "Date," + join(names, ',') + '\n';
    for (Eigen::Index r = 0; r < data.returns.rows(); ++r) {
        out += format_date(data.returns.dates()[static_cast<std::size_t>(r)]);
        for (Eigen::Index c = 0; c < data.returns.cols(); ++c)
            out += "," + format_number(data.returns.returns()(r, c));
        if (data.index) out += "," + format_number(data.index->returns()(r, 0));
        out += '\n';
    }
    return out;
}

class ArtifactWriter {
public:
    explicit ArtifactWriter(std::filesystem::path root) : root_(std::move(root)) {}

    void write(const std::filesystem::path& rel, const std::string& content) {
        write_text_file(root_ / rel, content);
        artifacts_.push_back(rel);
    }

    const std::vector<std::filesystem::path>& artifacts() const { return artifacts_; }
    const std::filesystem::path& root() const { return root_; }

private:
    std::filesystem::path root_;
    std::vector<std::filesystem::path> artifacts_;
};

std::string utc_now() {
    const auto now = std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
    const auto day = std::chrono::floor<std::chrono::days>(now);
    const std::chrono::hh_mm_ss hms{now - day};
    return fmt::format("{}T{:02d}:{:02d}:{:02d}Z", format_date(Date{day}), hms.hours().count(),
                       hms.minutes().count(), hms.seconds().count());
}

void write_manifest(ArtifactWriter& w, const PipelineConfig& config, Stage stage) {
    Json m;
    m["tool"] = "netmon";
    m["command"] = to_string(stage);
    m["created_at"] = utc_now();
    Json cfg = Json::object();
    std::istringstream lines(to_config_text(config));
    for (std::string line; std::getline(lines, line);) {
        const auto eq = line.find('=');
        cfg[line.substr(0, eq)] = line.substr(eq + 1);
    }
    m["config"] = std::move(cfg);
    if (stage != Stage::Simulate && !config.input.empty())
        m["input"] = Json{{"path", config.input.string()}, {"sha256", sha256_file(config.input)}};
    Json list = Json::array();
    for (const auto& a : w.artifacts()) list.push_back(a.generic_string());
    m["artifacts"] = std::move(list);
    write_text_file(w.root() / "manifest.json", m.dump(2) + "\n");
}

}  // namespace

std::string to_string(Stage s) {
    switch (s) {
        case Stage::Simulate: return "simulate";
        case Stage::Returns: return "returns";
        case Stage::Dissim: return "dissim";
        case Stage::Center: return "center";
        case Stage::Cluster: return "cluster";
        case Stage::TreeDist: return "treedist";
        case Stage::Monitor: return "monitor";
        default: return "run";
    }
}

PreparedData prepare_data(const PipelineConfig& config) {
    if (config.input.empty()) throw UsageError(kModule, "--input is required");
    LoadOptions options;
    options.drop_incomplete_rows = config.drop_incomplete_rows;
    if (!config.tickers.empty()) {
        auto filter = config.tickers;
        if (!config.index_ticker.empty() &&
            std::find(filter.begin(), filter.end(), config.index_ticker) == filter.end())
            filter.push_back(config.index_ticker);
        options.ticker_filter = std::move(filter);
    }
    const PricePanel prices = load_prices(config.input, options);

    std::vector<std::string> network;
    for (const auto& t : prices.tickers)
        if (t != config.index_ticker) network.push_back(t);
    if (!config.index_ticker.empty() && network.size() == prices.tickers.size())
        throw DataError("ingest", "index ticker " + config.index_ticker + " not found in input");
    if (network.size() < 2) throw DataError("ingest", "at least two network tickers are required");

    PricePanel net_prices = select_columns(prices, network);
    ReturnPanel returns = log_returns(net_prices);
    std::optional<ReturnPanel> index;
    if (!config.index_ticker.empty()) {
        const PricePanel idx = select_columns(prices, {config.index_ticker});
        const Eigen::MatrixXd logp = idx.prices.array().log().matrix();
        index.emplace(returns.dates(), idx.tickers,
                      Eigen::MatrixXd(logp.bottomRows(logp.rows() - 1) - logp.topRows(logp.rows() - 1)));
    }
    auto windows = rolling_windows(returns, static_cast<std::size_t>(config.window),
                                   static_cast<std::size_t>(config.step));
    return PreparedData{std::move(returns), std::move(index), std::move(windows)};
}

std::vector<DissimilarityMatrix> compute_dissimilarities(const std::vector<WindowView>& windows,
                                                         Measure measure,
                                                         const PipelineConfig& config) {
    std::vector<DissimilarityMatrix> out(windows.size());
    const GvddOptions options{config.var_lag, config.horizon, ridge_lambda(config)};
    parallel_for(windows.size(), resolve_threads(config.threads), [&](std::size_t i) {
        try {
            out[i] = measure == Measure::PCCD ? pccd(windows[i]) : gvdd(windows[i], options);
        } catch (const Error& e) {
            throw NumericalError(e.module(), fmt::format("window {} ending {}: {}", i,
                                                         format_date(windows[i].end_date()),
                                                         e.what()));
        }
    });
    return out;
}

Dendrogram cluster_window(const DissimilarityMatrix& d) {
    return single_linkage(symmetrize_max(d.values), d.labels);
}

MonitoringSeries monitoring_series(const std::vector<DistanceSeries>& distances,
                                   const std::optional<ReturnPanel>& index) {
    if (distances.empty()) throw DataError("monitor", "no distance series to monitor");
    MonitoringSeries out;
    out.timestamps = distances.front().timestamps;
    const auto rows = static_cast<Eigen::Index>(out.timestamps.size());
    const auto cols = static_cast<Eigen::Index>(distances.size() + (index ? 1 : 0));
    out.values.resize(rows, cols);
    for (std::size_t c = 0; c < distances.size(); ++c) {
        if (distances[c].timestamps != out.timestamps)
            throw DataError("monitor", "distance series are not aligned in time");
        out.names.push_back(distances[c].label);
        for (Eigen::Index r = 0; r < rows; ++r)
            out.values(r, static_cast<Eigen::Index>(c)) = distances[c].values[static_cast<std::size_t>(r)];
    }
    if (index) {
        out.names.push_back(index->tickers().front());
        const auto& dates = index->dates();
        for (Eigen::Index r = 0; r < rows; ++r) {
            auto it = std::lower_bound(dates.begin(), dates.end(), out.timestamps[static_cast<std::size_t>(r)]);
            if (it == dates.end() || *it != out.timestamps[static_cast<std::size_t>(r)])
                throw DataError("monitor", "index return missing for " +
                                               format_date(out.timestamps[static_cast<std::size_t>(r)]));
            out.values(r, cols - 1) = index->returns()(it - dates.begin(), 0);
        }
    }
    return out;
}

VarFitOutcome fit_monitoring_var(const MonitoringSeries& series, const PipelineConfig& config) {
    VarFitOutcome outcome;
    int lag = config.monitor_lag;
    if (lag == 0) {
        outcome.selection = hq_order_select(series.values, config.monitor_pmax);
        lag = outcome.selection->order;
    }
    outcome.report = fit_var_report(series.values, series.names, lag);
    if (outcome.selection) outcome.report.hq_values = outcome.selection->criterion;
    return outcome;
}

std::string trees_file_text(const std::vector<Dendrogram>& trees, const std::vector<Date>& dates) {
    std::string out;
    for (std::size_t i = 0; i < trees.size(); ++i)
        out += "[" + format_date(dates[i]) + "]" + to_newick(trees[i]) + "\n";
    return out;
}

std::vector<DatedTree> read_trees_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("treedist", "cannot open " + path.string());
    std::vector<DatedTree> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto open = line.find('[');
        const auto close = line.find(']');
        if (open != line.find_first_not_of(" \t") || close == std::string::npos)
            throw DataError("treedist", fmt::format("line {}: expected a [YYYY-MM-DD] prefix", line_no));
        auto date = parse_date(line.substr(open + 1, close - open - 1));
        if (!date) throw DataError("treedist", fmt::format("line {}: malformed date", line_no));
        try {
            out.push_back({*date, parse_newick(std::string_view(line).substr(close + 1))});
        } catch (const Error& e) {
            throw DataError("treedist", fmt::format("line {}: {}", line_no, e.what()));
        }
    }
    return out;
}

RunSummary run_stage(const PipelineConfig& config, Stage stage) {
    validate(config);
    ArtifactWriter w(config.out);

    if (stage == Stage::Simulate) {
        SimulationSpec spec;
        spec.seed = config.seed;
        spec.assets = config.sim_assets;
        spec.days = config.sim_days;
        spec.loading = config.sim_factor;
        spec.index_ticker = config.sim_index;
        spec.start = *parse_date(config.sim_start);
        w.write("prices.csv", to_csv(simulate_prices(spec)));
        write_manifest(w, config, stage);
        auto artifacts = w.artifacts();
        artifacts.emplace_back("manifest.json");
        return RunSummary{artifacts};
    }

    const bool from_tree_file = stage == Stage::TreeDist && !config.trees.empty();
    std::optional<PreparedData> data;
    if (!from_tree_file) data = prepare_data(config);

    if (stage == Stage::Returns || stage == Stage::Run) w.write("returns.csv", returns_csv(*data));

    const bool want_centers = stage == Stage::Center || stage == Stage::Run;
    const bool want_trees = stage == Stage::Cluster || stage == Stage::TreeDist ||
                            stage == Stage::Monitor || stage == Stage::Run;
    const bool want_series = stage == Stage::TreeDist || stage == Stage::Monitor || stage == Stage::Run;
    const bool want_chart = stage == Stage::Monitor || stage == Stage::Run;
    const unsigned threads = resolve_threads(config.threads);

    std::vector<MeasureResult> results;
    if (from_tree_file) {
        auto dated = read_trees_file(config.trees);
        MeasureResult r;
        std::vector<Date> dates;
        for (auto& t : dated) {
            dates.push_back(t.date);
            r.trees.push_back(std::move(t.tree));
        }
        r.distances = tree_distance_series(r.trees, dates, config.metric, config.trees.stem().string());
        w.write(fmt::format("treedist_{}_{}.csv", config.trees.stem().string(), to_string(config.metric)),
                series_csv(*r.distances));
    } else if (stage != Stage::Returns) {
        for (Measure measure : selected_measures(config.measure)) {
            MeasureResult r;
            r.measure = measure;
            r.matrices = compute_dissimilarities(data->windows, measure, config);
            const auto dates = end_dates(r.matrices);
            const auto tag = lower(measure);

            if (stage == Stage::Dissim || config.dump_matrices)
                for (const auto& m : r.matrices)
                    w.write(fmt::format("dissim/{}_{}.csv", tag, format_date(m.window_end_date)),
                            matrix_csv(m.labels, m.values));

            if (want_centers) {
                r.centers.resize(r.matrices.size());
                parallel_for(r.matrices.size(), threads, [&](std::size_t i) {
                    r.centers[i] = center(shortest_path_matrix(to_graph(r.matrices[i]), config.ecc));
                });
                r.center_counts = center_frequency(r.centers);
                std::string per_window = "window_end_date,center_tickers\n";
                for (std::size_t i = 0; i < r.centers.size(); ++i)
                    per_window += format_date(dates[i]) + "," + join(r.centers[i], ';') + "\n";
                w.write(fmt::format("centers_{}.csv", tag), per_window);
                std::string counts = "ticker,count\n";
                for (const auto& c : r.center_counts) counts += fmt::format("{},{}\n", c.ticker, c.count);
                w.write(fmt::format("center_counts_{}.csv", tag), counts);
            }

            if (want_trees) {
                r.trees.resize(r.matrices.size());
                parallel_for(r.matrices.size(), threads,
                             [&](std::size_t i) { r.trees[i] = cluster_window(r.matrices[i]); });
                if (stage == Stage::Cluster || stage == Stage::Run) {
                    w.write(fmt::format("trees_{}.nwk", tag), trees_file_text(r.trees, dates));
                    if (config.per_window_trees)
                        for (std::size_t i = 0; i < r.trees.size(); ++i)
                            w.write(fmt::format("trees/tree_{}_{}.nwk", format_date(dates[i]), tag),
                                    to_newick(r.trees[i]) + "\n");
                }
            }

            if (want_series) {
                r.distances = tree_distance_series(r.trees, dates, config.metric, to_string(measure));
                if (stage != Stage::Monitor)
                    w.write(fmt::format("treedist_{}_{}.csv", tag, to_string(config.metric)),
                            series_csv(*r.distances));
            }

            if (want_chart) {
                std::optional<DateRange> baseline;
                if (!config.baseline.empty()) baseline = parse_date_range(config.baseline);
                r.chart = shewhart(*r.distances, config.chart_k, config.threshold_mode, baseline);
                w.write(fmt::format("chart_{}.csv", to_string(measure)), chart_csv(*r.distances, *r.chart));
            }
            results.push_back(std::move(r));
        }
    }

    if (want_chart) {
        std::vector<DistanceSeries> series;
        for (const auto& r : results) series.push_back(*r.distances);
        const auto outcome = fit_monitoring_var(monitoring_series(series, data->index), config);
        w.write("varfit.json", varfit_json(outcome).dump(2) + "\n");
    }

    write_manifest(w, config, stage);
    auto artifacts = w.artifacts();
    artifacts.emplace_back("manifest.json");
    return RunSummary{artifacts};
}

}  // namespace netmon
