#include "netmon/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <fmt/core.h>

#include "netmon/error.hpp"

namespace netmon {

namespace {

constexpr const char* kModule = "config";

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <typename T>
T parse_int(const std::string& key, const std::string& v) {
    T out{};
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size())
        throw UsageError(kModule, fmt::format("{}: expected an integer, got '{}'", key, v));
    return out;
}

double parse_double(const std::string& key, const std::string& v) {
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size())
        throw UsageError(kModule, fmt::format("{}: expected a number, got '{}'", key, v));
    return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw UsageError(kModule, fmt::format("{}: expected true or false, got '{}'", key, v));
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::string join(const std::vector<std::string>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i];
    return out;
}

std::string measure_name(MeasureSelection m) {
    switch (m) {
        case MeasureSelection::PCCD: return "pccd";
        case MeasureSelection::GVDD: return "gvdd";
        default: return "both";
    }
}

}  // namespace

std::vector<Measure> selected_measures(MeasureSelection s) {
    switch (s) {
        case MeasureSelection::PCCD: return {Measure::PCCD};
        case MeasureSelection::GVDD: return {Measure::GVDD};
        default: return {Measure::PCCD, Measure::GVDD};
    }
}

void validate(const PipelineConfig& c) {
    auto require = [](bool ok, const std::string& what) {
        if (!ok) throw UsageError(kModule, what);
    };
    require(c.window >= 3, "--window must be at least 3 (PCCD needs 3 observations per window)");
    require(c.step >= 1, "--step must be at least 1");
    require(c.var_lag >= 1, "--var-lag must be at least 1");
    require(c.var_lag < c.window, "--var-lag must be smaller than --window");
    require(c.horizon >= 1, "--horizon must be at least 1");
    require(c.chart_k > 0.0, "--k must be positive");
    require(c.monitor_lag >= 0, "--monitor-lag must be nonnegative (0 selects by Hannan-Quinn)");
    require(c.monitor_pmax >= 1, "--monitor-pmax must be at least 1");
    require(c.threads >= 0, "--threads must be nonnegative");
    require(c.sim_assets >= 2, "--assets must be at least 2");
    require(c.sim_days >= 2, "--days must be at least 2");
    require(c.sim_factor >= 0.0 && c.sim_factor < 1.0, "--factor must lie in [0, 1)");
    require(parse_date(c.sim_start).has_value(), "--start must be a YYYY-MM-DD date");
    require(c.baseline.empty() || parse_date_range(c.baseline).has_value(),
            "--baseline must be YYYY-MM-DD:YYYY-MM-DD");
    ridge_lambda(c);
}

std::optional<double> ridge_lambda(const PipelineConfig& c) {
    if (c.ridge == "off") return 0.0;
    if (c.ridge == "auto") return std::nullopt;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(c.ridge.data(), c.ridge.data() + c.ridge.size(), v);
    if (ec != std::errc{} || ptr != c.ridge.data() + c.ridge.size() || !(v >= 0.0))
        throw UsageError(kModule, "--ridge must be off, auto or a nonnegative number");
    return v;
}

std::string to_config_text(const PipelineConfig& c) {
    std::string out;
    auto put = [&](const char* key, const std::string& value) {
        out += fmt::format("{}={}\n", key, value);
    };
    put("input", c.input.string());
    put("tickers", join(c.tickers));
    put("index-ticker", c.index_ticker);
    put("window", std::to_string(c.window));
    put("step", std::to_string(c.step));
    put("drop-incomplete-rows", c.drop_incomplete_rows ? "true" : "false");
    put("measure", measure_name(c.measure));
    put("var-lag", std::to_string(c.var_lag));
    put("horizon", std::to_string(c.horizon));
    put("ridge", c.ridge);
    put("ecc", c.ecc == EccentricityMode::Out ? "out" : "in");
    put("metric", to_string(c.metric));
    put("dump-matrices", c.dump_matrices ? "true" : "false");
    put("per-window-trees", c.per_window_trees ? "true" : "false");
    put("trees", c.trees.string());
    put("k", fmt::format("{:.17g}", c.chart_k));
    put("threshold-mode", c.threshold_mode == ThresholdMode::MeanPlusKSd ? "mean+ksd" : "ksd");
    put("baseline", c.baseline);
    put("monitor-lag", std::to_string(c.monitor_lag));
    put("monitor-pmax", std::to_string(c.monitor_pmax));
    put("out", c.out.string());
    put("threads", c.threads == 0 ? "auto" : std::to_string(c.threads));
    put("seed", std::to_string(c.seed));
    put("assets", std::to_string(c.sim_assets));
    put("days", std::to_string(c.sim_days));
    put("factor", fmt::format("{:.17g}", c.sim_factor));
    put("sim-index", c.sim_index);
    put("start", c.sim_start);
    return out;
}

void set_config_value(PipelineConfig& c, const std::string& key, const std::string& v) {
    if (key == "input") c.input = v;
    else if (key == "tickers") c.tickers = split_list(v);
    else if (key == "index-ticker") c.index_ticker = v;
    else if (key == "window") c.window = parse_int<int>(key, v);
    else if (key == "step") c.step = parse_int<int>(key, v);
    else if (key == "drop-incomplete-rows") c.drop_incomplete_rows = parse_bool(key, v);
    else if (key == "measure") {
        if (v == "pccd") c.measure = MeasureSelection::PCCD;
        else if (v == "gvdd") c.measure = MeasureSelection::GVDD;
        else if (v == "both") c.measure = MeasureSelection::Both;
        else throw UsageError(kModule, "--measure must be pccd, gvdd or both");
    } else if (key == "var-lag") c.var_lag = parse_int<int>(key, v);
    else if (key == "horizon") c.horizon = parse_int<int>(key, v);
    else if (key == "ridge") c.ridge = v;
    else if (key == "ecc") {
        if (v == "out") c.ecc = EccentricityMode::Out;
        else if (v == "in") c.ecc = EccentricityMode::In;
        else throw UsageError(kModule, "--ecc must be in or out");
    } else if (key == "metric") {
        if (v == "rf") c.metric = TreeMetric::RF;
        else if (v == "cid") c.metric = TreeMetric::CID;
        else throw UsageError(kModule, "--metric must be rf or cid");
    } else if (key == "dump-matrices") c.dump_matrices = parse_bool(key, v);
    else if (key == "per-window-trees") c.per_window_trees = parse_bool(key, v);
    else if (key == "trees") c.trees = v;
    else if (key == "k") c.chart_k = parse_double(key, v);
    else if (key == "threshold-mode") {
        if (v == "mean+ksd") c.threshold_mode = ThresholdMode::MeanPlusKSd;
        else if (v == "ksd") c.threshold_mode = ThresholdMode::KSd;
        else throw UsageError(kModule, "--threshold-mode must be mean+ksd or ksd");
    } else if (key == "baseline") c.baseline = v;
    else if (key == "monitor-lag") c.monitor_lag = parse_int<int>(key, v);
    else if (key == "monitor-pmax") c.monitor_pmax = parse_int<int>(key, v);
    else if (key == "out") c.out = v;
    else if (key == "threads") c.threads = v == "auto" ? 0 : parse_int<int>(key, v);
    else if (key == "seed") c.seed = parse_int<std::uint64_t>(key, v);
    else if (key == "assets") c.sim_assets = parse_int<int>(key, v);
    else if (key == "days") c.sim_days = parse_int<int>(key, v);
    else if (key == "factor") c.sim_factor = parse_double(key, v);
    else if (key == "sim-index") c.sim_index = v;
    else if (key == "start") c.sim_start = v;
    else throw UsageError(kModule, "unknown config key '" + key + "'");
}

void apply_config_text(PipelineConfig& config, const std::string& text) {
    std::stringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError(kModule, fmt::format("line {}: expected key=value", line_no));
        set_config_value(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
}

PipelineConfig read_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw UsageError(kModule, "cannot read config file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    PipelineConfig config;
    apply_config_text(config, ss.str());
    return config;
}

}  // namespace netmon
