#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "netmon/dissim.hpp"
#include "netmon/graph.hpp"
#include "netmon/monitor.hpp"
#include "netmon/treedist.hpp"

namespace netmon {

enum class MeasureSelection { PCCD, GVDD, Both };

struct PipelineConfig {
    // ingest
    std::filesystem::path input;
    std::vector<std::string> tickers;
    std::string index_ticker;
    int window = 63;
    int step = 1;
    bool drop_incomplete_rows = false;
    // dissimilarity
    MeasureSelection measure = MeasureSelection::Both;
    int var_lag = 1;
    int horizon = 10;
    std::string ridge = "off";  // "off", "auto" or a nonnegative number
    // graph / trees
    EccentricityMode ecc = EccentricityMode::Out;
    TreeMetric metric = TreeMetric::CID;
    bool dump_matrices = false;
    bool per_window_trees = false;
    std::filesystem::path trees;  // treedist: read this multi-Newick file instead
    // monitor
    double chart_k = 5.0;
    ThresholdMode threshold_mode = ThresholdMode::MeanPlusKSd;
    std::string baseline;  // "YYYY-MM-DD:YYYY-MM-DD" or empty
    int monitor_lag = 0;   // 0 selects by Hannan-Quinn
    int monitor_pmax = 5;
    // output / execution
    std::filesystem::path out = "netmon_out";
    int threads = 0;  // 0 = hardware concurrency
    // simulate
    std::uint64_t seed = 42;
    int sim_assets = 28;
    int sim_days = 252;
    double sim_factor = 0.5;
    std::string sim_index = "OMX";
    std::string sim_start = "2021-01-04";

    bool operator==(const PipelineConfig&) const = default;
};

std::vector<Measure> selected_measures(MeasureSelection s);

// Throws UsageError naming the violated constraint.
void validate(const PipelineConfig& config);

// Ridge lambda for GvddOptions: 0 for "off", nullopt for "auto".
std::optional<double> ridge_lambda(const PipelineConfig& config);

// Flat key=value text; keys are the long CLI flag names without dashes.
std::string to_config_text(const PipelineConfig& config);
void apply_config_text(PipelineConfig& config, const std::string& text);
PipelineConfig read_config_file(const std::filesystem::path& path);

// Single key assignment, as used by both the config file and tests.
void set_config_value(PipelineConfig& config, const std::string& key, const std::string& value);

}  // namespace netmon
