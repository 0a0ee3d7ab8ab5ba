#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "netmon/config.hpp"
#include "netmon/dissim.hpp"
#include "netmon/graph.hpp"
#include "netmon/hclust.hpp"
#include "netmon/ingest.hpp"
#include "netmon/monitor.hpp"
#include "netmon/treedist.hpp"

namespace netmon {

enum class Stage { Simulate, Returns, Dissim, Center, Cluster, TreeDist, Monitor, Run };

std::string to_string(Stage s);

// Network returns plus, when an index ticker is configured, the index return column.
struct PreparedData {
    ReturnPanel returns;
    std::optional<ReturnPanel> index;
    std::vector<WindowView> windows;
};

PreparedData prepare_data(const PipelineConfig& config);

std::vector<DissimilarityMatrix> compute_dissimilarities(const std::vector<WindowView>& windows,
                                                         Measure measure,
                                                         const PipelineConfig& config);

// Single-linkage tree of the max-symmetrised matrix.
Dendrogram cluster_window(const DissimilarityMatrix& d);

struct MeasureResult {
    Measure measure = Measure::PCCD;
    std::vector<DissimilarityMatrix> matrices;
    std::vector<std::vector<std::string>> centers;
    std::vector<CenterCount> center_counts;
    std::vector<Dendrogram> trees;
    std::optional<DistanceSeries> distances;
    std::optional<ControlChartReport> chart;
};

// Joins the distance series (and the index return on the same dates) into columns.
struct MonitoringSeries {
    std::vector<std::string> names;
    std::vector<Date> timestamps;
    Eigen::MatrixXd values;
};

MonitoringSeries monitoring_series(const std::vector<DistanceSeries>& distances,
                                   const std::optional<ReturnPanel>& index);

struct VarFitOutcome {
    VarFitReport report;
    std::optional<HqSelection> selection;
};

VarFitOutcome fit_monitoring_var(const MonitoringSeries& series, const PipelineConfig& config);

// Multi-Newick lines "[YYYY-MM-DD]<newick>;" in chronological order.
std::string trees_file_text(const std::vector<Dendrogram>& trees, const std::vector<Date>& dates);

struct DatedTree {
    Date date;
    Dendrogram tree;
};
std::vector<DatedTree> read_trees_file(const std::filesystem::path& path);

struct RunSummary {
    std::vector<std::filesystem::path> artifacts;  // relative to config.out, manifest last
};

// Executes a CLI subcommand, writing its artifacts and manifest.json under config.out.
RunSummary run_stage(const PipelineConfig& config, Stage stage);

}  // namespace netmon
