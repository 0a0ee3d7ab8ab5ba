// netmon: rolling-window financial network monitoring.

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "netmon/config.hpp"
#include "netmon/error.hpp"
#include "netmon/pipeline.hpp"

namespace {

struct Flag {
    const char* key;
    const char* help;
};

// Options that take a value; the key doubles as the config-file key.
const std::vector<Flag> kValueFlags = {
    {"input", "Price CSV (Date,TICKER1,...)"},
    {"tickers", "Comma-separated ticker subset, in order"},
    {"index-ticker", "Column holding the market index (excluded from the network)"},
    {"window", "Rolling window length in returns (default 63)"},
    {"step", "Window shift in rows (default 1)"},
    {"measure", "pccd|gvdd|both (default both)"},
    {"var-lag", "VAR lag order for GVDD (default 1)"},
    {"horizon", "Forecast horizon K for GVDD (default 10)"},
    {"ridge", "Ridge penalty for the GVDD VAR: off|auto|<value> (default off)"},
    {"ecc", "Directed eccentricity: out|in (default out)"},
    {"metric", "Tree distance: rf|cid (default cid)"},
    {"trees", "treedist: read this multi-Newick file instead of recomputing"},
    {"k", "Control chart multiplier (default 5)"},
    {"threshold-mode", "mean+ksd|ksd (default mean+ksd)"},
    {"baseline", "Control chart baseline YYYY-MM-DD:YYYY-MM-DD (default: whole series)"},
    {"monitor-lag", "Monitoring VAR order; 0 selects by Hannan-Quinn (default 0)"},
    {"monitor-pmax", "Largest order tried by Hannan-Quinn (default 5)"},
    {"out", "Output directory (default netmon_out)"},
    {"threads", "Worker threads: n|auto (default auto)"},
    {"seed", "simulate: RNG seed (default 42)"},
    {"assets", "simulate: number of stocks (default 28)"},
    {"days", "simulate: number of price rows (default 252)"},
    {"factor", "simulate: factor loading in [0,1) (default 0.5)"},
    {"sim-index", "simulate: index column name, empty for none (default OMX)"},
    {"start", "simulate: first date (default 2021-01-04)"},
};

const std::vector<Flag> kBoolFlags = {
    {"drop-incomplete-rows", "Drop rows with missing or non-numeric cells"},
    {"dump-matrices", "Also write every per-window dissimilarity matrix"},
    {"per-window-trees", "Also write one Newick file per window"},
};

const std::vector<std::pair<const char*, netmon::Stage>> kCommands = {
    {"simulate", netmon::Stage::Simulate}, {"returns", netmon::Stage::Returns},
    {"dissim", netmon::Stage::Dissim},     {"center", netmon::Stage::Center},
    {"cluster", netmon::Stage::Cluster},   {"treedist", netmon::Stage::TreeDist},
    {"monitor", netmon::Stage::Monitor},   {"run", netmon::Stage::Run},
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rolling-window stock network construction, clustering and change monitoring"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    app.add_option("--config", config_path, "key=value config file; flags override it");

    std::map<std::string, std::string> values;
    std::vector<std::string> order;
    for (const auto& f : kValueFlags) {
        app.add_option_function<std::string>(
            std::string("--") + f.key,
            [&values, &order, key = std::string(f.key)](const std::string& v) {
                values[key] = v;
                order.push_back(key);
            },
            f.help);
    }
    for (const auto& f : kBoolFlags) {
        app.add_flag_callback(
            std::string("--") + f.key,
            [&values, &order, key = std::string(f.key)] {
                values[key] = "true";
                order.push_back(key);
            },
            f.help);
    }

    std::map<CLI::App*, netmon::Stage> stages;
    for (const auto& [name, stage] : kCommands) {
        auto* sub = app.add_subcommand(name, "netmon " + std::string(name));
        stages[sub] = stage;
    }
    stages.begin()->first->description("Write a synthetic factor-model price panel");
    for (auto& [sub, stage] : stages) {
        switch (stage) {
            case netmon::Stage::Returns: sub->description("Write log returns"); break;
            case netmon::Stage::Dissim: sub->description("Write per-window dissimilarity matrices"); break;
            case netmon::Stage::Center: sub->description("Graph centers per window and their frequencies"); break;
            case netmon::Stage::Cluster: sub->description("Single-linkage trees as multi-Newick"); break;
            case netmon::Stage::TreeDist: sub->description("Distances between consecutive trees"); break;
            case netmon::Stage::Monitor: sub->description("Shewhart charts and the monitoring VAR fit"); break;
            case netmon::Stage::Run: sub->description("Full pipeline"); break;
            default: break;
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return static_cast<int>(netmon::ErrorClass::Usage);
    }

    try {
        netmon::PipelineConfig config;
        if (!config_path.empty()) config = netmon::read_config_file(config_path);
        for (const auto& key : order) netmon::set_config_value(config, key, values[key]);

        netmon::Stage stage = netmon::Stage::Run;
        for (auto& [sub, s] : stages)
            if (sub->parsed()) stage = s;

        const auto summary = netmon::run_stage(config, stage);
        for (const auto& a : summary.artifacts) std::cout << (config.out / a).string() << '\n';
        return 0;
    } catch (const netmon::Error& e) {
        std::cerr << "netmon: " << e.what() << '\n';
        return static_cast<int>(e.error_class());
    } catch (const std::exception& e) {
        std::cerr << "netmon: " << e.what() << '\n';
        return static_cast<int>(netmon::ErrorClass::Data);
    }
}
