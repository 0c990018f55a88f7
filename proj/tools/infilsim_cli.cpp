// Scenario runner CLI. Everything goes through the C API in infilsim.h; this
// translation unit never touches the C++ core directly.

#include <cstdio>
#include <cstdlib>
#include <string>

#include <CLI11.hpp>

#include "infilsim/infilsim.h"

namespace {

enum LogLevel { kQuiet = 0, kInfo = 1, kDebug = 2 };

LogLevel log_level() {
    const char* env = std::getenv("INFILSIM_LOG");
    if (!env) return kInfo;
    const std::string v = env;
    if (v == "quiet" || v == "0") return kQuiet;
    if (v == "debug" || v == "2") return kDebug;
    return kInfo;
}

void info(const std::string& message) {
    if (log_level() >= kInfo) std::fprintf(stderr, "%s\n", message.c_str());
}

void debug(const std::string& message) {
    if (log_level() >= kDebug) std::fprintf(stderr, "%s\n", message.c_str());
}

int exit_code(ifs_status status) {
    switch (status) {
        case IFS_OK: return 0;
        case IFS_ERR_INVALID_ARGUMENT: return 2;
        case IFS_ERR_PARSE: return 2;
        case IFS_ERR_IO: return 3;
        case IFS_ERR_UNATTAINABLE: return 4;
        case IFS_ERR_INTERNAL: return 1;
    }
    return 1;
}

int report_failure(ifs_status status) {
    std::fprintf(stderr, "error: %s\n", ifs_last_error());
    return exit_code(status);
}

struct ScenarioArgs {
    std::string config_path;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::uint32_t replicas = 0;
    std::string out_dir;
    std::uint32_t jobs = 1;
};

void add_scenario_options(CLI::App* cmd, ScenarioArgs& args) {
    cmd->add_option("--config", args.config_path, "Scenario config (JSON)")->required();
    cmd->add_option("--seed", args.seed, "Override the base seed")
        ->each([&](const std::string&) { args.seed_set = true; });
    cmd->add_option("--replicas", args.replicas, "Override the replica count");
    cmd->add_option("--out", args.out_dir, "Override the output directory");
}

ifs_status open_scenario(const ScenarioArgs& args, ifs_scenario** out) {
    ifs_status status = ifs_scenario_open(args.config_path.c_str(), out);
    if (status != IFS_OK) return status;
    if (args.seed_set) {
        status = ifs_scenario_override_seed(*out, args.seed);
        if (status != IFS_OK) return status;
    }
    if (args.replicas > 0) {
        status = ifs_scenario_override_replicas(*out, args.replicas);
        if (status != IFS_OK) return status;
    }
    if (!args.out_dir.empty()) {
        status = ifs_scenario_override_output_dir(*out, args.out_dir.c_str());
        if (status != IFS_OK) return status;
    }
    return IFS_OK;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Seeded socialbot infiltration simulator"};
    app.require_subcommand(1);

    ScenarioArgs run_args;
    CLI::App* run = app.add_subcommand("run", "Run every replica of a scenario");
    add_scenario_options(run, run_args);
    run->add_option("--jobs", run_args.jobs, "Parallel replica workers");

    ScenarioArgs cal_args;
    double gain_lo = 6.0;
    double gain_hi = 14.0;
    std::uint32_t cal_replicas = 20;
    CLI::App* cal = app.add_subcommand(
        "calibrate", "Pick graph.fraction_private for a target mean node gain");
    add_scenario_options(cal, cal_args);
    cal->add_option("--node-gain-min", gain_lo, "Target node gain lower bound (percent)");
    cal->add_option("--node-gain-max", gain_hi, "Target node gain upper bound (percent)");
    cal->add_option("--replicas-per-probe", cal_replicas, "Replicas per probe");

    std::string cluster_edges;
    std::string cluster_out = "clusters.csv";
    int expansion = 2;
    double inflation = 2.0;
    double prune = 1e-5;
    int max_iter = 100;
    double eps = 1e-6;
    CLI::App* cluster = app.add_subcommand("cluster", "Markov-cluster an edge-list file");
    cluster->add_option("--edges", cluster_edges, "Edge list, one \"u v\" per line")->required();
    cluster->add_option("--out", cluster_out, "Output CSV (id,cluster)");
    cluster->add_option("--expansion", expansion, "Expansion power");
    cluster->add_option("--inflation", inflation, "Inflation exponent");
    cluster->add_option("--prune", prune, "Prune threshold");
    cluster->add_option("--max-iterations", max_iter, "Iteration cap");
    cluster->add_option("--eps", eps, "Convergence epsilon");

    std::string crawl_attrs;
    std::string crawl_edges;
    std::string crawl_seeds;
    std::uint32_t crawl_org = 0;
    double threshold = 0.5;
    std::uint64_t max_nodes = 0;
    std::string crawl_prefix = "crawl";
    CLI::App* crawl = app.add_subcommand("crawl", "Crawl an org as a friendless observer");
    crawl->add_option("--attrs", crawl_attrs, "User attribute CSV")->required();
    crawl->add_option("--edges", crawl_edges, "Edge list")->required();
    crawl->add_option("--seeds", crawl_seeds, "Comma-separated seed ids")->required();
    crawl->add_option("--org", crawl_org, "Target org id");
    crawl->add_option("--threshold", threshold, "Homophily expansion threshold");
    crawl->add_option("--max-nodes", max_nodes, "Discovery budget (0 = unlimited)");
    crawl->add_option("--out-prefix", crawl_prefix, "Output prefix");

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) {
        ifs_scenario* scenario = nullptr;
        ifs_status status = open_scenario(run_args, &scenario);
        if (status != IFS_OK) return report_failure(status);
        char* resolved = nullptr;
        if (ifs_scenario_to_json(scenario, &resolved) == IFS_OK) {
            debug(resolved);
            ifs_string_free(resolved);
        }
        status = ifs_scenario_run(scenario, run_args.jobs);
        ifs_scenario_close(scenario);
        if (status != IFS_OK) return report_failure(status);
        info("scenario complete; outputs under the configured output directory");
        return 0;
    }

    if (cal->parsed()) {
        ifs_scenario* scenario = nullptr;
        ifs_status status = open_scenario(cal_args, &scenario);
        if (status != IFS_OK) return report_failure(status);
        double fraction = 0.0;
        double node_gain = 0.0;
        double edge_gain = 0.0;
        status = ifs_scenario_calibrate(scenario, gain_lo, gain_hi, cal_replicas, &fraction,
                                        &node_gain, &edge_gain);
        ifs_scenario_close(scenario);
        // best probe is reported either way
        std::printf("fraction_private %.6f\n", fraction);
        std::printf("mean_node_gain_pct %.4f\n", node_gain);
        std::printf("mean_edge_gain_pct %.4f\n", edge_gain);
        if (status != IFS_OK) return report_failure(status);
        return 0;
    }

    if (cluster->parsed()) {
        uint32_t count = 0;
        int converged = 0;
        ifs_status status =
            ifs_cluster_edge_list(cluster_edges.c_str(), cluster_out.c_str(), expansion,
                                  inflation, prune, max_iter, eps, &count, &converged);
        if (status != IFS_OK) return report_failure(status);
        std::printf("clusters %u\n", count);
        std::printf("converged %s\n", converged ? "yes" : "no");
        return 0;
    }

    if (crawl->parsed()) {
        ifs_status status = ifs_crawl(crawl_attrs.c_str(), crawl_edges.c_str(),
                                      crawl_seeds.c_str(), crawl_org, threshold, max_nodes,
                                      crawl_prefix.c_str());
        if (status != IFS_OK) return report_failure(status);
        info("crawl written to " + crawl_prefix + ".edges / " + crawl_prefix + ".users.csv");
        return 0;
    }

    return 0;
}
