#include "infilsim/infilsim.h"

#include <cstring>
#include <fstream>
#include <functional>
#include <memory>
#include <sstream>
#include <string>

#include "infilsim/io.hpp"
#include "infilsim/scenario.hpp"

struct ifs_scenario {
    infilsim::ScenarioConfig config;
};

namespace {

thread_local std::string g_last_error;

ifs_status fail(ifs_status status, const std::string& message) {
    g_last_error = message;
    return status;
}

// Maps the library's exception taxonomy onto C status codes.
ifs_status guarded(const std::function<void()>& fn) {
    try {
        fn();
        return IFS_OK;
    } catch (const infilsim::ParseError& e) {
        return fail(IFS_ERR_PARSE, e.what());
    } catch (const infilsim::LookupError& e) {
        return fail(IFS_ERR_INVALID_ARGUMENT, e.what());
    } catch (const infilsim::ValidationError& e) {
        return fail(IFS_ERR_INVALID_ARGUMENT, e.what());
    } catch (const infilsim::IoError& e) {
        return fail(IFS_ERR_IO, e.what());
    } catch (const std::exception& e) {
        return fail(IFS_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(IFS_ERR_INTERNAL, "unknown error");
    }
}

ifs_status require(bool ok, const char* message) {
    return ok ? IFS_OK : fail(IFS_ERR_INVALID_ARGUMENT, message);
}

}  // namespace

extern "C" {

const char* ifs_version(void) { return "1.0.0"; }

const char* ifs_last_error(void) { return g_last_error.c_str(); }

ifs_status ifs_scenario_open(const char* config_path, ifs_scenario** out) {
    if (ifs_status s = require(config_path && out, "null argument"); s != IFS_OK) return s;
    return guarded([&] {
        auto scenario = std::make_unique<ifs_scenario>();
        scenario->config = infilsim::load_scenario_config(config_path);
        *out = scenario.release();
    });
}

ifs_status ifs_scenario_parse(const char* json_text, ifs_scenario** out) {
    if (ifs_status s = require(json_text && out, "null argument"); s != IFS_OK) return s;
    return guarded([&] {
        auto scenario = std::make_unique<ifs_scenario>();
        scenario->config = infilsim::parse_scenario_config(json_text);
        *out = scenario.release();
    });
}

void ifs_scenario_close(ifs_scenario* scenario) { delete scenario; }

ifs_status ifs_scenario_override_seed(ifs_scenario* scenario, uint64_t base_seed) {
    if (ifs_status s = require(scenario != nullptr, "null scenario"); s != IFS_OK) return s;
    scenario->config.base_seed = base_seed;
    return IFS_OK;
}

ifs_status ifs_scenario_override_replicas(ifs_scenario* scenario, uint32_t replicas) {
    if (ifs_status s = require(scenario != nullptr, "null scenario"); s != IFS_OK) return s;
    if (ifs_status s = require(replicas >= 1, "replicas must be >= 1"); s != IFS_OK) return s;
    scenario->config.replicas = replicas;
    return IFS_OK;
}

ifs_status ifs_scenario_override_output_dir(ifs_scenario* scenario, const char* dir) {
    if (ifs_status s = require(scenario && dir, "null argument"); s != IFS_OK) return s;
    scenario->config.output_dir = dir;
    return IFS_OK;
}

ifs_status ifs_scenario_to_json(const ifs_scenario* scenario, char** out_json) {
    if (ifs_status s = require(scenario && out_json, "null argument"); s != IFS_OK) return s;
    return guarded([&] {
        const std::string text = infilsim::scenario_config_to_json(scenario->config);
        char* buf = new char[text.size() + 1];
        std::memcpy(buf, text.c_str(), text.size() + 1);
        *out_json = buf;
    });
}

void ifs_string_free(char* text) { delete[] text; }

ifs_status ifs_scenario_run(ifs_scenario* scenario, uint32_t jobs) {
    if (ifs_status s = require(scenario != nullptr, "null scenario"); s != IFS_OK) return s;
    return guarded([&] { infilsim::run_scenario(scenario->config, jobs == 0 ? 1 : jobs); });
}

ifs_status ifs_scenario_calibrate(ifs_scenario* scenario, double node_gain_lo,
                                  double node_gain_hi, uint32_t replicas,
                                  double* out_fraction_private, double* out_node_gain,
                                  double* out_edge_gain) {
    if (ifs_status s = require(scenario != nullptr, "null scenario"); s != IFS_OK) return s;
    infilsim::CalibrationResult result;
    ifs_status status = guarded([&] {
        result = infilsim::calibrate(scenario->config, node_gain_lo, node_gain_hi, replicas);
    });
    if (status != IFS_OK) return status;
    if (out_fraction_private) *out_fraction_private = result.fraction_private;
    if (out_node_gain) *out_node_gain = result.node_gain_mean;
    if (out_edge_gain) *out_edge_gain = result.edge_gain_mean;
    if (!result.attained) {
        return fail(IFS_ERR_UNATTAINABLE,
                    "node gain target not attainable; best fraction_private " +
                        std::to_string(result.fraction_private) + " gives mean node gain " +
                        std::to_string(result.node_gain_mean) + "%");
    }
    return IFS_OK;
}

ifs_status ifs_cluster_edge_list(const char* edge_list_path, const char* out_csv_path,
                                 int expansion, double inflation, double prune_threshold,
                                 int max_iterations, double convergence_eps,
                                 uint32_t* out_cluster_count, int* out_converged) {
    if (ifs_status s = require(edge_list_path && out_csv_path, "null path"); s != IFS_OK) return s;
    return guarded([&] {
        std::ifstream edges(edge_list_path);
        if (!edges) throw infilsim::IoError(std::string("cannot read ") + edge_list_path);
        infilsim::SocialGraph g = infilsim::read_edge_list(edges);
        if (g.user_count() == 0) throw infilsim::ValidationError("edge list holds no users");
        infilsim::MclParams params;
        params.expansion = expansion;
        params.inflation = inflation;
        params.prune_threshold = prune_threshold;
        params.max_iterations = max_iterations;
        params.convergence_eps = convergence_eps;
        infilsim::MclResult result = infilsim::mcl(g, params);
        std::ofstream out(out_csv_path);
        if (!out) throw infilsim::IoError(std::string("cannot write ") + out_csv_path);
        infilsim::write_clustering_csv(result.clustering, out);
        if (out_cluster_count) *out_cluster_count = result.clustering.cluster_count();
        if (out_converged) *out_converged = result.converged ? 1 : 0;
    });
}

ifs_status ifs_crawl(const char* attributes_csv_path, const char* edge_list_path,
                     const char* seed_ids_csv, uint32_t target_org, double homophily_threshold,
                     uint64_t max_nodes, const char* out_prefix) {
    if (ifs_status s = require(attributes_csv_path && edge_list_path && seed_ids_csv && out_prefix,
                               "null argument");
        s != IFS_OK) {
        return s;
    }
    return guarded([&] {
        std::ifstream attrs(attributes_csv_path);
        if (!attrs) throw infilsim::IoError(std::string("cannot read ") + attributes_csv_path);
        std::ifstream edges(edge_list_path);
        if (!edges) throw infilsim::IoError(std::string("cannot read ") + edge_list_path);
        infilsim::SocialGraph g = infilsim::read_graph(attrs, edges);

        infilsim::CrawlConfig cfg;
        cfg.target_org = infilsim::OrgId{target_org};
        cfg.homophily_threshold = homophily_threshold;
        cfg.max_nodes = max_nodes;
        std::istringstream seeds(seed_ids_csv);
        std::string token;
        while (std::getline(seeds, token, ',')) {
            if (token.empty()) continue;
            try {
                cfg.seeds.push_back(
                    infilsim::UserId{static_cast<std::uint32_t>(std::stoul(token))});
            } catch (...) {
                throw infilsim::ValidationError("bad seed id \"" + token + "\"");
            }
        }

        // A fresh friendless observer sees exactly the public view.
        infilsim::User observer;
        observer.id = infilsim::UserId{g.user_count() > 0 ? g.max_user_id().value + 1 : 0};
        observer.privacy = infilsim::Privacy::FriendsOnlyFriendList;
        observer.activity = 0.0;
        g.add_user(observer);

        infilsim::ObservedGraph view = infilsim::org_crawl(g, observer.id, cfg);

        const std::string prefix = out_prefix;
        std::ofstream edge_out(prefix + ".edges");
        if (!edge_out) throw infilsim::IoError("cannot write " + prefix + ".edges");
        infilsim::write_observed_edge_list(view, edge_out);
        std::ofstream user_out(prefix + ".users.csv");
        if (!user_out) throw infilsim::IoError("cannot write " + prefix + ".users.csv");
        infilsim::write_observed_user_table(view, g, user_out);
    });
}

}  // extern "C"
