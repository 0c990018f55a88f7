#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "infilsim/strategy.hpp"

namespace infilsim {

enum class AttackKind { OrgMining, Targeted };

/// One self-contained experiment: graph spec, attacker, behavior, defense,
/// clustering parameters, replica count, and a base seed. Replica i runs with
/// seed base_seed + i; every stream the replica touches derives from that.
struct ScenarioConfig {
    AttackKind algorithm = AttackKind::OrgMining;
    OrgGraphSpec graph;
    StrategyConfig strategy;
    BehaviorModel behavior;
    DefensePolicy defense;
    MclParams mcl;
    double homophily_threshold = 0.5;
    std::uint64_t crawl_max_nodes = 0;
    std::uint32_t crawl_seed_count = 5;  // lowest-id org members seed the crawl
    std::uint32_t bot_location = 0;
    std::optional<std::uint32_t> bot_org_claim;
    std::uint32_t replicas = 1;
    std::uint64_t base_seed = 0;
    std::string output_dir = ".";

    void validate() const;

    bool operator==(const ScenarioConfig&) const = default;
};

/// Parses a JSON config. Behavior and defense default to the scenario kind's
/// stock models; any field present overrides the default. Parse errors carry
/// a line number, validation errors name the offending field.
ScenarioConfig parse_scenario_config(const std::string& json_text);
ScenarioConfig load_scenario_config(const std::string& path);

/// Fully resolved config back to JSON; parse(serialize(c)) == c.
std::string scenario_config_to_json(const ScenarioConfig& config);

/// Ready-made desk-scale scenarios used by the examples and the test suites.
ScenarioConfig default_org_mining_scenario();
ScenarioConfig default_targeted_scenario(ScenarioKind kind);

struct ReplicaOutcome {
    AttackKind algorithm = AttackKind::OrgMining;
    std::optional<OrgMiningResult> mining;
    std::optional<TargetedAttackResult> targeted;
};

/// Runs one replica in memory. All randomness derives from replica_seed.
ReplicaOutcome run_replica(const ScenarioConfig& config, std::uint64_t replica_seed,
                           bool verify_monotone_views = false);

/// Runs every replica (optionally on `jobs` worker threads), writing
/// per-replica event logs (events_rN.jsonl), per-day acceptance tables
/// (acceptance_rN.csv), per-replica summaries (summary_rN.csv or
/// targets_rN.csv), the resolved config, and aggregate.csv with mean/stddev
/// rows folded in replica order.
void run_scenario(const ScenarioConfig& config, std::uint32_t jobs = 1);

struct CalibrationResult {
    double fraction_private = 0.0;
    double node_gain_mean = 0.0;
    double edge_gain_mean = 0.0;
    bool attained = false;
};

/// Bisection over graph.fraction_private until the mean node gain over
/// `replicas` runs lands inside [node_gain_lo, node_gain_hi]. Returns the
/// best probe with attained = false when the range cannot be reached.
CalibrationResult calibrate(const ScenarioConfig& config, double node_gain_lo,
                            double node_gain_hi, std::uint32_t replicas);

const char* to_string(AttackKind k);
const char* to_string(ScenarioKind k);

}  // namespace infilsim
