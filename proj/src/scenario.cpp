#include "infilsim/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "infilsim/io.hpp"

namespace infilsim {

namespace fs = std::filesystem;
using nlohmann::json;

const char* to_string(AttackKind k) {
    return k == AttackKind::OrgMining ? "org_mining" : "targeted";
}

const char* to_string(ScenarioKind k) {
    return k == ScenarioKind::FacebookLike ? "facebook_like" : "xing_like";
}

void ScenarioConfig::validate() const {
    auto wrap = [](const char* prefix, auto&& fn) {
        try {
            fn();
        } catch (const ValidationError& e) {
            throw ValidationError(std::string(prefix) + e.what());
        }
    };
    wrap("graph.", [&] { graph.validate(); });
    wrap("strategy.", [&] { strategy.validate(); });
    wrap("behavior.", [&] { behavior.validate(); });
    wrap("defense.", [&] { defense.validate(); });
    wrap("mcl.", [&] { mcl.validate(); });
    if (!(homophily_threshold >= 0.0 && homophily_threshold <= 1.0)) {
        throw ValidationError("crawl.homophily_threshold must be in [0,1]");
    }
    if (crawl_seed_count == 0) throw ValidationError("crawl.seed_count must be positive");
    if (replicas == 0) throw ValidationError("replicas must be >= 1");
}

namespace {

[[noreturn]] void field_error(const std::string& path, const char* why) {
    throw ValidationError("config field " + path + " " + why);
}

void read_double(const json& o, const char* key, double& out, const std::string& prefix) {
    if (!o.contains(key)) return;
    const json& v = o.at(key);
    if (!v.is_number()) field_error(prefix + key, "must be a number");
    out = v.get<double>();
}

void read_u32(const json& o, const char* key, std::uint32_t& out, const std::string& prefix) {
    if (!o.contains(key)) return;
    const json& v = o.at(key);
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
        field_error(prefix + key, "must be a non-negative integer");
    }
    out = v.get<std::uint32_t>();
}

void read_u64(const json& o, const char* key, std::uint64_t& out, const std::string& prefix) {
    if (!o.contains(key)) return;
    const json& v = o.at(key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
        field_error(prefix + key, "must be a non-negative integer");
    }
    out = v.get<std::uint64_t>();
}

void read_int(const json& o, const char* key, int& out, const std::string& prefix) {
    if (!o.contains(key)) return;
    const json& v = o.at(key);
    if (!v.is_number_integer()) field_error(prefix + key, "must be an integer");
    out = v.get<int>();
}

void read_bool(const json& o, const char* key, bool& out, const std::string& prefix) {
    if (!o.contains(key)) return;
    const json& v = o.at(key);
    if (!v.is_boolean()) field_error(prefix + key, "must be a boolean");
    out = v.get<bool>();
}

void read_string(const json& o, const char* key, std::string& out, const std::string& prefix) {
    if (!o.contains(key)) return;
    const json& v = o.at(key);
    if (!v.is_string()) field_error(prefix + key, "must be a string");
    out = v.get<std::string>();
}

ScenarioKind parse_kind(const std::string& s) {
    if (s == "facebook_like") return ScenarioKind::FacebookLike;
    if (s == "xing_like") return ScenarioKind::XingLike;
    field_error("strategy.scenario_kind", "must be \"facebook_like\" or \"xing_like\"");
}

const json* section(const json& j, const char* key) {
    if (!j.contains(key)) return nullptr;
    const json& v = j.at(key);
    if (!v.is_object()) field_error(key, "must be an object");
    return &v;
}

}  // namespace

ScenarioConfig parse_scenario_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        const std::size_t upto = std::min(json_text.size(), static_cast<std::size_t>(e.byte));
        const auto line =
            1 + std::count(json_text.begin(), json_text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
        throw ParseError("config parse error at line " + std::to_string(line) + ": " + e.what());
    }
    if (!j.is_object()) throw ValidationError("config root must be a JSON object");

    ScenarioConfig c;

    std::string algorithm = "org_mining";
    read_string(j, "algorithm", algorithm, "");
    if (algorithm == "org_mining") {
        c.algorithm = AttackKind::OrgMining;
    } else if (algorithm == "targeted") {
        c.algorithm = AttackKind::Targeted;
    } else {
        field_error("algorithm", "must be \"org_mining\" or \"targeted\"");
    }

    // Strategy first: the scenario kind picks the behavior/defense defaults.
    if (const json* s = section(j, "strategy")) {
        std::string kind = to_string(c.strategy.scenario_kind);
        read_string(*s, "scenario_kind", kind, "strategy.");
        c.strategy.scenario_kind = parse_kind(kind);
        read_u32(*s, "random_friend_goal", c.strategy.random_friend_goal, "strategy.");
        read_bool(*s, "friendly_tier_required", c.strategy.friendly_tier_required, "strategy.");
        read_u32(*s, "org_seed_goal", c.strategy.org_seed_goal, "strategy.");
        read_u32(*s, "targets_k", c.strategy.targets_k, "strategy.");
        read_u32(*s, "daily_request_limit", c.strategy.daily_request_limit, "strategy.");
        read_bool(*s, "order_by_target_degree", c.strategy.order_by_target_degree, "strategy.");
    }

    c.behavior = default_model(c.strategy.scenario_kind);
    if (const json* b = section(j, "behavior")) {
        read_double(*b, "friendly_base_accept", c.behavior.friendly_base_accept, "behavior.");
        read_double(*b, "ordinary_base_accept", c.behavior.ordinary_base_accept, "behavior.");
        read_double(*b, "mutual_logistic_midpoint", c.behavior.mutual_logistic_midpoint, "behavior.");
        read_double(*b, "mutual_logistic_slope", c.behavior.mutual_logistic_slope, "behavior.");
        read_double(*b, "mutual_accept_at_17", c.behavior.mutual_accept_at_17, "behavior.");
        read_double(*b, "location_mismatch_penalty", c.behavior.location_mismatch_penalty, "behavior.");
        read_double(*b, "org_claim_verification_prob", c.behavior.org_claim_verification_prob,
                    "behavior.");
    }

    c.defense = c.strategy.scenario_kind == ScenarioKind::FacebookLike
                    ? DefensePolicy::facebook_like()
                    : DefensePolicy::xing_like();
    if (const json* d = section(j, "defense")) {
        read_u64(*d, "unconfirmed_cap", c.defense.unconfirmed_cap, "defense.");
        read_u32(*d, "acceptance_window", c.defense.acceptance_window, "defense.");
        read_double(*d, "min_acceptance_rate", c.defense.min_acceptance_rate, "defense.");
        read_u64(*d, "community_spread_cap", c.defense.community_spread_cap, "defense.");
        read_u64(*d, "report_cap", c.defense.report_cap, "defense.");
        read_bool(*d, "warn_before_block", c.defense.warn_before_block, "defense.");
    }

    if (const json* g = section(j, "graph")) {
        read_u32(*g, "n_members", c.graph.n_members, "graph.");
        read_u32(*g, "n_outsiders", c.graph.n_outsiders, "graph.");
        read_u32(*g, "community_count", c.graph.community_count, "graph.");
        read_double(*g, "intra_community_edge_prob", c.graph.intra_community_edge_prob, "graph.");
        read_double(*g, "inter_community_edge_prob", c.graph.inter_community_edge_prob, "graph.");
        read_double(*g, "fraction_private", c.graph.fraction_private, "graph.");
        read_double(*g, "fraction_inactive", c.graph.fraction_inactive, "graph.");
        read_double(*g, "friendly_fraction", c.graph.friendly_fraction, "graph.");
        read_u64(*g, "rng_seed", c.graph.rng_seed, "graph.");
        std::uint32_t org = c.graph.org.value;
        read_u32(*g, "org_id", org, "graph.");
        c.graph.org = OrgId{org};
        if (g->contains("location_distribution")) {
            const json& ld = g->at("location_distribution");
            if (!ld.is_object()) field_error("graph.location_distribution", "must be an object");
            c.graph.location_distribution.clear();
            for (const auto& [key, value] : ld.items()) {
                std::uint32_t region = 0;
                try {
                    region = static_cast<std::uint32_t>(std::stoul(key));
                } catch (...) {
                    field_error("graph.location_distribution", "keys must be region integers");
                }
                if (!value.is_number()) {
                    field_error("graph.location_distribution", "weights must be numbers");
                }
                c.graph.location_distribution[region] = value.get<double>();
            }
        }
    }

    if (const json* m = section(j, "mcl")) {
        read_int(*m, "expansion", c.mcl.expansion, "mcl.");
        read_double(*m, "inflation", c.mcl.inflation, "mcl.");
        read_double(*m, "prune_threshold", c.mcl.prune_threshold, "mcl.");
        read_int(*m, "max_iterations", c.mcl.max_iterations, "mcl.");
        read_double(*m, "convergence_eps", c.mcl.convergence_eps, "mcl.");
    }

    if (const json* cr = section(j, "crawl")) {
        read_double(*cr, "homophily_threshold", c.homophily_threshold, "crawl.");
        read_u64(*cr, "max_nodes", c.crawl_max_nodes, "crawl.");
        read_u32(*cr, "seed_count", c.crawl_seed_count, "crawl.");
    }

    if (const json* b = section(j, "bot")) {
        read_u32(*b, "location", c.bot_location, "bot.");
        if (b->contains("org_claim") && !b->at("org_claim").is_null()) {
            std::uint32_t claim = 0;
            read_u32(*b, "org_claim", claim, "bot.");
            c.bot_org_claim = claim;
        }
    }

    read_u32(j, "replicas", c.replicas, "");
    read_u64(j, "base_seed", c.base_seed, "");
    read_string(j, "output_dir", c.output_dir, "");

    c.validate();
    return c;
}

ScenarioConfig load_scenario_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario_config(buf.str());
}

std::string scenario_config_to_json(const ScenarioConfig& c) {
    json j;
    j["algorithm"] = to_string(c.algorithm);
    j["replicas"] = c.replicas;
    j["base_seed"] = c.base_seed;
    j["output_dir"] = c.output_dir;

    json g;
    g["n_members"] = c.graph.n_members;
    g["n_outsiders"] = c.graph.n_outsiders;
    g["community_count"] = c.graph.community_count;
    g["intra_community_edge_prob"] = c.graph.intra_community_edge_prob;
    g["inter_community_edge_prob"] = c.graph.inter_community_edge_prob;
    g["fraction_private"] = c.graph.fraction_private;
    g["fraction_inactive"] = c.graph.fraction_inactive;
    g["friendly_fraction"] = c.graph.friendly_fraction;
    g["rng_seed"] = c.graph.rng_seed;
    g["org_id"] = c.graph.org.value;
    json ld = json::object();
    for (const auto& [region, weight] : c.graph.location_distribution) {
        ld[std::to_string(region)] = weight;
    }
    g["location_distribution"] = ld;
    j["graph"] = g;

    json s;
    s["scenario_kind"] = to_string(c.strategy.scenario_kind);
    s["random_friend_goal"] = c.strategy.random_friend_goal;
    s["friendly_tier_required"] = c.strategy.friendly_tier_required;
    s["org_seed_goal"] = c.strategy.org_seed_goal;
    s["targets_k"] = c.strategy.targets_k;
    s["daily_request_limit"] = c.strategy.daily_request_limit;
    s["order_by_target_degree"] = c.strategy.order_by_target_degree;
    j["strategy"] = s;

    json b;
    b["friendly_base_accept"] = c.behavior.friendly_base_accept;
    b["ordinary_base_accept"] = c.behavior.ordinary_base_accept;
    b["mutual_logistic_midpoint"] = c.behavior.mutual_logistic_midpoint;
    b["mutual_logistic_slope"] = c.behavior.mutual_logistic_slope;
    b["mutual_accept_at_17"] = c.behavior.mutual_accept_at_17;
    b["location_mismatch_penalty"] = c.behavior.location_mismatch_penalty;
    b["org_claim_verification_prob"] = c.behavior.org_claim_verification_prob;
    j["behavior"] = b;

    json d;
    d["unconfirmed_cap"] = c.defense.unconfirmed_cap;
    d["acceptance_window"] = c.defense.acceptance_window;
    d["min_acceptance_rate"] = c.defense.min_acceptance_rate;
    d["community_spread_cap"] = c.defense.community_spread_cap;
    d["report_cap"] = c.defense.report_cap;
    d["warn_before_block"] = c.defense.warn_before_block;
    j["defense"] = d;

    json m;
    m["expansion"] = c.mcl.expansion;
    m["inflation"] = c.mcl.inflation;
    m["prune_threshold"] = c.mcl.prune_threshold;
    m["max_iterations"] = c.mcl.max_iterations;
    m["convergence_eps"] = c.mcl.convergence_eps;
    j["mcl"] = m;

    json cr;
    cr["homophily_threshold"] = c.homophily_threshold;
    cr["max_nodes"] = c.crawl_max_nodes;
    cr["seed_count"] = c.crawl_seed_count;
    j["crawl"] = cr;

    json bot;
    bot["location"] = c.bot_location;
    if (c.bot_org_claim) {
        bot["org_claim"] = *c.bot_org_claim;
    } else {
        bot["org_claim"] = nullptr;
    }
    j["bot"] = bot;

    return j.dump(2) + "\n";
}

ScenarioConfig default_org_mining_scenario() {
    ScenarioConfig c;
    c.algorithm = AttackKind::OrgMining;
    c.graph.n_members = 300;
    c.graph.n_outsiders = 700;
    c.graph.community_count = 10;
    c.graph.intra_community_edge_prob = 0.115;
    c.graph.inter_community_edge_prob = 0.002;
    c.graph.fraction_private = 0.45;
    c.graph.fraction_inactive = 0.10;
    c.graph.friendly_fraction = 0.20;
    c.graph.location_distribution = {{0, 1.0}};
    c.graph.rng_seed = 7;
    c.strategy.scenario_kind = ScenarioKind::FacebookLike;
    c.behavior = default_model(ScenarioKind::FacebookLike);
    c.defense = DefensePolicy::facebook_like();
    c.replicas = 30;
    c.base_seed = 42;
    c.output_dir = "out/org_mining";
    return c;
}

ScenarioConfig default_targeted_scenario(ScenarioKind kind) {
    ScenarioConfig c;
    c.algorithm = AttackKind::Targeted;
    if (kind == ScenarioKind::FacebookLike) {
        // dense mid-size org: targets hold a few dozen organizational friends
        c.graph.n_members = 300;
        c.graph.n_outsiders = 300;
        c.graph.community_count = 6;
        c.graph.intra_community_edge_prob = 0.6;
        c.graph.inter_community_edge_prob = 0.01;
        c.graph.fraction_inactive = 0.02;
    } else {
        // small professional-network org: sparse friendships, more dormant
        // profiles, and a request budget the hard unconfirmed cap can bite
        c.graph.n_members = 107;
        c.graph.n_outsiders = 300;
        c.graph.community_count = 5;
        c.graph.intra_community_edge_prob = 0.3;
        c.graph.inter_community_edge_prob = 0.01;
        c.graph.fraction_inactive = 0.15;
    }
    c.graph.fraction_private = 0.30;
    c.graph.friendly_fraction = 0.15;
    c.graph.location_distribution = {{0, 1.0}};
    c.graph.rng_seed = 7;
    c.strategy.scenario_kind = kind;
    c.behavior = default_model(kind);
    c.defense = kind == ScenarioKind::FacebookLike ? DefensePolicy::facebook_like()
                                                   : DefensePolicy::xing_like();
    c.crawl_seed_count = 10;  // at least targets_k members are always in view
    c.replicas = 100;
    c.base_seed = 42;
    c.output_dir = kind == ScenarioKind::FacebookLike ? "out/targeted_facebook"
                                                      : "out/targeted_xing";
    return c;
}

ReplicaOutcome run_replica(const ScenarioConfig& config, std::uint64_t replica_seed,
                           bool verify_monotone_views) {
    config.validate();

    OrgGraphSpec gspec = config.graph;
    gspec.rng_seed = derive_seed(replica_seed, kGraphStream);
    GeneratedOrgGraph gen = generate_org_graph(gspec);

    Rng behavior_rng(derive_seed(replica_seed, kBehaviorStream));
    Rng strategy_rng(derive_seed(replica_seed, kStrategyStream));

    const std::vector<UserId> members = gen.graph.org_members(config.graph.org);
    if (members.empty()) {
        throw ValidationError("scenario graph has no org members to seed the crawl");
    }
    const std::size_t seed_count =
        std::min<std::size_t>(config.crawl_seed_count, members.size());

    AttackOptions opt;
    // Seed URLs point at profiles the attacker could actually browse, so
    // public members come first; private ones only fill a shortfall.
    for (UserId m : members) {
        if (opt.crawl.seeds.size() == seed_count) break;
        if (gen.graph.user(m).privacy == Privacy::PublicFriendList) {
            opt.crawl.seeds.push_back(m);
        }
    }
    for (UserId m : members) {
        if (opt.crawl.seeds.size() == seed_count) break;
        if (gen.graph.user(m).privacy != Privacy::PublicFriendList) {
            opt.crawl.seeds.push_back(m);
        }
    }
    std::sort(opt.crawl.seeds.begin(), opt.crawl.seeds.end());
    opt.crawl.target_org = config.graph.org;
    opt.crawl.homophily_threshold = config.homophily_threshold;
    opt.crawl.max_nodes = config.crawl_max_nodes;
    opt.strategy = config.strategy;
    opt.behavior = config.behavior;
    opt.defense = config.defense;
    opt.mcl = config.mcl;
    opt.communities = gen.community_of;
    opt.bot_location = config.bot_location;
    if (config.bot_org_claim) opt.bot_org_claim = OrgId{*config.bot_org_claim};
    opt.verify_monotone_views = verify_monotone_views;

    ReplicaOutcome out;
    out.algorithm = config.algorithm;
    if (config.algorithm == AttackKind::OrgMining) {
        out.mining = run_org_mining_attack(gen.graph, opt, behavior_rng, strategy_rng);
    } else {
        out.targeted = run_targeted_user_attack(gen.graph, opt, behavior_rng, strategy_rng);
    }
    return out;
}

namespace {

std::ofstream open_out(const fs::path& path) {
    std::ofstream f(path);
    if (!f) throw IoError("cannot write " + path.string());
    return f;
}

void write_events_jsonl(const std::vector<RequestEvent>& events, std::ostream& out) {
    for (const auto& e : events) {
        out << "{\"day\":" << e.day << ",\"sender\":" << e.sender.value
            << ",\"recipient\":" << e.recipient.value << ",\"mutual_count\":" << e.mutual_count
            << ",\"decision\":\"" << to_string(e.decision) << "\",\"operator_verdict\":\""
            << to_string(e.verdict.outcome);
        if (e.verdict.outcome != VerdictOutcome::Ok) {
            out << ':' << to_string(e.verdict.reason);
        }
        out << "\"}\n";
    }
}

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

void write_replica_files(const ScenarioConfig& config, std::uint32_t index,
                         const ReplicaOutcome& outcome) {
    const fs::path dir = config.output_dir;
    const std::string suffix = "_r" + std::to_string(index);

    const std::vector<RequestEvent>* events = nullptr;
    const std::vector<LedgerEntry>* ledger = nullptr;
    if (outcome.mining) {
        events = &outcome.mining->events;
        ledger = &outcome.mining->bot.ledger;
    } else if (outcome.targeted) {
        events = &outcome.targeted->events;
        ledger = &outcome.targeted->bot.ledger;
    }

    if (events) {
        auto f = open_out(dir / ("events" + suffix + ".jsonl"));
        write_events_jsonl(*events, f);
    }
    if (ledger) {
        auto f = open_out(dir / ("acceptance" + suffix + ".csv"));
        write_acceptance_csv(acceptance_table(*ledger), f);
    }
    if (outcome.mining) {
        auto f = open_out(dir / ("summary" + suffix + ".csv"));
        write_intrusion_summary_csv(outcome.mining->summary, f);
    }
    if (outcome.targeted) {
        auto f = open_out(dir / ("targets" + suffix + ".csv"));
        f << "target,mutual_at_request,accepted\n";
        for (const auto& t : outcome.targeted->target_requests) {
            f << t.target.value << ',' << t.mutual_at_request << ',' << (t.accepted ? 1 : 0)
              << '\n';
        }
    }
}

struct Accumulator {
    double sum = 0.0;
    double sum_sq = 0.0;
    std::uint64_t n = 0;
    void add(double v) {
        sum += v;
        sum_sq += v * v;
        ++n;
    }
    double mean() const { return n > 0 ? sum / static_cast<double>(n) : 0.0; }
    double stddev() const {
        if (n < 2) return 0.0;
        const double m = mean();
        const double var = (sum_sq - static_cast<double>(n) * m * m) / static_cast<double>(n - 1);
        return var > 0.0 ? std::sqrt(var) : 0.0;
    }
};

}  // namespace

void run_scenario(const ScenarioConfig& config, std::uint32_t jobs) {
    config.validate();
    std::error_code ec;
    fs::create_directories(config.output_dir, ec);
    if (ec) throw IoError("cannot create output directory " + config.output_dir);

    const std::uint32_t n = config.replicas;
    std::vector<ReplicaOutcome> results(n);
    const std::uint32_t workers = std::max<std::uint32_t>(1, std::min(jobs, n));

    std::atomic<std::uint32_t> next{0};
    std::vector<std::exception_ptr> failures(workers);
    auto work = [&](std::uint32_t w) {
        try {
            while (true) {
                const std::uint32_t i = next.fetch_add(1);
                if (i >= n) break;
                results[i] = run_replica(config, config.base_seed + i);
                write_replica_files(config, i, results[i]);
            }
        } catch (...) {
            failures[w] = std::current_exception();
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::uint32_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }
    for (const auto& f : failures) {
        if (f) std::rethrow_exception(f);
    }

    // Aggregation is a deterministic fold over replica indices.
    Accumulator node_gain;
    Accumulator edge_gain;
    Accumulator success;
    Accumulator mutual_acceptance;
    Accumulator incomplete;
    for (const ReplicaOutcome& r : results) {
        if (r.mining) {
            if (r.mining->summary.node_gain_defined) node_gain.add(r.mining->summary.node_gain_pct);
            if (r.mining->summary.edge_gain_defined) edge_gain.add(r.mining->summary.edge_gain_pct);
        }
        if (r.targeted) {
            success.add(r.targeted->success_rate);
            if (r.targeted->mutual_phase_total > 0) {
                mutual_acceptance.add(100.0 * static_cast<double>(r.targeted->mutual_phase_accepted) /
                                      static_cast<double>(r.targeted->mutual_phase_total));
            }
            incomplete.add(r.targeted->incomplete ? 1.0 : 0.0);
        }
    }

    {
        auto f = open_out(fs::path(config.output_dir) / "aggregate.csv");
        f << "metric,mean,stddev,replicas\n";
        auto row = [&](const char* name, const Accumulator& acc) {
            f << name << ',' << fixed6(acc.mean()) << ',' << fixed6(acc.stddev()) << ',' << acc.n
              << '\n';
        };
        if (config.algorithm == AttackKind::OrgMining) {
            row("node_gain_pct", node_gain);
            row("edge_gain_pct", edge_gain);
        } else {
            row("success_rate", success);
            row("mutual_phase_acceptance_pct", mutual_acceptance);
            row("incomplete_fraction", incomplete);
        }
    }
    {
        auto f = open_out(fs::path(config.output_dir) / "config.json");
        f << scenario_config_to_json(config);
    }
}

CalibrationResult calibrate(const ScenarioConfig& config, double node_gain_lo,
                            double node_gain_hi, std::uint32_t replicas) {
    config.validate();
    if (config.algorithm != AttackKind::OrgMining) {
        throw ValidationError("calibrate requires an org_mining scenario");
    }
    if (node_gain_hi < node_gain_lo) throw ValidationError("node gain range is empty");
    if (replicas == 0) throw ValidationError("calibrate requires at least one replica");

    ScenarioConfig probe = config;
    auto evaluate = [&](double fp) {
        probe.graph.fraction_private = fp;
        Accumulator node;
        Accumulator edge;
        for (std::uint32_t i = 0; i < replicas; ++i) {
            ReplicaOutcome out = run_replica(probe, probe.base_seed + i);
            const IntrusionSummary& s = out.mining->summary;
            if (s.node_gain_defined) node.add(s.node_gain_pct);
            if (s.edge_gain_defined) edge.add(s.edge_gain_pct);
        }
        return std::pair<double, double>{node.mean(), edge.mean()};
    };
    auto in_range = [&](double g) { return g >= node_gain_lo && g <= node_gain_hi; };
    auto miss = [&](double g) {
        if (g < node_gain_lo) return node_gain_lo - g;
        if (g > node_gain_hi) return g - node_gain_hi;
        return 0.0;
    };

    auto [n0, e0] = evaluate(0.0);
    CalibrationResult best{0.0, n0, e0, in_range(n0)};
    if (best.attained) return best;
    if (n0 > node_gain_hi) return best;  // already past the range with nothing hidden

    auto [n1, e1] = evaluate(1.0);
    if (in_range(n1)) return {1.0, n1, e1, true};
    if (miss(n1) < miss(best.node_gain_mean)) best = {1.0, n1, e1, false};
    if (n1 < node_gain_lo) return best;  // full privacy still under the range

    double lo = 0.0;
    double hi = 1.0;
    for (int iter = 0; iter < 40 && hi - lo > 1e-6; ++iter) {
        const double mid = 0.5 * (lo + hi);
        auto [nm, em] = evaluate(mid);
        if (in_range(nm)) return {mid, nm, em, true};
        if (miss(nm) < miss(best.node_gain_mean)) best = {mid, nm, em, false};
        if (nm < node_gain_lo) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return best;
}

}  // namespace infilsim
