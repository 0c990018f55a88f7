#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "infilsim/behavior.hpp"
#include "infilsim/clustering.hpp"
#include "infilsim/defense.hpp"
#include "infilsim/metrics.hpp"
#include "infilsim/visibility.hpp"

namespace infilsim {

enum class BotRole { Passive, Active };

struct SocialbotState {
    UserId id;
    BotRole role = BotRole::Active;
    std::uint32_t persona_location = 0;
    std::optional<OrgId> persona_org_claim;
    std::set<UserId> friends;
    std::vector<LedgerEntry> ledger;
    std::uint64_t unconfirmed = 0;  // rejected or ignored requests
    bool blocked = false;
    std::uint32_t day = 1;
    std::set<UserId> contacted;
    OperatorState operator_state;

    std::size_t org_friend_count(const SocialGraph& g, OrgId org) const;
};

struct StrategyConfig {
    std::uint32_t random_friend_goal = 50;
    bool friendly_tier_required = true;
    std::uint32_t org_seed_goal = 10;
    std::uint32_t targets_k = 10;
    std::uint32_t daily_request_limit = 20;
    ScenarioKind scenario_kind = ScenarioKind::FacebookLike;
    // Targeted attack friend phase: false orders the pooled candidates by
    // their own visible degree; true walks target-by-target, highest-degree
    // target first.
    bool order_by_target_degree = false;

    void validate() const;

    bool operator==(const StrategyConfig&) const = default;
};

enum class PhaseStatus { Completed, PoolExhausted, Blocked };

struct RequestEvent {
    std::uint32_t day = 1;
    UserId sender;
    UserId recipient;
    std::uint32_t mutual_count = 0;
    Decision decision = Decision::Ignore;
    OperatorVerdict verdict;
};

/// Shared simulation context for the request-sending phases. The graph is the
/// working copy: accepted requests add bot-user edges to it.
struct SimContext {
    SocialGraph& graph;
    const BehaviorModel& behavior;
    const DefensePolicy& defense;
    const StrategyConfig& strategy;
    const CommunityMap& communities;
    Rng& behavior_rng;
    Rng& strategy_rng;
    std::set<UserId> excluded;  // bot ids, never valid recipients
    std::vector<RequestEvent>* events = nullptr;
    std::function<void()> after_acceptance;  // optional; runs after the edge is added
};

/// Friend requests to uniformly sampled, not-yet-contacted users (friendly
/// tier only when required) until the bot holds more than
/// `random_friend_goal` friends, the pool runs dry, or the operator blocks.
PhaseStatus run_random_phase(SocialbotState& bot, SimContext& ctx);

/// Requests to the org members visible in `observed`, in descending order of
/// their visible friend-list size (ties by ascending id), until the bot has
/// more than `org_seed_goal` org friends.
PhaseStatus run_org_seed_phase(SocialbotState& bot, const ObservedGraph& observed, OrgId org,
                               SimContext& ctx);

/// Greedy adaptive expansion: repeatedly requests the uncontacted org member
/// with the highest current mutual-friend count (recomputed after every
/// acceptance; ties by ascending id), stopping when the maximum hits zero.
PhaseStatus run_mutual_expansion_phase(SocialbotState& bot, const ObservedGraph& observed,
                                       OrgId org, SimContext& ctx);

/// k distinct uniform picks, deterministic per seed. Throws ValidationError
/// when the pool is smaller than k.
std::vector<UserId> select_targets(const std::vector<UserId>& org_members, std::size_t k,
                                   Rng& rng);

struct AttackOptions {
    CrawlConfig crawl;  // seeds + target org + homophily threshold + budget
    StrategyConfig strategy;
    BehaviorModel behavior;
    DefensePolicy defense;
    MclParams mcl;
    CommunityMap communities;
    std::uint32_t bot_location = 0;
    std::optional<OrgId> bot_org_claim;
    // Re-crawl the active view after every acceptance and check that it only
    // ever grows; the result's views_monotone reports the outcome.
    bool verify_monotone_views = false;
};

/// Full org-mining run: passive crawl, then a random / org-seed / greedy
/// mutual-expansion active bot, then the active crawl and the before/after
/// summary with cluster statistics.
struct OrgMiningResult {
    SocialbotState bot;
    ObservedGraph passive_view;
    ObservedGraph active_view;
    MclResult clusters_before;
    MclResult clusters_after;
    IntrusionSummary summary;
    std::vector<RequestEvent> events;
    bool views_monotone = true;
};

OrgMiningResult run_org_mining_attack(const SocialGraph& ground, const AttackOptions& options,
                                      Rng& behavior_rng, Rng& strategy_rng);

/// Targeted-user run: crawl, pick k targets, random phase, requests to the
/// targets' org friends (pooled, no duplicates), then one request per target.
struct TargetRequest {
    UserId target;
    std::uint32_t mutual_at_request = 0;
    bool accepted = false;
};

struct TargetedAttackResult {
    SocialbotState bot;
    ObservedGraph observed;
    std::vector<UserId> targets;
    std::vector<TargetRequest> target_requests;  // only the ones actually sent
    std::uint64_t mutual_phase_accepted = 0;
    std::uint64_t mutual_phase_total = 0;
    double success_rate = 0.0;  // accepted targets / targets_k
    bool incomplete = false;    // blocked before every target was requested
    std::vector<RequestEvent> events;
    bool views_monotone = true;
};

TargetedAttackResult run_targeted_user_attack(const SocialGraph& ground,
                                              const AttackOptions& options, Rng& behavior_rng,
                                              Rng& strategy_rng);

}  // namespace infilsim
