#include "infilsim/strategy.hpp"

#include <algorithm>

namespace infilsim {

std::size_t SocialbotState::org_friend_count(const SocialGraph& g, OrgId org) const {
    std::size_t count = 0;
    for (UserId f : friends) {
        const auto& u = g.user(f);
        if (u.org && *u.org == org) ++count;
    }
    return count;
}

void StrategyConfig::validate() const {
    if (random_friend_goal == 0) throw ValidationError("random_friend_goal must be positive");
    if (org_seed_goal == 0) throw ValidationError("org_seed_goal must be positive");
    if (daily_request_limit == 0) throw ValidationError("daily_request_limit must be positive");
}

namespace {

// Resolves one friend request end to end: decision, ledger, edge on
// acceptance, operator verdict. Returns false once the bot is blocked.
bool send_request(SocialbotState& bot, UserId recipient, SimContext& ctx) {
    if (bot.blocked) throw ValidationError("blocked bot cannot send requests");
    if (bot.contacted.count(recipient) != 0) {
        throw ValidationError("duplicate request to user " + std::to_string(recipient.value));
    }
    bot.day = 1 + static_cast<std::uint32_t>(bot.ledger.size() / ctx.strategy.daily_request_limit);

    const std::uint32_t mutual =
        static_cast<std::uint32_t>(ctx.graph.mutual_friends(bot.id, recipient));
    const User& user = ctx.graph.user(recipient);
    RequestContext rc;
    rc.sender = bot.id;
    rc.recipient = recipient;
    rc.mutual_count = mutual;
    rc.sender_claims_recipient_org =
        bot.persona_org_claim && user.org && *bot.persona_org_claim == *user.org;
    rc.location_match = bot.persona_location == user.location;

    const Decision decision = decide(ctx.behavior, ctx.graph, rc, ctx.behavior_rng);
    bot.contacted.insert(recipient);
    bot.ledger.push_back({recipient, decision, bot.day});
    if (decision == Decision::Accept) {
        ctx.graph.add_edge(bot.id, recipient);
        bot.friends.insert(recipient);
    } else if (decision == Decision::Reject || decision == Decision::Ignore) {
        ++bot.unconfirmed;
    }

    const OperatorVerdict verdict =
        operator_step(ctx.defense, bot.ledger, ctx.communities, bot.operator_state);
    if (ctx.events) {
        ctx.events->push_back({bot.day, bot.id, recipient, mutual, decision, verdict});
    }
    if (decision == Decision::Accept && ctx.after_acceptance) ctx.after_acceptance();
    if (verdict.outcome == VerdictOutcome::Block) {
        bot.blocked = true;
        return false;
    }
    return true;
}

std::size_t visible_list_size(const SocialGraph& g, UserId owner, UserId observer) {
    return friend_list_visible(g, owner, observer) ? g.degree(owner) : 0;
}

// Org members of the observed view the bot may still contact, ascending id.
std::vector<UserId> org_candidates(const SocialbotState& bot, const ObservedGraph& observed,
                                   OrgId org, const SimContext& ctx) {
    std::vector<UserId> pool;
    for (const auto& [id, prov] : observed.nodes) {
        if (id == bot.id || ctx.excluded.count(id) != 0) continue;
        if (bot.contacted.count(id) != 0) continue;
        const auto& u = ctx.graph.user(id);
        if (u.org && *u.org == org) pool.push_back(id);
    }
    return pool;
}

void sort_by_visible_degree(std::vector<UserId>& ids, const SocialGraph& g, UserId observer) {
    std::stable_sort(ids.begin(), ids.end(), [&](UserId a, UserId b) {
        const std::size_t da = visible_list_size(g, a, observer);
        const std::size_t db = visible_list_size(g, b, observer);
        if (da != db) return da > db;
        return a < b;
    });
}

}  // namespace

PhaseStatus run_random_phase(SocialbotState& bot, SimContext& ctx) {
    if (bot.blocked) return PhaseStatus::Blocked;
    std::vector<UserId> pool;
    for (UserId id : ctx.graph.user_ids()) {
        if (id == bot.id || ctx.excluded.count(id) != 0) continue;
        if (bot.contacted.count(id) != 0) continue;
        if (ctx.strategy.friendly_tier_required &&
            ctx.graph.user(id).tier != FriendlinessTier::Friendly) {
            continue;
        }
        pool.push_back(id);
    }
    while (bot.friends.size() <= ctx.strategy.random_friend_goal) {
        if (pool.empty()) return PhaseStatus::PoolExhausted;
        const std::size_t pick = ctx.strategy_rng.next_below(pool.size());
        const UserId recipient = pool[pick];
        pool[pick] = pool.back();
        pool.pop_back();
        if (!send_request(bot, recipient, ctx)) return PhaseStatus::Blocked;
    }
    return PhaseStatus::Completed;
}

PhaseStatus run_org_seed_phase(SocialbotState& bot, const ObservedGraph& observed, OrgId org,
                               SimContext& ctx) {
    if (bot.blocked) return PhaseStatus::Blocked;
    std::vector<UserId> pool = org_candidates(bot, observed, org, ctx);
    sort_by_visible_degree(pool, ctx.graph, bot.id);
    for (UserId recipient : pool) {
        if (bot.org_friend_count(ctx.graph, org) > ctx.strategy.org_seed_goal) {
            return PhaseStatus::Completed;
        }
        if (!send_request(bot, recipient, ctx)) return PhaseStatus::Blocked;
    }
    return bot.org_friend_count(ctx.graph, org) > ctx.strategy.org_seed_goal
               ? PhaseStatus::Completed
               : PhaseStatus::PoolExhausted;
}

PhaseStatus run_mutual_expansion_phase(SocialbotState& bot, const ObservedGraph& observed,
                                       OrgId org, SimContext& ctx) {
    if (bot.blocked) return PhaseStatus::Blocked;
    std::vector<UserId> pool = org_candidates(bot, observed, org, ctx);  // ascending ids
    while (!pool.empty()) {
        // strict > on an ascending pool resolves ties to the lowest id
        std::size_t best = pool.size();
        std::size_t best_mutual = 0;
        for (std::size_t i = 0; i < pool.size(); ++i) {
            const std::size_t m = ctx.graph.mutual_friends(bot.id, pool[i]);
            if (m > best_mutual) {
                best = i;
                best_mutual = m;
            }
        }
        if (best_mutual == 0) return PhaseStatus::Completed;  // nobody shares a friend
        const UserId recipient = pool[best];
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(best));
        if (!send_request(bot, recipient, ctx)) return PhaseStatus::Blocked;
    }
    return PhaseStatus::PoolExhausted;
}

std::vector<UserId> select_targets(const std::vector<UserId>& org_members, std::size_t k,
                                   Rng& rng) {
    if (org_members.size() < k) {
        throw ValidationError("target pool smaller than requested k");
    }
    std::vector<UserId> pool = org_members;
    std::sort(pool.begin(), pool.end());
    std::vector<UserId> picked;
    picked.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + rng.next_below(pool.size() - i);
        std::swap(pool[i], pool[j]);
        picked.push_back(pool[i]);
    }
    return picked;
}

namespace {

struct WorkingWorld {
    SocialGraph graph;
    UserId passive_id;
    UserId active_id;
};

WorkingWorld make_world(const SocialGraph& ground, const AttackOptions& options) {
    WorkingWorld w{ground, UserId{0}, UserId{0}};
    const std::uint32_t base = ground.user_count() > 0 ? ground.max_user_id().value + 1 : 0;
    auto make_bot_user = [&](std::uint32_t id) {
        User u;
        u.id = UserId{id};
        u.privacy = Privacy::FriendsOnlyFriendList;
        u.activity = 0.0;
        u.location = options.bot_location;
        return u;
    };
    w.passive_id = w.graph.add_user(make_bot_user(base));
    w.active_id = w.graph.add_user(make_bot_user(base + 1));
    return w;
}

SocialbotState make_bot(UserId id, BotRole role, const AttackOptions& options) {
    SocialbotState bot;
    bot.id = id;
    bot.role = role;
    bot.persona_location = options.bot_location;
    bot.persona_org_claim = options.bot_org_claim;
    return bot;
}

bool is_subview(const ObservedGraph& small, const ObservedGraph& big) {
    for (const auto& [id, prov] : small.nodes) {
        if (big.nodes.count(id) == 0) return false;
    }
    return std::includes(big.edges.begin(), big.edges.end(), small.edges.begin(),
                         small.edges.end());
}

}  // namespace

OrgMiningResult run_org_mining_attack(const SocialGraph& ground, const AttackOptions& options,
                                      Rng& behavior_rng, Rng& strategy_rng) {
    options.crawl.validate();
    options.strategy.validate();
    options.behavior.validate();
    options.defense.validate();

    WorkingWorld world = make_world(ground, options);
    OrgMiningResult result;
    result.passive_view = org_crawl(world.graph, world.passive_id, options.crawl);

    result.bot = make_bot(world.active_id, BotRole::Active, options);
    SimContext ctx{world.graph,     options.behavior, options.defense,
                   options.strategy, options.communities, behavior_rng,
                   strategy_rng,    {world.passive_id, world.active_id}};
    ctx.events = &result.events;

    ObservedGraph last_view = result.passive_view;
    if (options.verify_monotone_views) {
        ctx.after_acceptance = [&]() {
            ObservedGraph now = org_crawl(world.graph, world.active_id, options.crawl);
            if (!is_subview(last_view, now)) result.views_monotone = false;
            last_view = std::move(now);
        };
    }

    run_random_phase(result.bot, ctx);
    run_org_seed_phase(result.bot, result.passive_view, options.crawl.target_org, ctx);
    run_mutual_expansion_phase(result.bot, result.passive_view, options.crawl.target_org, ctx);

    result.active_view = org_crawl(world.graph, world.active_id, options.crawl);
    if (options.verify_monotone_views) {
        if (!is_subview(result.passive_view, result.active_view) ||
            !is_subview(last_view, result.active_view)) {
            result.views_monotone = false;
        }
    }

    result.clusters_before = mcl(result.passive_view, options.mcl);
    result.clusters_after = mcl(result.active_view, options.mcl);
    result.summary = intrusion_summary(result.passive_view, result.active_view,
                                       result.clusters_before.clustering,
                                       result.clusters_after.clustering);
    return result;
}

TargetedAttackResult run_targeted_user_attack(const SocialGraph& ground,
                                              const AttackOptions& options, Rng& behavior_rng,
                                              Rng& strategy_rng) {
    options.crawl.validate();
    options.strategy.validate();
    options.behavior.validate();
    options.defense.validate();

    WorkingWorld world = make_world(ground, options);
    TargetedAttackResult result;
    result.observed = org_crawl(world.graph, world.passive_id, options.crawl);

    const OrgId org = options.crawl.target_org;
    std::vector<UserId> org_pool;
    for (const auto& [id, prov] : result.observed.nodes) {
        const auto& u = world.graph.user(id);
        if (u.org && *u.org == org) org_pool.push_back(id);
    }
    result.targets = select_targets(org_pool, options.strategy.targets_k, strategy_rng);
    const std::set<UserId> target_set(result.targets.begin(), result.targets.end());

    result.bot = make_bot(world.active_id, BotRole::Active, options);
    SimContext ctx{world.graph,     options.behavior, options.defense,
                   options.strategy, options.communities, behavior_rng,
                   strategy_rng,    {world.passive_id, world.active_id}};
    // targets are saved for the final phase; the random phase must not burn them
    ctx.excluded.insert(target_set.begin(), target_set.end());
    ctx.events = &result.events;

    ObservedGraph last_view = result.observed;
    if (options.verify_monotone_views) {
        ctx.after_acceptance = [&]() {
            ObservedGraph now = org_crawl(world.graph, world.active_id, options.crawl);
            if (!is_subview(last_view, now)) result.views_monotone = false;
            last_view = std::move(now);
        };
    }

    run_random_phase(result.bot, ctx);

    // Friend phase: the targets' org friends visible in the crawl, pooled
    // without duplicates, targets themselves excluded.
    std::map<UserId, std::vector<UserId>> friends_of_target;
    for (UserId t : result.targets) {
        std::vector<UserId> friends;
        for (const auto& [a, b] : result.observed.edges) {
            UserId other;
            if (a == t) {
                other = b;
            } else if (b == t) {
                other = a;
            } else {
                continue;
            }
            if (target_set.count(other) != 0 || ctx.excluded.count(other) != 0) continue;
            const auto& u = world.graph.user(other);
            if (u.org && *u.org == org) friends.push_back(other);
        }
        std::sort(friends.begin(), friends.end());
        friends_of_target.emplace(t, std::move(friends));
    }

    std::vector<UserId> order;
    if (options.strategy.order_by_target_degree) {
        std::vector<UserId> ordered_targets = result.targets;
        sort_by_visible_degree(ordered_targets, world.graph, world.active_id);
        std::set<UserId> queued;
        for (UserId t : ordered_targets) {
            std::vector<UserId> friends = friends_of_target.at(t);
            sort_by_visible_degree(friends, world.graph, world.active_id);
            for (UserId f : friends) {
                if (queued.insert(f).second) order.push_back(f);
            }
        }
    } else {
        std::set<UserId> pooled;
        for (const auto& [t, friends] : friends_of_target) {
            pooled.insert(friends.begin(), friends.end());
        }
        order.assign(pooled.begin(), pooled.end());
        sort_by_visible_degree(order, world.graph, world.active_id);
    }

    const std::size_t friend_phase_start = result.bot.ledger.size();
    for (UserId recipient : order) {
        if (result.bot.blocked) break;
        if (result.bot.contacted.count(recipient) != 0) continue;  // already hit in random phase
        send_request(result.bot, recipient, ctx);
    }
    for (std::size_t i = friend_phase_start; i < result.bot.ledger.size(); ++i) {
        ++result.mutual_phase_total;
        if (result.bot.ledger[i].decision == Decision::Accept) ++result.mutual_phase_accepted;
    }

    // Target phase, in selection order.
    std::size_t accepted_targets = 0;
    for (UserId t : result.targets) {
        if (result.bot.blocked) break;
        TargetRequest req;
        req.target = t;
        req.mutual_at_request =
            static_cast<std::uint32_t>(world.graph.mutual_friends(world.active_id, t));
        send_request(result.bot, t, ctx);
        req.accepted = result.bot.ledger.back().decision == Decision::Accept;
        if (req.accepted) ++accepted_targets;
        result.target_requests.push_back(req);
    }
    result.incomplete = result.target_requests.size() < result.targets.size();
    result.success_rate = options.strategy.targets_k > 0
                              ? static_cast<double>(accepted_targets) / options.strategy.targets_k
                              : 0.0;

    if (options.verify_monotone_views) {
        ObservedGraph final_view = org_crawl(world.graph, world.active_id, options.crawl);
        if (!is_subview(result.observed, final_view) || !is_subview(last_view, final_view)) {
            result.views_monotone = false;
        }
    }
    return result;
}

}  // namespace infilsim
