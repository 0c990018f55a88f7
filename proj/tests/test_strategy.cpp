#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <sstream>

#include "infilsim/scenario.hpp"
#include "infilsim/strategy.hpp"

using namespace infilsim;

namespace {

constexpr OrgId kOrg{1};

BehaviorModel always_accept() {
    BehaviorModel m;
    m.friendly_base_accept = 1.0;
    m.ordinary_base_accept = 1.0;
    m.mutual_accept_at_17 = 1.0;
    m.org_claim_verification_prob = 0.0;
    return m;
}

BehaviorModel never_accept() {
    BehaviorModel m;
    m.friendly_base_accept = 0.0;
    m.ordinary_base_accept = 0.0;
    m.mutual_accept_at_17 = 0.0;
    m.org_claim_verification_prob = 0.0;
    return m;
}

// Ordinary users accept exactly when the mutual count reaches five; friendly
// users always accept (their base floors the curve at one).
BehaviorModel threshold_five() {
    BehaviorModel m;
    m.friendly_base_accept = 1.0;
    m.ordinary_base_accept = 0.0;
    m.mutual_logistic_midpoint = 4.5;
    m.mutual_logistic_slope = 60.0;
    m.mutual_accept_at_17 = 1.0;
    m.org_claim_verification_prob = 0.0;
    return m;
}

User plain_user(std::uint32_t id, bool in_org = false,
                FriendlinessTier tier = FriendlinessTier::Ordinary, double activity = 1.0) {
    User u;
    u.id = UserId{id};
    if (in_org) u.org = kOrg;
    u.tier = tier;
    u.activity = activity;
    return u;
}

// Test bench around one active bot; keeps the SimContext references alive.
struct Bench {
    SocialGraph graph;
    CommunityMap communities;
    BehaviorModel model = always_accept();
    DefensePolicy policy = DefensePolicy::defenseless();
    StrategyConfig cfg;
    Rng behavior_rng{101};
    Rng strategy_rng{202};
    SocialbotState bot;
    std::vector<RequestEvent> events;

    void add_bot(std::uint32_t id) {
        User u;
        u.id = UserId{id};
        u.privacy = Privacy::FriendsOnlyFriendList;
        u.activity = 0.0;
        graph.add_user(u);
        bot.id = UserId{id};
        bot.role = BotRole::Active;
    }

    SimContext ctx() {
        SimContext c{graph, model, policy, cfg, communities, behavior_rng, strategy_rng,
                     {bot.id}};
        c.events = &events;
        return c;
    }
};

ObservedGraph view_of(std::initializer_list<std::uint32_t> ids) {
    ObservedGraph v;
    for (std::uint32_t id : ids) v.nodes.emplace(UserId{id}, Provenance::Seed);
    return v;
}

// the observer ids differ between passive and active views; content is what counts
bool same_view_content(const ObservedGraph& a, const ObservedGraph& b) {
    return a.nodes == b.nodes && a.edges == b.edges;
}

void check_ledger_accounting(const SocialbotState& bot) {
    std::uint64_t rejects_ignores = 0;
    std::set<UserId> seen;
    std::set<UserId> friends;
    std::set<UserId> others;
    std::uint32_t last_day = 0;
    for (const auto& e : bot.ledger) {
        REQUIRE(seen.insert(e.recipient).second);  // no duplicate requests
        REQUIRE(e.day >= last_day);
        last_day = e.day;
        if (e.decision == Decision::Accept) {
            friends.insert(e.recipient);
        } else {
            others.insert(e.recipient);
            if (e.decision == Decision::Reject || e.decision == Decision::Ignore) {
                ++rejects_ignores;
            }
        }
    }
    CHECK(bot.unconfirmed == rejects_ignores);
    CHECK(friends == bot.friends);
    CHECK(seen == bot.contacted);
    for (UserId f : friends) CHECK(others.count(f) == 0);  // disjoint outcomes
}

}  // namespace

TEST_CASE("random phase under certain acceptance: 51 friends across three days") {
    Bench b;
    for (std::uint32_t i = 0; i < 60; ++i) {
        b.graph.add_user(plain_user(i, false, FriendlinessTier::Friendly));
    }
    b.add_bot(1000);
    SimContext ctx = b.ctx();
    PhaseStatus status = run_random_phase(b.bot, ctx);
    CHECK(status == PhaseStatus::Completed);
    CHECK(b.bot.friends.size() == 51);
    CHECK(b.bot.ledger.size() == 51);
    std::map<std::uint32_t, int> per_day;
    for (const auto& e : b.bot.ledger) ++per_day[e.day];
    CHECK(per_day == std::map<std::uint32_t, int>{{1, 20}, {2, 20}, {3, 11}});
    check_ledger_accounting(b.bot);
}

TEST_CASE("random phase respects the friendly-tier requirement and reports pool exhaustion") {
    Bench b;
    for (std::uint32_t i = 0; i < 10; ++i) {
        b.graph.add_user(plain_user(i, false,
                                    i < 4 ? FriendlinessTier::Friendly
                                          : FriendlinessTier::Ordinary));
    }
    b.add_bot(1000);
    SimContext ctx = b.ctx();
    CHECK(run_random_phase(b.bot, ctx) == PhaseStatus::PoolExhausted);
    CHECK(b.bot.friends.size() == 4);  // only the friendly users were contacted
}

TEST_CASE("a pre-blocked bot sends nothing") {
    Bench b;
    b.graph.add_user(plain_user(0, false, FriendlinessTier::Friendly));
    b.add_bot(1000);
    b.bot.blocked = true;
    SimContext ctx = b.ctx();
    CHECK(run_random_phase(b.bot, ctx) == PhaseStatus::Blocked);
    CHECK(run_org_seed_phase(b.bot, view_of({0}), kOrg, ctx) == PhaseStatus::Blocked);
    CHECK(run_mutual_expansion_phase(b.bot, view_of({0}), kOrg, ctx) == PhaseStatus::Blocked);
    CHECK(b.bot.ledger.empty());
}

TEST_CASE("random-user accumulation reaches the fifty-friend goal within about a week") {
    std::vector<std::uint32_t> days;
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
        Bench b;
        for (std::uint32_t i = 0; i < 300; ++i) {
            b.graph.add_user(plain_user(i, false, FriendlinessTier::Friendly));
        }
        b.add_bot(1000);
        b.model = default_model(ScenarioKind::FacebookLike);  // friendly base 0.569
        b.behavior_rng = Rng(seed);
        b.strategy_rng = Rng(seed + 1000);
        SimContext ctx = b.ctx();
        REQUIRE(run_random_phase(b.bot, ctx) == PhaseStatus::Completed);
        days.push_back(b.bot.day);
    }
    std::sort(days.begin(), days.end());
    CHECK(days[days.size() / 2] <= 6);  // median
}

TEST_CASE("org seed phase stops when the three-member pool runs out") {
    Bench b;
    for (std::uint32_t i = 0; i < 3; ++i) b.graph.add_user(plain_user(i, true));
    b.add_bot(1000);
    b.cfg.org_seed_goal = 10;
    SimContext ctx = b.ctx();
    CHECK(run_org_seed_phase(b.bot, view_of({0, 1, 2}), kOrg, ctx) == PhaseStatus::PoolExhausted);
    CHECK(b.bot.org_friend_count(b.graph, kOrg) == 3);
}

TEST_CASE("org seed phase orders by visible degree with id tie-breaks") {
    Bench b;
    // org members 4, 2, 9, 1 with degrees 9, 7, 7, 3
    for (std::uint32_t id : {1u, 2u, 4u, 9u}) b.graph.add_user(plain_user(id, true));
    std::uint32_t filler = 100;
    auto attach = [&](std::uint32_t member, int count) {
        for (int i = 0; i < count; ++i) {
            b.graph.add_user(plain_user(filler));
            b.graph.add_edge(UserId{member}, UserId{filler});
            ++filler;
        }
    };
    attach(4, 9);
    attach(2, 7);
    attach(9, 7);
    attach(1, 3);
    b.add_bot(1000);
    b.model = never_accept();  // run through the whole pool
    SimContext ctx = b.ctx();
    CHECK(run_org_seed_phase(b.bot, view_of({1, 2, 4, 9}), kOrg, ctx) ==
          PhaseStatus::PoolExhausted);
    std::vector<std::uint32_t> order;
    for (const auto& e : b.bot.ledger) order.push_back(e.recipient.value);
    CHECK(order == std::vector<std::uint32_t>{4, 2, 9, 1});
}

TEST_CASE("org seed phase counts only org friends toward its goal") {
    Bench b;
    for (std::uint32_t i = 0; i < 5; ++i) b.graph.add_user(plain_user(i, true));
    b.add_bot(1000);
    b.cfg.org_seed_goal = 2;
    SimContext ctx = b.ctx();
    CHECK(run_org_seed_phase(b.bot, view_of({0, 1, 2, 3, 4}), kOrg, ctx) ==
          PhaseStatus::Completed);
    CHECK(b.bot.org_friend_count(b.graph, kOrg) == 3);  // stops once the count exceeds 2
}

TEST_CASE("inactive org members leave the bot with nothing but unconfirmed requests") {
    Bench b;
    for (std::uint32_t i = 0; i < 4; ++i) {
        b.graph.add_user(plain_user(i, true, FriendlinessTier::Ordinary, 0.0));
    }
    b.add_bot(1000);
    SimContext ctx = b.ctx();
    CHECK(run_org_seed_phase(b.bot, view_of({0, 1, 2, 3}), kOrg, ctx) ==
          PhaseStatus::PoolExhausted);
    CHECK(b.bot.org_friend_count(b.graph, kOrg) == 0);
    CHECK(b.bot.unconfirmed == 4);
    for (const auto& e : b.bot.ledger) CHECK(e.decision == Decision::Ignore);
}

TEST_CASE("mutual expansion skips members without a single mutual friend") {
    Bench b;
    b.graph.add_user(plain_user(1));        // a: already a friend
    b.graph.add_user(plain_user(2, true));  // b: friend of a
    b.graph.add_user(plain_user(3, true));  // c: disconnected
    b.graph.add_edge(UserId{1}, UserId{2});
    b.add_bot(1000);
    b.graph.add_edge(UserId{1000}, UserId{1});
    b.bot.friends.insert(UserId{1});
    b.bot.contacted.insert(UserId{1});
    SimContext ctx = b.ctx();
    CHECK(run_mutual_expansion_phase(b.bot, view_of({2, 3}), kOrg, ctx) ==
          PhaseStatus::Completed);
    std::vector<std::uint32_t> order;
    for (const auto& e : b.bot.ledger) order.push_back(e.recipient.value);
    CHECK(order == std::vector<std::uint32_t>{2});  // c never had a mutual friend
}

TEST_CASE("mutual expansion follows the greedy hand trace") {
    Bench b;
    for (std::uint32_t i = 1; i <= 6; ++i) b.graph.add_user(plain_user(i, true));
    b.graph.add_edge(UserId{1}, UserId{2});
    b.graph.add_edge(UserId{1}, UserId{3});
    b.graph.add_edge(UserId{2}, UserId{3});
    b.graph.add_edge(UserId{3}, UserId{4});
    b.graph.add_edge(UserId{4}, UserId{5});
    b.add_bot(1000);
    b.graph.add_edge(UserId{1000}, UserId{1});
    b.bot.friends.insert(UserId{1});
    b.bot.contacted.insert(UserId{1});
    SimContext ctx = b.ctx();
    CHECK(run_mutual_expansion_phase(b.bot, view_of({2, 3, 4, 5, 6}), kOrg, ctx) ==
          PhaseStatus::Completed);
    // hand trace with certain acceptance: 2 (tie with 3, lower id), then 3,
    // then 4 (via 3), then 5 (via 4); 6 is isolated and never contacted
    std::vector<std::uint32_t> order;
    for (const auto& e : b.bot.ledger) order.push_back(e.recipient.value);
    CHECK(order == std::vector<std::uint32_t>{2, 3, 4, 5});
    CHECK(b.bot.contacted.count(UserId{6}) == 0);
}

TEST_CASE("mutual expansion on an empty org is a no-op") {
    Bench b;
    b.add_bot(1000);
    SimContext ctx = b.ctx();
    CHECK(run_mutual_expansion_phase(b.bot, ObservedGraph{}, kOrg, ctx) ==
          PhaseStatus::PoolExhausted);
    CHECK(b.bot.ledger.empty());
}

TEST_CASE("target selection is uniform, seeded, and validated") {
    std::vector<UserId> org;
    for (std::uint32_t i = 0; i < 12; ++i) org.push_back(UserId{i});

    Rng rng_a(99);
    Rng rng_b(99);
    auto a = select_targets(org, 5, rng_a);
    auto b = select_targets(org, 5, rng_b);
    CHECK(a == b);  // same seed, same picks
    CHECK(a.size() == 5);
    CHECK(std::set<UserId>(a.begin(), a.end()).size() == 5);

    Rng rng_c(7);
    auto whole = select_targets(org, org.size(), rng_c);
    CHECK(std::set<UserId>(whole.begin(), whole.end()) ==
          std::set<UserId>(org.begin(), org.end()));

    Rng rng_d(7);
    CHECK(select_targets(org, 0, rng_d).empty());
    CHECK_THROWS_AS(select_targets(org, 13, rng_d), ValidationError);
}

namespace {

AttackOptions options_for(const GeneratedOrgGraph& gen, OrgId org, std::size_t seed_count = 5) {
    AttackOptions opt;
    const auto members = gen.graph.org_members(org);
    opt.crawl.seeds.assign(members.begin(),
                           members.begin() + static_cast<std::ptrdiff_t>(
                                                 std::min(seed_count, members.size())));
    opt.crawl.target_org = org;
    opt.strategy.scenario_kind = ScenarioKind::FacebookLike;
    opt.behavior = default_model(ScenarioKind::FacebookLike);
    opt.defense = DefensePolicy::facebook_like();
    opt.communities = gen.community_of;
    return opt;
}

GeneratedOrgGraph mining_fixture(double fraction_private, std::uint64_t seed) {
    OrgGraphSpec spec;
    spec.n_members = 120;
    spec.n_outsiders = 200;
    spec.community_count = 6;
    spec.intra_community_edge_prob = 0.15;
    spec.inter_community_edge_prob = 0.004;
    spec.fraction_private = fraction_private;
    spec.fraction_inactive = 0.1;
    spec.friendly_fraction = 0.4;
    spec.org = OrgId{0};
    spec.rng_seed = seed;
    return generate_org_graph(spec);
}

}  // namespace

TEST_CASE("with nothing hidden the active crawl adds nothing") {
    GeneratedOrgGraph gen = mining_fixture(0.0, 21);
    AttackOptions opt = options_for(gen, OrgId{0});
    opt.verify_monotone_views = true;
    Rng behavior(1);
    Rng strategy(2);
    OrgMiningResult r = run_org_mining_attack(gen.graph, opt, behavior, strategy);
    CHECK(same_view_content(r.passive_view, r.active_view));
    CHECK(r.summary.node_gain_pct == doctest::Approx(0.0));
    CHECK(r.summary.edge_gain_pct == doctest::Approx(0.0));
    CHECK(r.views_monotone);
    check_ledger_accounting(r.bot);
}

TEST_CASE("with acceptance forced to zero the views still match") {
    GeneratedOrgGraph gen = mining_fixture(0.5, 22);
    AttackOptions opt = options_for(gen, OrgId{0});
    opt.behavior = never_accept();
    Rng behavior(3);
    Rng strategy(4);
    OrgMiningResult r = run_org_mining_attack(gen.graph, opt, behavior, strategy);
    CHECK(r.bot.friends.empty());
    CHECK(same_view_content(r.passive_view, r.active_view));
    CHECK(r.summary.node_gain_pct == doctest::Approx(0.0));
}

TEST_CASE("a privacy-heavy org yields strictly more through the active bot") {
    GeneratedOrgGraph gen = mining_fixture(0.6, 23);
    AttackOptions opt = options_for(gen, OrgId{0});
    opt.verify_monotone_views = true;
    Rng behavior(5);
    Rng strategy(6);
    OrgMiningResult r = run_org_mining_attack(gen.graph, opt, behavior, strategy);
    CHECK(r.views_monotone);
    CHECK(r.active_view.nodes.size() >= r.passive_view.nodes.size());
    CHECK(r.active_view.edges.size() > r.passive_view.edges.size());
    CHECK(r.summary.edge_gain_pct > 0.0);
    check_ledger_accounting(r.bot);
    // every passive node survives into the active view
    for (const auto& [id, prov] : r.passive_view.nodes) CHECK(r.active_view.contains(id));
}

TEST_CASE("event logs replay bit for bit under one seed") {
    GeneratedOrgGraph gen = mining_fixture(0.5, 24);
    AttackOptions opt = options_for(gen, OrgId{0});
    auto run_once = [&] {
        Rng behavior(77);
        Rng strategy(88);
        return run_org_mining_attack(gen.graph, opt, behavior, strategy);
    };
    OrgMiningResult a = run_once();
    OrgMiningResult b = run_once();
    REQUIRE(a.events.size() == b.events.size());
    for (std::size_t i = 0; i < a.events.size(); ++i) {
        CHECK(a.events[i].day == b.events[i].day);
        CHECK(a.events[i].recipient == b.events[i].recipient);
        CHECK(a.events[i].mutual_count == b.events[i].mutual_count);
        CHECK(a.events[i].decision == b.events[i].decision);
        CHECK(a.events[i].verdict == b.events[i].verdict);
    }
    CHECK(a.summary.node_gain_pct == b.summary.node_gain_pct);
    CHECK(a.clusters_before.clustering.assignment == b.clusters_before.clustering.assignment);
}

TEST_CASE("an all-ignoring population blocks the bot at the hundredth unconfirmed request") {
    SocialGraph g;
    for (std::uint32_t i = 0; i < 150; ++i) {
        g.add_user(plain_user(i, false, FriendlinessTier::Friendly, 0.0));
    }
    for (std::uint32_t i = 150; i < 155; ++i) g.add_user(plain_user(i, true));

    GeneratedOrgGraph gen;
    gen.graph = g;
    AttackOptions opt = options_for(gen, kOrg);
    opt.strategy.scenario_kind = ScenarioKind::XingLike;
    opt.behavior = default_model(ScenarioKind::XingLike);
    opt.defense = DefensePolicy::xing_like();
    Rng behavior(9);
    Rng strategy(10);
    OrgMiningResult r = run_org_mining_attack(gen.graph, opt, behavior, strategy);

    CHECK(r.bot.blocked);
    CHECK(r.bot.ledger.size() == 100);  // the hundredth unconfirmed is the last entry
    CHECK(r.bot.unconfirmed == 100);
    REQUIRE_FALSE(r.events.empty());
    CHECK(r.events.back().verdict.outcome == VerdictOutcome::Block);
    CHECK(r.events.back().verdict.reason == VerdictReason::UnconfirmedCap);
    for (std::size_t i = 0; i + 1 < r.events.size(); ++i) {
        CHECK(r.events[i].verdict.outcome == VerdictOutcome::Ok);
    }
}

TEST_CASE("a distant persona drives acceptance low enough to warn and then block") {
    SocialGraph g;
    for (std::uint32_t i = 0; i < 200; ++i) {
        User u = plain_user(i, false, FriendlinessTier::Friendly);
        u.location = 0;
        g.add_user(u);
    }
    for (std::uint32_t i = 200; i < 205; ++i) g.add_user(plain_user(i, true));
    GeneratedOrgGraph gen;
    gen.graph = g;
    AttackOptions opt = options_for(gen, kOrg);
    opt.bot_location = 9;  // thousands of kilometers away, so to speak
    opt.defense.min_acceptance_rate = 0.3;
    opt.defense.acceptance_window = 50;
    Rng behavior(11);
    Rng strategy(12);
    OrgMiningResult r = run_org_mining_attack(gen.graph, opt, behavior, strategy);
    CHECK(r.bot.blocked);
    bool warned = false;
    for (const auto& e : r.events) {
        if (e.verdict.outcome == VerdictOutcome::Warn) warned = true;
    }
    CHECK(warned);  // one warning before the block
    CHECK(r.events.back().verdict.reason == VerdictReason::LowAcceptance);
}

TEST_CASE("targeted attack follows the documented rules on a scripted clique") {
    // Core clique 0..5 (friendly), satellites 6..9 with 5, 4, 5, 2 core links.
    SocialGraph g;
    for (std::uint32_t i = 0; i < 6; ++i) {
        g.add_user(plain_user(i, true, FriendlinessTier::Friendly));
    }
    for (std::uint32_t i = 6; i < 10; ++i) g.add_user(plain_user(i, true));
    for (std::uint32_t i = 0; i < 6; ++i) {
        for (std::uint32_t j = i + 1; j < 6; ++j) g.add_edge(UserId{i}, UserId{j});
    }
    auto attach = [&](std::uint32_t sat, std::initializer_list<std::uint32_t> cores) {
        for (std::uint32_t c : cores) g.add_edge(UserId{sat}, UserId{c});
    };
    attach(6, {0, 1, 2, 3, 4});
    attach(7, {0, 1, 2, 3});
    attach(8, {1, 2, 3, 4, 5});
    attach(9, {0, 1});

    GeneratedOrgGraph gen;
    gen.graph = g;
    AttackOptions opt = options_for(gen, kOrg, 1);
    opt.behavior = threshold_five();
    opt.defense = DefensePolicy::defenseless();
    opt.strategy.targets_k = 4;

    const std::uint64_t kStrategySeed = 777;
    Rng behavior(555);
    Rng strategy(kStrategySeed);
    TargetedAttackResult r = run_targeted_user_attack(g, opt, behavior, strategy);

    // Independent replay of the documented rules: same selection stream, then
    // friends and mutual counts tracked by hand over the known adjacency.
    Rng sim_rng(kStrategySeed);
    std::vector<UserId> pool;
    for (std::uint32_t i = 0; i < 10; ++i) pool.push_back(UserId{i});
    const std::vector<UserId> expected_targets = select_targets(pool, 4, sim_rng);
    REQUIRE(r.targets == expected_targets);
    const std::set<UserId> target_set(expected_targets.begin(), expected_targets.end());

    auto is_friendly = [&](UserId v) { return g.user(v).tier == FriendlinessTier::Friendly; };
    std::set<UserId> sim_friends;
    std::set<UserId> sim_contacted;
    // random phase: friendly non-targets, uniform swap-remove sampling; the
    // friendly base of one makes every one of them accept
    std::vector<UserId> random_pool;
    for (std::uint32_t i = 0; i < 6; ++i) {
        if (target_set.count(UserId{i}) == 0) random_pool.push_back(UserId{i});
    }
    while (!random_pool.empty()) {  // goal 50 is unreachable; pool drains
        const std::size_t pick = sim_rng.next_below(random_pool.size());
        sim_friends.insert(random_pool[pick]);
        sim_contacted.insert(random_pool[pick]);
        random_pool[pick] = random_pool.back();
        random_pool.pop_back();
    }

    // friend phase: pooled target friends ordered by degree desc then id
    std::set<UserId> pooled;
    for (UserId t : expected_targets) {
        for (UserId n : g.neighbors(t)) {
            if (target_set.count(n) == 0) pooled.insert(n);
        }
    }
    std::vector<UserId> order(pooled.begin(), pooled.end());
    std::stable_sort(order.begin(), order.end(), [&](UserId a, UserId b) {
        if (g.degree(a) != g.degree(b)) return g.degree(a) > g.degree(b);
        return a < b;
    });
    auto mutual_with = [&](UserId v) {
        std::size_t m = 0;
        for (UserId n : g.neighbors(v)) m += sim_friends.count(n);
        return m;
    };
    std::vector<std::pair<UserId, bool>> expected_sequence;
    for (UserId c : order) {
        if (sim_contacted.count(c) != 0) continue;  // already hit in the random phase
        const bool accepted = is_friendly(c) || mutual_with(c) >= 5;
        expected_sequence.emplace_back(c, accepted);
        sim_contacted.insert(c);
        if (accepted) sim_friends.insert(c);
    }
    std::vector<std::pair<UserId, std::pair<std::uint32_t, bool>>> expected_targets_outcome;
    for (UserId t : expected_targets) {
        const auto m = static_cast<std::uint32_t>(mutual_with(t));
        const bool accepted = is_friendly(t) || m >= 5;
        expected_targets_outcome.emplace_back(t, std::make_pair(m, accepted));
        if (accepted) sim_friends.insert(t);
    }

    // compare the engine's friend-phase slice and target rows to the replay
    const std::size_t random_count = r.bot.ledger.size() - expected_sequence.size() -
                                     expected_targets_outcome.size();
    std::size_t at = random_count;
    for (const auto& [recipient, accepted] : expected_sequence) {
        REQUIRE(at < r.bot.ledger.size());
        CHECK(r.bot.ledger[at].recipient == recipient);
        CHECK((r.bot.ledger[at].decision == Decision::Accept) == accepted);
        ++at;
    }
    REQUIRE(r.target_requests.size() == expected_targets_outcome.size());
    for (std::size_t i = 0; i < r.target_requests.size(); ++i) {
        CHECK(r.target_requests[i].target == expected_targets_outcome[i].first);
        CHECK(r.target_requests[i].mutual_at_request == expected_targets_outcome[i].second.first);
        CHECK(r.target_requests[i].accepted == expected_targets_outcome[i].second.second);
    }
    std::size_t accepted_targets = 0;
    for (const auto& t : r.target_requests) accepted_targets += t.accepted ? 1 : 0;
    CHECK(r.success_rate == doctest::Approx(static_cast<double>(accepted_targets) / 4.0));
    CHECK_FALSE(r.incomplete);
    check_ledger_accounting(r.bot);
}

TEST_CASE("targeted attack: an entirely inactive org never accepts a target") {
    OrgGraphSpec spec;
    spec.n_members = 40;
    spec.community_count = 4;
    spec.intra_community_edge_prob = 0.4;
    spec.fraction_inactive = 1.0;
    spec.org = kOrg;
    spec.rng_seed = 77;
    GeneratedOrgGraph gen = generate_org_graph(spec);
    AttackOptions opt = options_for(gen, kOrg);
    opt.defense = DefensePolicy::defenseless();
    opt.strategy.targets_k = 10;
    Rng behavior(20);
    Rng strategy(21);
    TargetedAttackResult r = run_targeted_user_attack(gen.graph, opt, behavior, strategy);
    CHECK(r.success_rate == doctest::Approx(0.0));
    for (const auto& t : r.target_requests) CHECK_FALSE(t.accepted);
}

TEST_CASE("targeted attack: target requests always follow the friend phase") {
    GeneratedOrgGraph gen = mining_fixture(0.3, 31);
    AttackOptions opt = options_for(gen, OrgId{0});
    opt.strategy.targets_k = 8;
    opt.verify_monotone_views = true;
    Rng behavior(41);
    Rng strategy(42);
    TargetedAttackResult r = run_targeted_user_attack(gen.graph, opt, behavior, strategy);
    CHECK(r.views_monotone);
    const std::set<UserId> target_set(r.targets.begin(), r.targets.end());
    std::size_t first_target_index = r.events.size();
    std::size_t last_non_target_index = 0;
    for (std::size_t i = 0; i < r.events.size(); ++i) {
        if (target_set.count(r.events[i].recipient) != 0) {
            first_target_index = std::min(first_target_index, i);
        } else {
            last_non_target_index = i;
        }
    }
    if (first_target_index < r.events.size()) {
        CHECK(last_non_target_index < first_target_index);
    }
    CHECK(r.mutual_phase_total >= r.mutual_phase_accepted);
    check_ledger_accounting(r.bot);
}

TEST_CASE("targeted attack: blocked before the target phase is flagged incomplete") {
    SocialGraph g;
    for (std::uint32_t i = 0; i < 140; ++i) {
        g.add_user(plain_user(i, false, FriendlinessTier::Friendly, 0.0));
    }
    for (std::uint32_t i = 140; i < 160; ++i) g.add_user(plain_user(i, true));
    for (std::uint32_t i = 140; i + 1 < 160; ++i) g.add_edge(UserId{i}, UserId{i + 1});
    GeneratedOrgGraph gen;
    gen.graph = g;
    AttackOptions opt = options_for(gen, kOrg);
    opt.strategy.scenario_kind = ScenarioKind::XingLike;
    opt.behavior = default_model(ScenarioKind::XingLike);
    opt.defense = DefensePolicy::xing_like();  // blocks at 100 unconfirmed, mid random phase
    Rng behavior(61);
    Rng strategy(62);
    TargetedAttackResult r = run_targeted_user_attack(g, opt, behavior, strategy);
    CHECK(r.bot.blocked);
    CHECK(r.incomplete);
    CHECK(r.target_requests.empty());
    CHECK(r.success_rate == doctest::Approx(0.0));
    CHECK(r.bot.ledger.size() == 100);
}
