#include "infilsim/visibility.hpp"

#include <algorithm>
#include <deque>

namespace infilsim {

std::vector<UserId> ObservedGraph::node_ids() const {
    std::vector<UserId> ids;
    ids.reserve(nodes.size());
    for (const auto& [id, prov] : nodes) ids.push_back(id);
    return ids;
}

void CrawlConfig::validate() const {
    if (seeds.empty()) throw ValidationError("crawl seeds must be non-empty");
    if (!(homophily_threshold >= 0.0 && homophily_threshold <= 1.0)) {
        throw ValidationError("homophily_threshold must be in [0,1]");
    }
}

bool friend_list_visible(const SocialGraph& g, UserId owner, UserId observer) {
    if (owner == observer) return true;
    if (g.user(owner).privacy == Privacy::PublicFriendList) return true;
    return g.has_edge(owner, observer);
}

std::vector<UserId> visible_friend_list(const SocialGraph& g, UserId owner, UserId observer) {
    g.user(observer);  // lookup check
    if (!friend_list_visible(g, owner, observer)) return {};
    return g.neighbors(owner);
}

namespace {

struct CrawlState {
    // id -> discovery round; doubles as the discovered set
    std::map<UserId, std::uint32_t> round;
    std::map<UserId, Provenance> provenance;
    std::set<UserId> expanded;
};

// Fraction of u's neighbors that are already discovered org members. The
// denominator is u's full degree (minus the observer), which keeps the score
// non-decreasing as discovery grows.
double org_neighbor_fraction(const SocialGraph& g, UserId u, UserId observer, OrgId org,
                             const CrawlState& st) {
    std::size_t degree = 0;
    std::size_t discovered_org = 0;
    for (UserId v : g.neighbors(u)) {
        if (v == observer) continue;
        ++degree;
        if (st.round.count(v) != 0) {
            const auto& user = g.user(v);
            if (user.org && *user.org == org) ++discovered_org;
        }
    }
    if (degree == 0) return 0.0;
    return static_cast<double>(discovered_org) / static_cast<double>(degree);
}

bool qualifies(const SocialGraph& g, UserId u, UserId observer, const CrawlConfig& cfg,
               const CrawlState& st) {
    const auto& user = g.user(u);
    if (user.org && *user.org == cfg.target_org) return true;
    return org_neighbor_fraction(g, u, observer, cfg.target_org, st) >= cfg.homophily_threshold;
}

}  // namespace

ObservedGraph org_crawl(const SocialGraph& g, UserId observer, const CrawlConfig& cfg) {
    cfg.validate();
    g.user(observer);
    for (UserId s : cfg.seeds) {
        if (!g.has_user(s)) throw ValidationError("crawl seed " + std::to_string(s.value) + " not in graph");
    }

    CrawlState st;
    std::vector<UserId> sorted_seeds = cfg.seeds;
    std::sort(sorted_seeds.begin(), sorted_seeds.end());
    for (UserId s : sorted_seeds) {
        st.round.emplace(s, 0);
        st.provenance.emplace(s, Provenance::Seed);
    }

    const bool budgeted = cfg.max_nodes != 0;

    // Expand to a fixpoint. A node that fails the homophily test now may pass
    // once more of its neighbors are discovered, so sweep repeatedly; each
    // sweep visits pending nodes in (discovery-round, id) order.
    bool progressed = true;
    bool budget_hit = budgeted && st.round.size() >= cfg.max_nodes;
    while (progressed && !budget_hit) {
        progressed = false;
        std::vector<std::pair<std::uint32_t, UserId>> pending;
        for (const auto& [id, round] : st.round) {
            if (st.expanded.count(id) == 0) pending.emplace_back(round, id);
        }
        std::sort(pending.begin(), pending.end());
        for (const auto& [round, u] : pending) {
            if (budget_hit) break;
            if (!qualifies(g, u, observer, cfg, st)) continue;
            st.expanded.insert(u);
            progressed = true;
            for (UserId v : visible_friend_list(g, u, observer)) {
                // the observer is the instrument, never part of the view
                if (v == observer) continue;
                if (st.round.count(v) != 0) continue;
                if (budgeted && st.round.size() >= cfg.max_nodes) {
                    budget_hit = true;
                    break;
                }
                st.round.emplace(v, round + 1);
                st.provenance.emplace(v, Provenance::FriendListExpansion);
            }
        }
    }

    ObservedGraph out;
    out.observer = observer;
    for (const auto& [id, round] : st.round) {
        const auto& user = g.user(id);
        const bool org_declared = user.org && *user.org == cfg.target_org;
        if (org_declared || st.provenance.at(id) == Provenance::Seed) {
            out.nodes.emplace(id, st.provenance.at(id));
        }
    }
    // An edge is observed when it shows up in a fetched friend list of either
    // endpoint; both endpoints must be result nodes.
    for (const auto& [id, prov] : out.nodes) {
        if (st.expanded.count(id) == 0) continue;
        for (UserId v : visible_friend_list(g, id, observer)) {
            if (out.nodes.count(v) == 0) continue;
            UserId a = id, b = v;
            if (b < a) std::swap(a, b);
            out.edges.emplace(a, b);
        }
    }
    return out;
}

}  // namespace infilsim
