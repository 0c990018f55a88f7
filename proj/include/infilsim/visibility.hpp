#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "infilsim/graph.hpp"

namespace infilsim {

enum class Provenance { Seed, FriendListExpansion };

/// What one observer managed to see of the ground truth: a strict subset view.
/// Nodes and edges always exist in the underlying graph; nothing is fabricated.
struct ObservedGraph {
    UserId observer;
    std::map<UserId, Provenance> nodes;
    std::set<std::pair<UserId, UserId>> edges;  // normalized u < v

    bool contains(UserId id) const { return nodes.count(id) != 0; }
    bool contains_edge(UserId a, UserId b) const {
        if (b < a) std::swap(a, b);
        return edges.count({a, b}) != 0;
    }
    std::vector<UserId> node_ids() const;

    bool operator==(const ObservedGraph&) const = default;
};

struct CrawlConfig {
    std::vector<UserId> seeds;
    OrgId target_org{0};
    double homophily_threshold = 0.5;
    std::uint64_t max_nodes = 0;  // 0 = unlimited

    void validate() const;
};

/// Friend list of `owner` as seen by `observer`: the full neighbor set when the
/// owner's list is public, the observer is a friend, or the observer is the
/// owner; empty otherwise.
std::vector<UserId> visible_friend_list(const SocialGraph& g, UserId owner, UserId observer);

/// True when `observer` can read `owner`'s friend list.
bool friend_list_visible(const SocialGraph& g, UserId owner, UserId observer);

/// Frontier crawl from the seeds over the observer's view of the graph.
///
/// A discovered user is expanded (its visible friend list fetched) when it
/// declares the target org, or when the fraction of its neighbors that are
/// both already discovered and org-declaring reaches the homophily threshold
/// (the observer itself never counts as evidence). Expansion repeats until no
/// further node qualifies, so the result is a closure: independent of
/// processing order, and monotone in the observer's friend set. The frontier
/// is still processed in (discovery-round, id) order so provenance and event
/// order are reproducible.
///
/// The returned graph holds the seeds plus every discovered org-declaring
/// node, and each ground-truth edge between result nodes that shows up in at
/// least one fetched friend list.
ObservedGraph org_crawl(const SocialGraph& g, UserId observer, const CrawlConfig& cfg);

}  // namespace infilsim
