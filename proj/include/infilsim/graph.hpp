#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "infilsim/errors.hpp"

namespace infilsim {

struct UserId {
    std::uint32_t value = 0;
    auto operator<=>(const UserId&) const = default;
};

struct OrgId {
    std::uint32_t value = 0;
    auto operator<=>(const OrgId&) const = default;
};

enum class Privacy { PublicFriendList, FriendsOnlyFriendList };
enum class FriendlinessTier { Ordinary, Friendly };

struct User {
    UserId id;
    std::optional<OrgId> org;                              // declared workplace, if any
    Privacy privacy = Privacy::PublicFriendList;
    double activity = 1.0;                                 // probability the user ever responds
    std::uint32_t location = 0;                            // opaque region tag
    FriendlinessTier tier = FriendlinessTier::Ordinary;
};

/// Ground-truth undirected friendship graph. Degrees are always derived from
/// the edge set; there is no cached friend counter to drift out of sync.
class SocialGraph {
public:
    SocialGraph() = default;

    /// Adds a user; throws ValidationError on duplicate id or bad activity.
    UserId add_user(User user);

    /// Adds an undirected edge. Returns false if it was already present.
    /// Throws LookupError on unknown endpoints, ValidationError on self-loops.
    bool add_edge(UserId a, UserId b);

    bool has_user(UserId id) const noexcept;
    bool has_edge(UserId a, UserId b) const;

    const User& user(UserId id) const;

    std::size_t user_count() const noexcept { return users_.size(); }
    std::size_t edge_count() const noexcept { return edge_count_; }

    std::size_t degree(UserId id) const;

    /// Neighbor ids in ascending order.
    const std::vector<UserId>& neighbors(UserId id) const;

    /// Count of shared neighbors, excluding a and b themselves. Requires a != b.
    std::size_t mutual_friends(UserId a, UserId b) const;

    std::vector<UserId> user_ids() const;               // ascending
    std::vector<UserId> org_members(OrgId org) const;   // ascending
    std::vector<std::pair<UserId, UserId>> edges() const;  // u < v, sorted

    /// Highest id currently in the graph; handy for allocating fresh ids.
    UserId max_user_id() const;

private:
    std::size_t slot(UserId id) const;

    std::unordered_map<std::uint32_t, std::size_t> index_;
    std::vector<User> users_;
    std::vector<std::vector<UserId>> adjacency_;
    std::size_t edge_count_ = 0;
};

/// Parameters for the synthetic organizational graph generator: a planted
/// partition over org members, plus a halo of outsiders attached with the
/// inter-community probability.
struct OrgGraphSpec {
    std::uint32_t n_members = 0;
    std::uint32_t n_outsiders = 0;
    std::uint32_t community_count = 1;
    double intra_community_edge_prob = 0.0;
    double inter_community_edge_prob = 0.0;
    double fraction_private = 0.0;
    double fraction_inactive = 0.0;
    double friendly_fraction = 0.0;
    std::map<std::uint32_t, double> location_distribution;  // region tag -> weight
    std::uint64_t rng_seed = 0;
    OrgId org{0};

    /// Throws ValidationError naming the offending field.
    void validate() const;

    bool operator==(const OrgGraphSpec&) const = default;
};

/// Ground-truth community label per user id value. Members carry their planted
/// community (0..community_count-1); outsiders share the label community_count.
using CommunityMap = std::unordered_map<std::uint32_t, std::uint32_t>;

struct GeneratedOrgGraph {
    SocialGraph graph;
    CommunityMap community_of;
};

/// Deterministic for a fixed spec (including seed). Member ids are
/// 0..n_members-1 with round-robin community assignment; outsider ids follow.
/// Attribute draws and edge draws use separate child streams, so sweeping an
/// attribute fraction (e.g. fraction_private) leaves the topology unchanged.
GeneratedOrgGraph generate_org_graph(const OrgGraphSpec& spec);

}  // namespace infilsim

template <>
struct std::hash<infilsim::UserId> {
    std::size_t operator()(const infilsim::UserId& id) const noexcept {
        return std::hash<std::uint32_t>{}(id.value);
    }
};
