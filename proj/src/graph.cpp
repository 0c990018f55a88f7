#include "infilsim/graph.hpp"

#include <algorithm>

#include "infilsim/rng.hpp"

namespace infilsim {

namespace {

std::string id_str(UserId id) { return std::to_string(id.value); }

}  // namespace

UserId SocialGraph::add_user(User user) {
    if (index_.count(user.id.value) != 0) {
        throw ValidationError("duplicate user id " + id_str(user.id));
    }
    if (user.activity < 0.0 || user.activity > 1.0) {
        throw ValidationError("activity must be in [0,1] for user " + id_str(user.id));
    }
    index_.emplace(user.id.value, users_.size());
    users_.push_back(user);
    adjacency_.emplace_back();
    return user.id;
}

std::size_t SocialGraph::slot(UserId id) const {
    auto it = index_.find(id.value);
    if (it == index_.end()) throw LookupError("unknown user id " + id_str(id));
    return it->second;
}

bool SocialGraph::has_user(UserId id) const noexcept { return index_.count(id.value) != 0; }

bool SocialGraph::add_edge(UserId a, UserId b) {
    if (a == b) throw ValidationError("self-loop on user id " + id_str(a));
    std::size_t sa = slot(a);
    std::size_t sb = slot(b);
    auto& na = adjacency_[sa];
    auto pos = std::lower_bound(na.begin(), na.end(), b);
    if (pos != na.end() && *pos == b) return false;
    na.insert(pos, b);
    auto& nb = adjacency_[sb];
    nb.insert(std::lower_bound(nb.begin(), nb.end(), a), a);
    ++edge_count_;
    return true;
}

bool SocialGraph::has_edge(UserId a, UserId b) const {
    const auto& na = adjacency_[slot(a)];
    slot(b);
    return std::binary_search(na.begin(), na.end(), b);
}

const User& SocialGraph::user(UserId id) const { return users_[slot(id)]; }

std::size_t SocialGraph::degree(UserId id) const { return adjacency_[slot(id)].size(); }

const std::vector<UserId>& SocialGraph::neighbors(UserId id) const { return adjacency_[slot(id)]; }

std::size_t SocialGraph::mutual_friends(UserId a, UserId b) const {
    if (a == b) throw ValidationError("mutual_friends requires distinct users");
    const auto& na = adjacency_[slot(a)];
    const auto& nb = adjacency_[slot(b)];
    std::size_t count = 0;
    auto ia = na.begin();
    auto ib = nb.begin();
    while (ia != na.end() && ib != nb.end()) {
        if (*ia < *ib) {
            ++ia;
        } else if (*ib < *ia) {
            ++ib;
        } else {
            // no self-loops, so *ia can never be a or b here
            ++count;
            ++ia;
            ++ib;
        }
    }
    return count;
}

std::vector<UserId> SocialGraph::user_ids() const {
    std::vector<UserId> ids;
    ids.reserve(users_.size());
    for (const auto& u : users_) ids.push_back(u.id);
    std::sort(ids.begin(), ids.end());
    return ids;
}

std::vector<UserId> SocialGraph::org_members(OrgId org) const {
    std::vector<UserId> ids;
    for (const auto& u : users_) {
        if (u.org && *u.org == org) ids.push_back(u.id);
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

std::vector<std::pair<UserId, UserId>> SocialGraph::edges() const {
    std::vector<std::pair<UserId, UserId>> out;
    out.reserve(edge_count_);
    for (std::size_t i = 0; i < users_.size(); ++i) {
        UserId a = users_[i].id;
        for (UserId b : adjacency_[i]) {
            if (a < b) out.emplace_back(a, b);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

UserId SocialGraph::max_user_id() const {
    if (users_.empty()) throw LookupError("max_user_id on empty graph");
    UserId best = users_.front().id;
    for (const auto& u : users_) best = std::max(best, u.id);
    return best;
}

void OrgGraphSpec::validate() const {
    auto check_fraction = [](double v, const char* name) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw ValidationError(std::string(name) + " must be in [0,1]");
        }
    };
    check_fraction(intra_community_edge_prob, "intra_community_edge_prob");
    check_fraction(inter_community_edge_prob, "inter_community_edge_prob");
    check_fraction(fraction_private, "fraction_private");
    check_fraction(fraction_inactive, "fraction_inactive");
    check_fraction(friendly_fraction, "friendly_fraction");
    if (community_count == 0) throw ValidationError("community_count must be positive");
    if (!location_distribution.empty()) {
        double total = 0.0;
        for (const auto& [region, weight] : location_distribution) {
            if (weight < 0.0) throw ValidationError("location_distribution weights must be non-negative");
            total += weight;
        }
        if (total <= 0.0) throw ValidationError("location_distribution weights must sum to a positive value");
    }
}

GeneratedOrgGraph generate_org_graph(const OrgGraphSpec& spec) {
    spec.validate();

    Rng root(spec.rng_seed);
    Rng attr_rng = root.child(1);
    Rng edge_rng = root.child(2);

    const std::uint32_t total = spec.n_members + spec.n_outsiders;
    GeneratedOrgGraph out;

    // Cumulative location table over ascending region tags.
    std::vector<std::pair<std::uint32_t, double>> location_cdf;
    if (!spec.location_distribution.empty()) {
        double sum = 0.0;
        for (const auto& [region, weight] : spec.location_distribution) sum += weight;
        double acc = 0.0;
        for (const auto& [region, weight] : spec.location_distribution) {
            acc += weight / sum;
            location_cdf.emplace_back(region, acc);
        }
    }
    auto sample_location = [&]() -> std::uint32_t {
        if (location_cdf.empty()) return 0;
        double x = attr_rng.next_unit();
        for (const auto& [region, cum] : location_cdf) {
            if (x < cum) return region;
        }
        return location_cdf.back().first;
    };

    auto community_of = [&](std::uint32_t i) -> std::uint32_t {
        if (i < spec.n_members) return i % spec.community_count;
        return spec.community_count;  // shared outsider label
    };

    for (std::uint32_t i = 0; i < total; ++i) {
        User u;
        u.id = UserId{i};
        if (i < spec.n_members) u.org = spec.org;
        u.privacy = attr_rng.bernoulli(spec.fraction_private) ? Privacy::FriendsOnlyFriendList
                                                              : Privacy::PublicFriendList;
        u.activity = attr_rng.bernoulli(spec.fraction_inactive) ? 0.0 : 1.0;
        u.location = sample_location();
        u.tier = attr_rng.bernoulli(spec.friendly_fraction) ? FriendlinessTier::Friendly
                                                            : FriendlinessTier::Ordinary;
        out.graph.add_user(u);
        out.community_of.emplace(i, community_of(i));
    }

    // One draw per unordered pair, in fixed (i, j) order, so the edge stream
    // is aligned no matter which probabilities are in play.
    for (std::uint32_t i = 0; i < total; ++i) {
        const bool i_member = i < spec.n_members;
        const std::uint32_t ci = community_of(i);
        for (std::uint32_t j = i + 1; j < total; ++j) {
            const bool same_community = i_member && j < spec.n_members && ci == community_of(j);
            const double p = same_community ? spec.intra_community_edge_prob
                                            : spec.inter_community_edge_prob;
            if (edge_rng.bernoulli(p)) {
                out.graph.add_edge(UserId{i}, UserId{j});
            }
        }
    }

    return out;
}

}  // namespace infilsim
