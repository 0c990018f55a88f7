#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "infilsim/graph.hpp"
#include "infilsim/rng.hpp"

using namespace infilsim;

namespace {

SocialGraph small_graph(std::uint32_t n) {
    SocialGraph g;
    for (std::uint32_t i = 0; i < n; ++i) g.add_user(User{UserId{i}});
    return g;
}

// Random graph for oracle comparisons; fixed seed keeps it reproducible.
SocialGraph random_graph(std::uint32_t n, double edge_prob, std::uint64_t seed) {
    SocialGraph g = small_graph(n);
    Rng rng(seed);
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = i + 1; j < n; ++j) {
            if (rng.bernoulli(edge_prob)) g.add_edge(UserId{i}, UserId{j});
        }
    }
    return g;
}

}  // namespace

TEST_CASE("basic graph bookkeeping") {
    SocialGraph g = small_graph(3);
    CHECK(g.user_count() == 3);
    CHECK(g.edge_count() == 0);
    CHECK(g.add_edge(UserId{0}, UserId{1}));
    CHECK_FALSE(g.add_edge(UserId{1}, UserId{0}));  // already there
    CHECK(g.edge_count() == 1);
    CHECK(g.has_edge(UserId{0}, UserId{1}));
    CHECK(g.has_edge(UserId{1}, UserId{0}));
    CHECK_THROWS_AS(g.add_edge(UserId{0}, UserId{0}), ValidationError);
    CHECK_THROWS_AS(g.add_edge(UserId{0}, UserId{9}), LookupError);
    CHECK_THROWS_AS(g.user(UserId{9}), LookupError);
    CHECK_THROWS_AS((void)small_graph(2).add_user(User{UserId{1}}), ValidationError);
}

TEST_CASE("degree: isolated node and star center") {
    SocialGraph g = small_graph(6);
    CHECK(g.degree(UserId{5}) == 0);
    for (std::uint32_t leaf = 1; leaf <= 4; ++leaf) g.add_edge(UserId{0}, UserId{leaf});
    CHECK(g.degree(UserId{0}) == 4);
    CHECK(g.degree(UserId{1}) == 1);
}

TEST_CASE("degree matches a brute-force edge scan on a random graph") {
    SocialGraph g = random_graph(20, 0.3, 99);
    auto edges = g.edges();
    for (UserId id : g.user_ids()) {
        std::size_t count = 0;
        for (const auto& [a, b] : edges) {
            if (a == id || b == id) ++count;
        }
        CHECK(g.degree(id) == count);
    }
}

TEST_CASE("mutual friends: triangle and disconnected pair") {
    SocialGraph g = small_graph(4);
    g.add_edge(UserId{0}, UserId{1});
    g.add_edge(UserId{1}, UserId{2});
    g.add_edge(UserId{0}, UserId{2});
    CHECK(g.mutual_friends(UserId{0}, UserId{1}) == 1);  // only the third corner
    CHECK(g.mutual_friends(UserId{0}, UserId{3}) == 0);
    CHECK_THROWS_AS(g.mutual_friends(UserId{0}, UserId{0}), ValidationError);
    CHECK_THROWS_AS(g.mutual_friends(UserId{0}, UserId{9}), LookupError);
}

TEST_CASE("mutual friends equals the brute-force double loop") {
    SocialGraph g = random_graph(20, 0.25, 1234);
    const auto ids = g.user_ids();
    for (UserId a : ids) {
        for (UserId b : ids) {
            if (!(a < b)) continue;
            std::size_t expected = 0;
            for (UserId c : ids) {
                if (c == a || c == b) continue;
                if (g.has_edge(a, c) && g.has_edge(b, c)) ++expected;
            }
            CHECK(g.mutual_friends(a, b) == expected);
            CHECK(g.mutual_friends(b, a) == expected);
        }
    }
}

TEST_CASE("generator: member count and org labels") {
    OrgGraphSpec spec;
    spec.n_members = 309;
    spec.community_count = 35;
    spec.intra_community_edge_prob = 0.3;
    spec.inter_community_edge_prob = 0.01;
    spec.rng_seed = 7;
    auto gen = generate_org_graph(spec);
    CHECK(gen.graph.user_count() == 309);
    CHECK(gen.graph.org_members(spec.org).size() == 309);
    for (UserId id : gen.graph.user_ids()) {
        CHECK(gen.graph.user(id).org.has_value());
        CHECK(gen.community_of.at(id.value) < 35);
    }
}

TEST_CASE("generator: empty spec gives an empty graph") {
    OrgGraphSpec spec;
    auto gen = generate_org_graph(spec);
    CHECK(gen.graph.user_count() == 0);
    CHECK(gen.graph.edge_count() == 0);
}

TEST_CASE("generator: two certain communities form two disjoint cliques") {
    OrgGraphSpec spec;
    spec.n_members = 4;
    spec.community_count = 2;
    spec.intra_community_edge_prob = 1.0;
    spec.inter_community_edge_prob = 0.0;
    spec.rng_seed = 3;
    auto gen = generate_org_graph(spec);
    // Exhaustive enumeration of all six pairs: an edge exists exactly when
    // both endpoints share a community (round-robin: {0,2} and {1,3}).
    for (std::uint32_t i = 0; i < 4; ++i) {
        for (std::uint32_t j = i + 1; j < 4; ++j) {
            const bool same = (i % 2) == (j % 2);
            CHECK(gen.graph.has_edge(UserId{i}, UserId{j}) == same);
        }
    }
    CHECK(gen.graph.edge_count() == 2);
}

TEST_CASE("generator: invalid spec names the field") {
    OrgGraphSpec spec;
    spec.fraction_private = 1.5;
    CHECK_THROWS_WITH_AS(generate_org_graph(spec), "fraction_private must be in [0,1]",
                         ValidationError);
    spec.fraction_private = 0.5;
    spec.community_count = 0;
    CHECK_THROWS_AS(generate_org_graph(spec), ValidationError);
}

TEST_CASE("generator: identical specs give identical graphs") {
    OrgGraphSpec spec;
    spec.n_members = 60;
    spec.n_outsiders = 40;
    spec.community_count = 5;
    spec.intra_community_edge_prob = 0.4;
    spec.inter_community_edge_prob = 0.02;
    spec.fraction_private = 0.5;
    spec.fraction_inactive = 0.2;
    spec.friendly_fraction = 0.3;
    spec.location_distribution = {{0, 0.7}, {3, 0.3}};
    spec.rng_seed = 2024;
    auto a = generate_org_graph(spec);
    auto b = generate_org_graph(spec);
    CHECK(a.graph.edges() == b.graph.edges());
    for (UserId id : a.graph.user_ids()) {
        const User& ua = a.graph.user(id);
        const User& ub = b.graph.user(id);
        CHECK(ua.privacy == ub.privacy);
        CHECK(ua.activity == ub.activity);
        CHECK(ua.location == ub.location);
        CHECK(ua.tier == ub.tier);
    }
    CHECK(a.community_of == b.community_of);
}

TEST_CASE("generator: attribute fractions leave the topology alone") {
    OrgGraphSpec spec;
    spec.n_members = 50;
    spec.community_count = 5;
    spec.intra_community_edge_prob = 0.3;
    spec.inter_community_edge_prob = 0.01;
    spec.rng_seed = 11;
    auto plain = generate_org_graph(spec);
    spec.fraction_private = 0.9;
    spec.fraction_inactive = 0.5;
    auto flavored = generate_org_graph(spec);
    CHECK(plain.graph.edges() == flavored.graph.edges());
}

TEST_CASE("generator: no inter-community edges keeps components inside communities") {
    OrgGraphSpec spec;
    spec.n_members = 40;
    spec.community_count = 4;
    spec.intra_community_edge_prob = 0.6;
    spec.inter_community_edge_prob = 0.0;
    spec.rng_seed = 5;
    auto gen = generate_org_graph(spec);
    for (const auto& [a, b] : gen.graph.edges()) {
        CHECK(gen.community_of.at(a.value) == gen.community_of.at(b.value));
    }
}

TEST_CASE("edge set symmetric and loop-free; degrees sum to twice the edges") {
    auto gen = [] {
        OrgGraphSpec spec;
        spec.n_members = 80;
        spec.n_outsiders = 20;
        spec.community_count = 8;
        spec.intra_community_edge_prob = 0.35;
        spec.inter_community_edge_prob = 0.03;
        spec.rng_seed = 31;
        return generate_org_graph(spec);
    }();
    const SocialGraph& g = gen.graph;
    std::size_t degree_sum = 0;
    for (UserId id : g.user_ids()) {
        degree_sum += g.degree(id);
        for (UserId n : g.neighbors(id)) {
            CHECK(n != id);
            CHECK(g.has_edge(n, id));
        }
    }
    CHECK(degree_sum == 2 * g.edge_count());
}

TEST_CASE("generator: location tags come from the configured regions") {
    OrgGraphSpec spec;
    spec.n_members = 200;
    spec.community_count = 4;
    spec.location_distribution = {{2, 0.5}, {7, 0.5}};
    spec.rng_seed = 17;
    auto gen = generate_org_graph(spec);
    std::set<std::uint32_t> seen;
    for (UserId id : gen.graph.user_ids()) seen.insert(gen.graph.user(id).location);
    CHECK(seen == std::set<std::uint32_t>{2, 7});
}
