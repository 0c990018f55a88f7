#include "infilsim/io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace infilsim {

namespace {

const char* privacy_token(Privacy p) {
    return p == Privacy::PublicFriendList ? "public" : "friends_only";
}

const char* tier_token(FriendlinessTier t) {
    return t == FriendlinessTier::Friendly ? "friendly" : "ordinary";
}

std::string activity_token(double a) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", a);
    return buf;
}

[[noreturn]] void fail(const char* what, std::size_t line) {
    throw ParseError(std::string(what) + " at line " + std::to_string(line));
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

std::uint32_t parse_u32(const std::string& s, const char* what, std::size_t line) {
    try {
        std::size_t pos = 0;
        const unsigned long v = std::stoul(s, &pos);
        if (pos != s.size() || v > 0xffffffffUL) fail(what, line);
        return static_cast<std::uint32_t>(v);
    } catch (const ParseError&) {
        throw;
    } catch (...) {
        fail(what, line);
    }
}

double parse_double(const std::string& s, const char* what, std::size_t line) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) fail(what, line);
        return v;
    } catch (const ParseError&) {
        throw;
    } catch (...) {
        fail(what, line);
    }
}

void read_edges_into(std::istream& edges, SocialGraph& g, bool create_users) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(edges, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream in(line);
        std::uint32_t a = 0;
        std::uint32_t b = 0;
        if (!(in >> a >> b)) fail("malformed edge", lineno);
        std::string rest;
        if (in >> rest) fail("trailing tokens on edge", lineno);
        if (create_users) {
            if (!g.has_user(UserId{a})) g.add_user(User{UserId{a}});
            if (!g.has_user(UserId{b})) g.add_user(User{UserId{b}});
        } else if (!g.has_user(UserId{a}) || !g.has_user(UserId{b})) {
            fail("edge endpoint missing from attribute table", lineno);
        }
        if (a == b) fail("self-loop", lineno);
        g.add_edge(UserId{a}, UserId{b});
    }
}

}  // namespace

void write_edge_list(const SocialGraph& g, std::ostream& out) {
    for (const auto& [a, b] : g.edges()) out << a.value << ' ' << b.value << '\n';
}

void write_user_table(const SocialGraph& g, std::ostream& out) {
    out << "id,org,privacy,activity,location,tier\n";
    for (UserId id : g.user_ids()) {
        const User& u = g.user(id);
        out << id.value << ',';
        if (u.org) out << u.org->value;
        out << ',' << privacy_token(u.privacy) << ',' << activity_token(u.activity) << ','
            << u.location << ',' << tier_token(u.tier) << '\n';
    }
}

SocialGraph read_graph(std::istream& attrs, std::istream& edges) {
    SocialGraph g;
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(attrs, line)) throw ParseError("empty attribute table");
    ++lineno;
    if (line != "id,org,privacy,activity,location,tier") {
        fail("unexpected attribute table header", lineno);
    }
    while (std::getline(attrs, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto fields = split_csv(line);
        if (fields.size() != 6) fail("expected 6 fields", lineno);
        User u;
        u.id = UserId{parse_u32(fields[0], "bad user id", lineno)};
        if (!fields[1].empty()) u.org = OrgId{parse_u32(fields[1], "bad org id", lineno)};
        if (fields[2] == "public") {
            u.privacy = Privacy::PublicFriendList;
        } else if (fields[2] == "friends_only") {
            u.privacy = Privacy::FriendsOnlyFriendList;
        } else {
            fail("bad privacy token", lineno);
        }
        u.activity = parse_double(fields[3], "bad activity", lineno);
        if (u.activity < 0.0 || u.activity > 1.0) fail("activity out of range", lineno);
        u.location = parse_u32(fields[4], "bad location", lineno);
        if (fields[5] == "ordinary") {
            u.tier = FriendlinessTier::Ordinary;
        } else if (fields[5] == "friendly") {
            u.tier = FriendlinessTier::Friendly;
        } else {
            fail("bad tier token", lineno);
        }
        g.add_user(u);
    }
    read_edges_into(edges, g, /*create_users=*/false);
    return g;
}

SocialGraph read_edge_list(std::istream& edges) {
    SocialGraph g;
    read_edges_into(edges, g, /*create_users=*/true);
    return g;
}

void write_observed_edge_list(const ObservedGraph& view, std::ostream& out) {
    for (const auto& [a, b] : view.edges) out << a.value << ' ' << b.value << '\n';
}

void write_observed_user_table(const ObservedGraph& view, const SocialGraph& g,
                               std::ostream& out) {
    out << "id,org,privacy,activity,location,tier,provenance\n";
    for (const auto& [id, prov] : view.nodes) {
        const User& u = g.user(id);
        out << id.value << ',';
        if (u.org) out << u.org->value;
        out << ',' << privacy_token(u.privacy) << ',' << activity_token(u.activity) << ','
            << u.location << ',' << tier_token(u.tier) << ','
            << (prov == Provenance::Seed ? "seed" : "expansion") << '\n';
    }
}

void write_clustering_csv(const Clustering& c, std::ostream& out) {
    out << "id,cluster\n";
    for (const auto& [id, cluster] : c.assignment) out << id.value << ',' << cluster << '\n';
}

}  // namespace infilsim
