#pragma once

#include <iosfwd>
#include <string>

#include "infilsim/clustering.hpp"
#include "infilsim/graph.hpp"
#include "infilsim/visibility.hpp"

namespace infilsim {

/// Plain-text edge list: one "u v" pair per line, whitespace separated, u < v.
void write_edge_list(const SocialGraph& g, std::ostream& out);

/// User attribute table, header "id,org,privacy,activity,location,tier".
/// The org column is empty for users with no declared org; privacy is
/// "public" or "friends_only"; tier is "ordinary" or "friendly".
void write_user_table(const SocialGraph& g, std::ostream& out);

/// Reads an attribute table plus an edge list into a graph. Both parsers
/// report 1-based line numbers on malformed input.
SocialGraph read_graph(std::istream& attrs, std::istream& edges);

/// Edge list only; users are created on first mention with default attributes.
SocialGraph read_edge_list(std::istream& edges);

void write_observed_edge_list(const ObservedGraph& view, std::ostream& out);

/// Attribute table for an observed view, with a trailing provenance column
/// ("seed" or "expansion").
void write_observed_user_table(const ObservedGraph& view, const SocialGraph& g,
                               std::ostream& out);

/// CSV "id,cluster".
void write_clustering_csv(const Clustering& c, std::ostream& out);

}  // namespace infilsim
