#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "infilsim/graph.hpp"
#include "infilsim/visibility.hpp"

namespace infilsim {

struct MclParams {
    int expansion = 2;              // matrix power per iteration
    double inflation = 2.0;         // elementwise power, then column renormalization
    double prune_threshold = 1e-5;  // entries below this are dropped after inflation
    int max_iterations = 100;
    double convergence_eps = 1e-6;

    void validate() const;

    bool operator==(const MclParams&) const = default;
};

/// A total partition of the clustered node set. Cluster indices are
/// canonicalized by ascending smallest member id, so identical inputs always
/// produce identical assignments.
struct Clustering {
    std::map<UserId, std::uint32_t> assignment;

    std::uint32_t cluster_count() const;
};

struct ClusterStats {
    std::size_t count = 0;
    double avg_size = 0.0;
    std::size_t max_size = 0;
};

struct MclResult {
    Clustering clustering;
    bool converged = false;
    int iterations = 0;
    // worst |column sum - 1| observed right after any inflate-renormalize step
    double max_column_sum_error = 0.0;
};

/// Markov Cluster process over an undirected graph: build a column-stochastic
/// transition matrix with unit self-loops, then alternate expansion (matrix
/// power) and inflation (elementwise power, prune, renormalize) until the
/// matrix is stable. Clusters are the weakly connected components of the
/// surviving attractor support. If the iteration cap is hit first, the
/// clustering of the current state is returned with converged = false.
MclResult mcl(const std::vector<UserId>& nodes,
              const std::vector<std::pair<UserId, UserId>>& edges, const MclParams& params = {});

MclResult mcl(const SocialGraph& g, const MclParams& params = {});
MclResult mcl(const ObservedGraph& view, const MclParams& params = {});

/// count, n/count, and largest cluster size over the whole partition.
ClusterStats cluster_stats(const Clustering& c);

/// Same statistics restricted to clusters with at least `min_size` members.
ClusterStats cluster_stats(const Clustering& c, std::size_t min_size);

}  // namespace infilsim
