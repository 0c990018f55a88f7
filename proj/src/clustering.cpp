#include "infilsim/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace infilsim {

void MclParams::validate() const {
    if (expansion < 2) throw ValidationError("expansion must be >= 2");
    if (!(inflation > 1.0)) throw ValidationError("inflation must be > 1");
    if (prune_threshold < 0.0) throw ValidationError("prune_threshold must be non-negative");
    if (max_iterations <= 0) throw ValidationError("max_iterations must be positive");
    if (!(convergence_eps > 0.0)) throw ValidationError("convergence_eps must be positive");
}

std::uint32_t Clustering::cluster_count() const {
    std::uint32_t max_index = 0;
    bool any = false;
    for (const auto& [id, cluster] : assignment) {
        max_index = std::max(max_index, cluster);
        any = true;
    }
    return any ? max_index + 1 : 0;
}

namespace {

// Column-major sparse matrix; each column holds (row, value) sorted by row.
using Column = std::vector<std::pair<std::uint32_t, double>>;
using Matrix = std::vector<Column>;

Matrix multiply(const Matrix& a, const Matrix& b, std::vector<double>& scratch,
                std::vector<std::uint32_t>& touched) {
    const std::size_t n = a.size();
    Matrix c(n);
    for (std::size_t j = 0; j < n; ++j) {
        touched.clear();
        for (const auto& [k, bkj] : b[j]) {
            for (const auto& [i, aik] : a[k]) {
                if (scratch[i] == 0.0) touched.push_back(i);
                scratch[i] += aik * bkj;
            }
        }
        std::sort(touched.begin(), touched.end());
        Column& col = c[j];
        col.reserve(touched.size());
        for (std::uint32_t i : touched) {
            col.emplace_back(i, scratch[i]);
            scratch[i] = 0.0;
        }
    }
    return c;
}

void normalize_column(Column& col) {
    double sum = 0.0;
    for (const auto& [i, v] : col) sum += v;
    if (sum <= 0.0) return;
    for (auto& [i, v] : col) v /= sum;
}

// Elementwise power, renormalize, prune, renormalize again. Returns the worst
// |column sum - 1| over the matrix after the final renormalization.
double inflate(Matrix& m, double inflation, double prune_threshold) {
    double worst = 0.0;
    for (Column& col : m) {
        for (auto& [i, v] : col) v = std::pow(v, inflation);
        normalize_column(col);
        if (prune_threshold > 0.0 && col.size() > 1) {
            // keep the largest entry no matter what, so no column ever empties
            auto largest = std::max_element(col.begin(), col.end(),
                                            [](const auto& a, const auto& b) { return a.second < b.second; });
            const std::uint32_t keep_row = largest->first;
            std::erase_if(col, [&](const auto& e) {
                return e.second < prune_threshold && e.first != keep_row;
            });
            normalize_column(col);
        }
        double sum = 0.0;
        for (const auto& [i, v] : col) sum += v;
        worst = std::max(worst, std::abs(sum - 1.0));
    }
    return worst;
}

double max_difference(const Matrix& a, const Matrix& b) {
    double worst = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        auto ia = a[j].begin();
        auto ib = b[j].begin();
        while (ia != a[j].end() || ib != b[j].end()) {
            if (ib == b[j].end() || (ia != a[j].end() && ia->first < ib->first)) {
                worst = std::max(worst, std::abs(ia->second));
                ++ia;
            } else if (ia == a[j].end() || ib->first < ia->first) {
                worst = std::max(worst, std::abs(ib->second));
                ++ib;
            } else {
                worst = std::max(worst, std::abs(ia->second - ib->second));
                ++ia;
                ++ib;
            }
        }
    }
    return worst;
}

struct UnionFind {
    std::vector<std::uint32_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

}  // namespace

MclResult mcl(const std::vector<UserId>& nodes,
              const std::vector<std::pair<UserId, UserId>>& edges, const MclParams& params) {
    params.validate();
    if (nodes.empty()) throw ValidationError("mcl requires a non-empty graph");

    std::vector<UserId> sorted = nodes;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    const std::size_t n = sorted.size();

    std::map<UserId, std::uint32_t> index;
    for (std::uint32_t i = 0; i < n; ++i) index.emplace(sorted[i], i);

    // Adjacency with unit self-loops, column-normalized.
    Matrix m(n);
    for (std::uint32_t i = 0; i < n; ++i) m[i].emplace_back(i, 1.0);
    for (const auto& [a, b] : edges) {
        auto ia = index.find(a);
        auto ib = index.find(b);
        if (ia == index.end() || ib == index.end()) {
            throw ValidationError("mcl edge endpoint not in node set");
        }
        if (ia->second == ib->second) continue;
        m[ia->second].emplace_back(ib->second, 1.0);
        m[ib->second].emplace_back(ia->second, 1.0);
    }
    for (Column& col : m) {
        std::sort(col.begin(), col.end());
        normalize_column(col);
    }

    std::vector<double> scratch(n, 0.0);
    std::vector<std::uint32_t> touched;
    touched.reserve(n);

    MclResult result;
    bool converged = false;
    int iteration = 0;
    while (iteration < params.max_iterations) {
        ++iteration;
        Matrix expanded = m;
        for (int e = 1; e < params.expansion; ++e) expanded = multiply(expanded, m, scratch, touched);
        const double sum_err = inflate(expanded, params.inflation, params.prune_threshold);
        result.max_column_sum_error = std::max(result.max_column_sum_error, sum_err);
        const double delta = max_difference(expanded, m);
        m = std::move(expanded);
        if (delta < params.convergence_eps) {
            converged = true;
            break;
        }
    }
    result.converged = converged;
    result.iterations = iteration;

    // Weakly connected components of the surviving support.
    UnionFind uf(n);
    for (std::uint32_t j = 0; j < n; ++j) {
        for (const auto& [i, v] : m[j]) uf.unite(i, j);
    }
    // Canonical cluster indices: ascending smallest member id.
    std::map<std::uint32_t, std::uint32_t> root_to_cluster;
    for (std::uint32_t i = 0; i < n; ++i) {
        const std::uint32_t root = uf.find(i);
        if (root_to_cluster.count(root) == 0) {
            const auto next = static_cast<std::uint32_t>(root_to_cluster.size());
            root_to_cluster.emplace(root, next);
        }
    }
    for (std::uint32_t i = 0; i < n; ++i) {
        result.clustering.assignment.emplace(sorted[i], root_to_cluster.at(uf.find(i)));
    }
    return result;
}

MclResult mcl(const SocialGraph& g, const MclParams& params) {
    return mcl(g.user_ids(), g.edges(), params);
}

MclResult mcl(const ObservedGraph& view, const MclParams& params) {
    std::vector<std::pair<UserId, UserId>> edges(view.edges.begin(), view.edges.end());
    return mcl(view.node_ids(), edges, params);
}

ClusterStats cluster_stats(const Clustering& c) { return cluster_stats(c, 1); }

ClusterStats cluster_stats(const Clustering& c, std::size_t min_size) {
    std::map<std::uint32_t, std::size_t> sizes;
    for (const auto& [id, cluster] : c.assignment) ++sizes[cluster];
    ClusterStats stats;
    std::size_t members = 0;
    for (const auto& [cluster, size] : sizes) {
        if (size < min_size) continue;
        ++stats.count;
        members += size;
        stats.max_size = std::max(stats.max_size, size);
    }
    stats.avg_size = stats.count > 0 ? static_cast<double>(members) / stats.count : 0.0;
    return stats;
}

}  // namespace infilsim
