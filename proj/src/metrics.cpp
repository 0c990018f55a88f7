#include "infilsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace infilsim {

double round_half_even(double value, int decimals) {
    const double scale = std::pow(10.0, decimals);
    // default FP rounding mode is to-nearest-even
    return std::nearbyint(value * scale) / scale;
}

IntrusionSummary intrusion_summary(std::size_t nodes_before, std::size_t nodes_after,
                                   std::size_t edges_before, std::size_t edges_after,
                                   ClusterStats clusters_before, ClusterStats clusters_after) {
    if (nodes_after < nodes_before || edges_after < edges_before) {
        throw ValidationError("intrusion summary requires after >= before counts");
    }
    IntrusionSummary s;
    s.nodes_before = nodes_before;
    s.nodes_after = nodes_after;
    s.edges_before = edges_before;
    s.edges_after = edges_after;
    if (nodes_before > 0) {
        s.node_gain_pct = 100.0 * static_cast<double>(nodes_after - nodes_before) / nodes_before;
        s.node_gain_defined = true;
    }
    if (edges_before > 0) {
        s.edge_gain_pct = 100.0 * static_cast<double>(edges_after - edges_before) / edges_before;
        s.edge_gain_defined = true;
    }
    s.clusters_before = clusters_before;
    s.clusters_after = clusters_after;
    return s;
}

IntrusionSummary intrusion_summary(const ObservedGraph& passive, const ObservedGraph& active,
                                   const Clustering& before, const Clustering& after) {
    for (const auto& [id, prov] : passive.nodes) {
        if (active.nodes.count(id) == 0) {
            throw ValidationError("passive view must be a subset of the active view");
        }
    }
    return intrusion_summary(passive.nodes.size(), active.nodes.size(), passive.edges.size(),
                             active.edges.size(), cluster_stats(before), cluster_stats(after));
}

AcceptanceTable acceptance_table(std::span<const LedgerEntry> log) {
    AcceptanceTable table;
    if (log.empty()) return table;

    std::uint32_t first_day = log.front().day;
    std::uint32_t last_day = log.front().day;
    for (const auto& entry : log) {
        first_day = std::min(first_day, entry.day);
        last_day = std::max(last_day, entry.day);
    }

    table.days.resize(last_day - first_day + 1);
    for (std::size_t i = 0; i < table.days.size(); ++i) {
        table.days[i].day = first_day + static_cast<std::uint32_t>(i);
    }
    for (const auto& entry : log) {
        AcceptanceRow& row = table.days[entry.day - first_day];
        ++row.total;
        if (entry.decision == Decision::Accept) ++row.accepted;
    }
    for (AcceptanceRow& row : table.days) {
        row.percent = row.total > 0 ? 100.0 * static_cast<double>(row.accepted) / row.total : 0.0;
        table.total.accepted += row.accepted;
        table.total.total += row.total;
    }
    table.total.percent = table.total.total > 0
                              ? 100.0 * static_cast<double>(table.total.accepted) / table.total.total
                              : 0.0;
    return table;
}

namespace {

std::string fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return buf;
}

std::string cluster_cell(const ClusterStats& s) {
    return std::to_string(s.count) + ":" + fixed(s.avg_size, 3) + ":" + std::to_string(s.max_size);
}

}  // namespace

void write_intrusion_summary_csv(const IntrusionSummary& s, std::ostream& out) {
    out << "nodes_before,nodes_after,node_gain_pct,edges_before,edges_after,edge_gain_pct,"
           "clusters_before,clusters_after\n";
    out << s.nodes_before << ',' << s.nodes_after << ','
        << (s.node_gain_defined ? fixed(s.node_gain_pct, 6) : std::string("NA")) << ','
        << s.edges_before << ',' << s.edges_after << ','
        << (s.edge_gain_defined ? fixed(s.edge_gain_pct, 6) : std::string("NA")) << ','
        << cluster_cell(s.clusters_before) << ',' << cluster_cell(s.clusters_after) << '\n';
}

void write_acceptance_csv(const AcceptanceTable& t, std::ostream& out) {
    out << "day,accepted,total,percent\n";
    for (const AcceptanceRow& row : t.days) {
        out << row.day << ',' << row.accepted << ',' << row.total << ','
            << fixed(round_half_even(row.percent, 2), 2) << '\n';
    }
    if (t.total.total > 0 || !t.days.empty()) {
        out << "total," << t.total.accepted << ',' << t.total.total << ','
            << fixed(round_half_even(t.total.percent, 2), 2) << '\n';
    }
}

void write_intrusion_summary_json(const IntrusionSummary& s, std::ostream& out) {
    out << "{\"nodes_before\":" << s.nodes_before << ",\"nodes_after\":" << s.nodes_after
        << ",\"node_gain_pct\":" << (s.node_gain_defined ? fixed(s.node_gain_pct, 6) : "null")
        << ",\"edges_before\":" << s.edges_before << ",\"edges_after\":" << s.edges_after
        << ",\"edge_gain_pct\":" << (s.edge_gain_defined ? fixed(s.edge_gain_pct, 6) : "null")
        << ",\"clusters_before\":{\"count\":" << s.clusters_before.count
        << ",\"avg\":" << fixed(s.clusters_before.avg_size, 3)
        << ",\"max\":" << s.clusters_before.max_size
        << "},\"clusters_after\":{\"count\":" << s.clusters_after.count
        << ",\"avg\":" << fixed(s.clusters_after.avg_size, 3)
        << ",\"max\":" << s.clusters_after.max_size << "}}\n";
}

void write_acceptance_json(const AcceptanceTable& t, std::ostream& out) {
    out << "{\"days\":[";
    for (std::size_t i = 0; i < t.days.size(); ++i) {
        const AcceptanceRow& row = t.days[i];
        if (i > 0) out << ',';
        out << "{\"day\":" << row.day << ",\"accepted\":" << row.accepted
            << ",\"total\":" << row.total << ",\"percent\":" << fixed(row.percent, 6) << '}';
    }
    out << "],\"total\":{\"accepted\":" << t.total.accepted << ",\"total\":" << t.total.total
        << ",\"percent\":" << fixed(t.total.percent, 6) << "}}\n";
}

}  // namespace infilsim
