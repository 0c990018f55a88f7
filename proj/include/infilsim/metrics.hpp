#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "infilsim/clustering.hpp"
#include "infilsim/defense.hpp"
#include "infilsim/visibility.hpp"

namespace infilsim {

/// Before/after accounting of one intrusion: node, edge, and cluster counts,
/// with raw percentage gains. Display rounding is applied only by the CSV
/// emitters; the raw values are kept here.
struct IntrusionSummary {
    std::size_t nodes_before = 0;
    std::size_t nodes_after = 0;
    std::size_t edges_before = 0;
    std::size_t edges_after = 0;
    double node_gain_pct = 0.0;
    double edge_gain_pct = 0.0;
    bool node_gain_defined = false;  // false when nodes_before == 0
    bool edge_gain_defined = false;
    ClusterStats clusters_before;
    ClusterStats clusters_after;
};

/// Gains from raw counts: (after - before) / before * 100. Requires
/// after >= before; a zero "before" count leaves that gain undefined.
IntrusionSummary intrusion_summary(std::size_t nodes_before, std::size_t nodes_after,
                                   std::size_t edges_before, std::size_t edges_after,
                                   ClusterStats clusters_before, ClusterStats clusters_after);

/// Same, measured between a passive and an active observation of one org.
/// The passive node set must be a subset of the active one.
IntrusionSummary intrusion_summary(const ObservedGraph& passive, const ObservedGraph& active,
                                   const Clustering& before, const Clustering& after);

struct AcceptanceRow {
    std::uint32_t day = 0;
    std::uint64_t accepted = 0;
    std::uint64_t total = 0;
    double percent = 0.0;  // raw; 0 when total == 0
};

struct AcceptanceTable {
    std::vector<AcceptanceRow> days;  // contiguous from the first to the last ledger day
    AcceptanceRow total;
};

/// Per-day accumulation of accepted vs. sent requests, plus a total row.
AcceptanceTable acceptance_table(std::span<const LedgerEntry> log);

/// Round half to even, e.g. for two-decimal display percentages.
double round_half_even(double value, int decimals);

void write_intrusion_summary_csv(const IntrusionSummary& s, std::ostream& out);
void write_acceptance_csv(const AcceptanceTable& t, std::ostream& out);

/// JSON flavors of the same tables, same field names, raw percentages.
void write_intrusion_summary_json(const IntrusionSummary& s, std::ostream& out);
void write_acceptance_json(const AcceptanceTable& t, std::ostream& out);

}  // namespace infilsim
