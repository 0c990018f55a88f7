#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "infilsim/behavior.hpp"
#include "infilsim/graph.hpp"

namespace infilsim {

/// Operator-side blocking rules driven by one bot's request ledger.
struct DefensePolicy {
    std::uint64_t unconfirmed_cap = 100;  // rejected-or-ignored requests before a block
    std::uint32_t acceptance_window = 50;  // most recent requests considered; 0 disables
    double min_acceptance_rate = 0.0;
    std::uint64_t community_spread_cap = 100;  // distinct communities among accepted friends
    std::uint64_t report_cap = 3;
    bool warn_before_block = true;  // low-acceptance warns once before blocking

    static DefensePolicy defenseless();
    static DefensePolicy facebook_like();
    static DefensePolicy xing_like();

    void validate() const;

    bool operator==(const DefensePolicy&) const = default;
};

enum class VerdictOutcome { Ok, Warn, Block };
enum class VerdictReason { None, UnconfirmedCap, LowAcceptance, CommunitySpread, Reports };

struct OperatorVerdict {
    VerdictOutcome outcome = VerdictOutcome::Ok;
    VerdictReason reason = VerdictReason::None;

    bool operator==(const OperatorVerdict&) const = default;
};

struct LedgerEntry {
    UserId recipient;
    Decision decision = Decision::Ignore;
    std::uint32_t day = 1;
};

/// Carries the operator's memory between evaluations: whether this bot was
/// already warned, and whether it is blocked (blocking is absorbing).
struct OperatorState {
    bool warned = false;
    bool blocked = false;
    VerdictReason block_reason = VerdictReason::None;
};

/// Evaluates the policy against one bot's chronologically ordered ledger.
/// Triggers are checked in a fixed order (unconfirmed cap, low acceptance,
/// community spread, reports); the first one that fires decides the verdict.
/// The low-acceptance rate is evaluated over the most recent
/// `acceptance_window` requests once that many have been sent.
OperatorVerdict operator_step(const DefensePolicy& policy, std::span<const LedgerEntry> ledger,
                              const CommunityMap& community_of, OperatorState& state);

const char* to_string(VerdictOutcome o);
const char* to_string(VerdictReason r);

}  // namespace infilsim
