#include "infilsim/defense.hpp"

#include <set>

namespace infilsim {

DefensePolicy DefensePolicy::defenseless() {
    DefensePolicy p;
    p.unconfirmed_cap = std::numeric_limits<std::uint64_t>::max();
    p.acceptance_window = 0;
    p.min_acceptance_rate = 0.0;
    p.community_spread_cap = std::numeric_limits<std::uint64_t>::max();
    p.report_cap = std::numeric_limits<std::uint64_t>::max();
    p.warn_before_block = true;
    return p;
}

DefensePolicy DefensePolicy::facebook_like() {
    DefensePolicy p;
    // No hard unconfirmed cap; the anomaly trigger is a low acceptance rate,
    // with one warning before the block.
    p.unconfirmed_cap = 1000000;
    p.acceptance_window = 50;
    p.min_acceptance_rate = 0.10;
    p.community_spread_cap = 100;
    p.report_cap = 3;
    p.warn_before_block = true;
    return p;
}

DefensePolicy DefensePolicy::xing_like() {
    DefensePolicy p;
    // Hard cap of one hundred unconfirmed contacts; blocks arrive unannounced.
    // The rate trigger stays off by default: the observed blocks were driven
    // by the cap and by member reports, not by the acceptance percentage.
    p.unconfirmed_cap = 100;
    p.acceptance_window = 50;
    p.min_acceptance_rate = 0.0;
    p.community_spread_cap = 100;
    p.report_cap = 3;
    p.warn_before_block = false;
    return p;
}

void DefensePolicy::validate() const {
    if (unconfirmed_cap == 0) throw ValidationError("unconfirmed_cap must be positive");
    if (community_spread_cap == 0) throw ValidationError("community_spread_cap must be positive");
    if (report_cap == 0) throw ValidationError("report_cap must be positive");
    if (!(min_acceptance_rate >= 0.0 && min_acceptance_rate <= 1.0)) {
        throw ValidationError("min_acceptance_rate must be in [0,1]");
    }
}

OperatorVerdict operator_step(const DefensePolicy& policy, std::span<const LedgerEntry> ledger,
                              const CommunityMap& community_of, OperatorState& state) {
    if (state.blocked) return {VerdictOutcome::Block, state.block_reason};

    auto block = [&](VerdictReason reason) {
        state.blocked = true;
        state.block_reason = reason;
        return OperatorVerdict{VerdictOutcome::Block, reason};
    };

    std::uint64_t unconfirmed = 0;
    std::uint64_t reports = 0;
    std::set<std::uint32_t> communities;
    for (const auto& entry : ledger) {
        switch (entry.decision) {
            case Decision::Reject:
            case Decision::Ignore:
                ++unconfirmed;
                break;
            case Decision::ReportToOperator:
                ++reports;
                break;
            case Decision::Accept: {
                auto it = community_of.find(entry.recipient.value);
                if (it != community_of.end()) communities.insert(it->second);
                break;
            }
        }
    }

    if (unconfirmed >= policy.unconfirmed_cap) return block(VerdictReason::UnconfirmedCap);

    if (policy.acceptance_window > 0 && policy.min_acceptance_rate > 0.0 &&
        ledger.size() >= policy.acceptance_window) {
        std::uint64_t accepted = 0;
        for (std::size_t i = ledger.size() - policy.acceptance_window; i < ledger.size(); ++i) {
            if (ledger[i].decision == Decision::Accept) ++accepted;
        }
        const double rate = static_cast<double>(accepted) / policy.acceptance_window;
        if (rate < policy.min_acceptance_rate) {
            if (state.warned || !policy.warn_before_block) return block(VerdictReason::LowAcceptance);
            state.warned = true;
            return {VerdictOutcome::Warn, VerdictReason::LowAcceptance};
        }
    }

    if (communities.size() > policy.community_spread_cap) return block(VerdictReason::CommunitySpread);

    if (reports >= policy.report_cap) return block(VerdictReason::Reports);

    return {VerdictOutcome::Ok, VerdictReason::None};
}

const char* to_string(VerdictOutcome o) {
    switch (o) {
        case VerdictOutcome::Ok: return "ok";
        case VerdictOutcome::Warn: return "warn";
        case VerdictOutcome::Block: return "block";
    }
    return "unknown";
}

const char* to_string(VerdictReason r) {
    switch (r) {
        case VerdictReason::None: return "none";
        case VerdictReason::UnconfirmedCap: return "unconfirmed_cap";
        case VerdictReason::LowAcceptance: return "low_acceptance";
        case VerdictReason::CommunitySpread: return "community_spread";
        case VerdictReason::Reports: return "reports";
    }
    return "unknown";
}

}  // namespace infilsim
