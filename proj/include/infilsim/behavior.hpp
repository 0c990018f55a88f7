#pragma once

#include <cstdint>

#include "infilsim/graph.hpp"
#include "infilsim/rng.hpp"

namespace infilsim {

enum class ScenarioKind { FacebookLike, XingLike };

/// Stochastic model of how a user answers a stranger's friend request.
///
/// With no mutual friends the acceptance probability is a per-tier base rate.
/// With mutual friends it follows a logistic curve in the mutual count,
/// rescaled so the probability at 17 mutual friends equals the calibration
/// anchor, and floored at the tier base so more evidence never hurts.
struct BehaviorModel {
    double friendly_base_accept = 0.569;
    double ordinary_base_accept = 0.20;
    double mutual_logistic_midpoint = 3.0;
    double mutual_logistic_slope = 0.2;
    double mutual_accept_at_17 = 0.70;
    double location_mismatch_penalty = 0.25;   // multiplies acceptance when regions differ
    double org_claim_verification_prob = 0.0;  // chance a same-org claim gets checked and reported

    void validate() const;

    bool operator==(const BehaviorModel&) const = default;
};

/// Defaults whose simulated aggregates sit inside the per-network acceptance
/// ranges seen in practice.
BehaviorModel default_model(ScenarioKind kind);

struct RequestContext {
    UserId sender;
    UserId recipient;
    std::uint32_t mutual_count = 0;
    bool sender_claims_recipient_org = false;
    bool location_match = true;
};

enum class Decision { Accept, Reject, Ignore, ReportToOperator };

/// Acceptance probability for a responsive recipient, before any org-claim
/// verification. Monotone non-decreasing in the mutual count for a fixed tier.
double acceptance_probability(const BehaviorModel& model, FriendlinessTier tier,
                              std::uint32_t mutual_count, bool location_match);

/// One request decision. Draw order: respond (by recipient activity), then
/// org-claim verification when a claim is present, then accept/reject.
/// A recipient with activity 0 ignores with probability one.
Decision decide(const BehaviorModel& model, const SocialGraph& g, const RequestContext& ctx,
                Rng& rng);

const char* to_string(Decision d);

}  // namespace infilsim
