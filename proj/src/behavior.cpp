#include "infilsim/behavior.hpp"

#include <algorithm>
#include <cmath>

namespace infilsim {

void BehaviorModel::validate() const {
    auto check_fraction = [](double v, const char* name) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw ValidationError(std::string(name) + " must be in [0,1]");
        }
    };
    check_fraction(friendly_base_accept, "friendly_base_accept");
    check_fraction(ordinary_base_accept, "ordinary_base_accept");
    check_fraction(mutual_accept_at_17, "mutual_accept_at_17");
    check_fraction(location_mismatch_penalty, "location_mismatch_penalty");
    check_fraction(org_claim_verification_prob, "org_claim_verification_prob");
    if (mutual_logistic_slope < 0.0) throw ValidationError("mutual_logistic_slope must be non-negative");
}

BehaviorModel default_model(ScenarioKind kind) {
    BehaviorModel m;
    switch (kind) {
        case ScenarioKind::FacebookLike:
            m.friendly_base_accept = 0.569;
            m.ordinary_base_accept = 0.20;
            m.mutual_logistic_midpoint = 5.5;
            m.mutual_logistic_slope = 0.25;
            m.mutual_accept_at_17 = 0.70;
            m.location_mismatch_penalty = 0.25;
            m.org_claim_verification_prob = 0.02;
            break;
        case ScenarioKind::XingLike:
            m.friendly_base_accept = 0.67;
            m.ordinary_base_accept = 0.15;
            m.mutual_logistic_midpoint = 6.0;
            m.mutual_logistic_slope = 0.2;
            m.mutual_accept_at_17 = 0.70;
            m.location_mismatch_penalty = 0.25;
            m.org_claim_verification_prob = 0.05;
            break;
    }
    return m;
}

double acceptance_probability(const BehaviorModel& model, FriendlinessTier tier,
                              std::uint32_t mutual_count, bool location_match) {
    const double base = tier == FriendlinessTier::Friendly ? model.friendly_base_accept
                                                           : model.ordinary_base_accept;
    double p = base;
    if (mutual_count > 0) {
        auto logistic = [&](double m) {
            return 1.0 / (1.0 + std::exp(-model.mutual_logistic_slope *
                                         (m - model.mutual_logistic_midpoint)));
        };
        const double at17 = logistic(17.0);
        const double scale = at17 > 0.0 ? model.mutual_accept_at_17 / at17 : 0.0;
        p = std::max(base, std::min(1.0, scale * logistic(static_cast<double>(mutual_count))));
    }
    if (!location_match) p *= model.location_mismatch_penalty;
    return std::clamp(p, 0.0, 1.0);
}

Decision decide(const BehaviorModel& model, const SocialGraph& g, const RequestContext& ctx,
                Rng& rng) {
    const User& recipient = g.user(ctx.recipient);
    // Non-response first: an inactive user never even sees the request.
    if (!rng.bernoulli(recipient.activity)) return Decision::Ignore;
    if (ctx.sender_claims_recipient_org && rng.bernoulli(model.org_claim_verification_prob)) {
        return Decision::ReportToOperator;
    }
    const double p = acceptance_probability(model, recipient.tier, ctx.mutual_count,
                                            ctx.location_match);
    return rng.bernoulli(p) ? Decision::Accept : Decision::Reject;
}

const char* to_string(Decision d) {
    switch (d) {
        case Decision::Accept: return "accept";
        case Decision::Reject: return "reject";
        case Decision::Ignore: return "ignore";
        case Decision::ReportToOperator: return "report";
    }
    return "unknown";
}

}  // namespace infilsim
