#include "policies_impl.hpp"

#include <cmath>

namespace pollbench::detail {

MixedPolicy::MixedPolicy(Rational eta, std::optional<Rational> p_min_cfg, PolicySpec base_spec)
    : eta_(std::move(eta)), p_min_cfg_(std::move(p_min_cfg)), base_spec_(std::move(base_spec)) {
    if (!(eta_ > Rational(0))) throw PolicySpecError("mixed strategy requires eta > 0");
    switch (base_spec_.family) {
    case PolicySpec::Family::CyclicExhaustive:
    case PolicySpec::Family::CyclicGated:
        break;
    default:
        throw PolicySpecError("mixed strategy base must be a cyclic policy");
    }
}

void MixedPolicy::bind(const SimStatics& statics) {
    Policy::bind(statics);
    Rational base = p_min_cfg_ ? *p_min_cfg_ : statics.params.p_min;
    threshold_ = eta_ * base;
    base_ = make_policy(base_spec_);
    base_->bind(statics);
    gipp_.reset();
    mode_ = Mode::Base;
}

void MixedPolicy::arm_gipp(const DecisionContext& ctx) {
    gipp_ = std::make_unique<GippPolicy>(false);
    gipp_->bind(statics());
    std::vector<JobView> backlog;
    for (const auto& per_queue : ctx.waiting)
        for (const auto& j : per_queue) backlog.push_back(j);
    // The virtual run restarts here: the handover backlog arrives at the
    // trigger instant, later jobs stream in normally.
    gipp_->seed_backlog(backlog, ctx.clock);
    mode_ = Mode::Gipp;
}

PolicyAction MixedPolicy::decide(const DecisionContext& ctx) {
    if (mode_ == Mode::Gipp && ctx.server.activity == Activity::Idle && ctx.system_empty()) {
        // Busy period over: back to the cyclic base until the next trigger.
        mode_ = Mode::Base;
        gipp_.reset();
    }

    if (mode_ == Mode::Base) {
        if (ctx.cause.kind == CauseKind::Arrival) {
            const JobView* arrival = nullptr;
            for (const auto& per_queue : ctx.waiting)
                for (const auto& j : per_queue)
                    if (j.ordinal == ctx.cause.job) arrival = &j;
            if (arrival && arrival->work > threshold_) {
                if (ctx.server.activity == Activity::Serving) {
                    mode_ = Mode::FinishingJob;
                    return PolicyAction::idle();
                }
                if (ctx.server.activity == Activity::Setting) {
                    arm_gipp(ctx);
                    return PolicyAction::abort_setup(); // re-consulted, now under GIPP
                }
                arm_gipp(ctx);
                return gipp_->decide(ctx);
            }
        }
        return base_->decide(ctx);
    }

    if (mode_ == Mode::FinishingJob) {
        if (ctx.server.activity == Activity::Serving) return PolicyAction::idle();
        arm_gipp(ctx);
        return gipp_->decide(ctx);
    }

    return gipp_->decide(ctx);
}

} // namespace pollbench::detail

namespace pollbench {

Rational optimal_eta(int k, const Rational& theta,
                     const std::function<double(const Rational&)>& mu, long long n) {
    Rational lo = Rational(2 * (k + 1), 3);
    Rational hi = min(Rational(2) * (theta + Rational(2)) / Rational(3), theta);
    if (hi <= lo) return lo;

    // nu is evaluated in floating point (mu is a model, not measured data);
    // the returned threshold is an exact grid point.
    const int steps = 2048;
    Rational width = hi - lo;
    Rational best_eta = lo;
    double best_nu = 0;
    for (int i = 0; i <= steps; ++i) {
        Rational eta = lo + width * Rational(i, steps);
        double kappa = std::max(1.5 * eta.to_double(), static_cast<double>(k + 1));
        double m = std::pow(mu(eta), static_cast<double>(n));
        double nu = kappa * m + (theta.to_double() + 2.0) * (1.0 - m);
        if (i == 0 || nu < best_nu) {
            best_nu = nu;
            best_eta = eta;
        }
    }
    return best_eta;
}

} // namespace pollbench
