#include "policies_impl.hpp"

#include <algorithm>

namespace pollbench::detail {

FollowerPolicy::FollowerPolicy(Transform transform, PolicySpec base_spec)
    : transform_(transform), base_spec_(std::move(base_spec)) {
    base_preemptive_ = base_spec_.family == PolicySpec::Family::SrptOrder;
    if (base_spec_.family == PolicySpec::Family::Follower ||
        base_spec_.family == PolicySpec::Family::Mixed)
        throw PolicySpecError("follower base must be a plain policy");
}

void FollowerPolicy::bind(const SimStatics& statics) {
    Policy::bind(statics);
    if (transform_ == Transform::WorkloadAugmented && statics.params.p_min.is_zero() &&
        !statics.params.p_max.is_zero())
        throw UnboundedTransformError(
            "workload-augmented transform with unbounded workload variation");
}

void FollowerPolicy::refresh(const DecisionContext& ctx) {
    if (!dirty_) return;
    dirty_ = false;
    virtual_commits_.clear();

    if (base_preemptive_) {
        // Preemptive base: a job's position in the virtual order is final
        // only at its virtual completion.
        SrptSimulator sim;
        std::vector<Job> sorted = revealed_;
        std::sort(sorted.begin(), sorted.end(), [](const Job& a, const Job& b) {
            if (a.release != b.release) return a.release < b.release;
            return a.ordinal < b.ordinal;
        });
        for (const auto& j : sorted) sim.add_job(j.ordinal, j.release, j.work);
        sim.run_to_end();
        for (int ordinal : sim.completed_order())
            virtual_commits_.push_back({sim.completion_times().at(ordinal), ordinal});
        return;
    }

    // Non-preemptive base: the order is committed at the virtual service
    // start, so real jobs may begin before their virtual completions.
    JobInstance virt;
    virt.k = statics().k;
    virt.tau = (transform_ == Transform::SetupReduced || transform_ == Transform::SetupAugmented)
                   ? Time(0)
                   : statics().tau;
    virt.jobs = revealed_;
    virt = validate(virt);
    auto base = make_policy(base_spec_);
    ScheduleTrace trace = simulate(*base, virt);
    for (const auto& ev : trace.events)
        if (ev.type == EventType::ServeStart) virtual_commits_.push_back({ev.t, ev.job});
}

PolicyAction FollowerPolicy::decide(const DecisionContext& ctx) {
    if (ctx.cause.kind == CauseKind::Arrival && !known_.count(ctx.cause.job)) {
        for (const auto& per_queue : ctx.waiting) {
            for (const auto& j : per_queue) {
                if (j.ordinal != ctx.cause.job) continue;
                known_.insert(j.ordinal);
                real_jobs_[j.ordinal] = j;
                Time work = j.work;
                switch (transform_) {
                case Transform::WorkloadReduced: work = statics().params.p_min; break;
                case Transform::WorkloadAugmented: work = statics().params.p_max; break;
                case Transform::SetupReduced: break;
                case Transform::SetupAugmented: work = j.work + statics().tau; break;
                }
                revealed_.push_back(Job{j.ordinal, j.release, work, j.queue});
                dirty_ = true;
            }
        }
    }
    refresh(ctx);

    std::optional<Time> next_commit;
    for (const auto& [t, ordinal] : virtual_commits_) {
        (void)ordinal;
        if (t > ctx.clock) {
            next_commit = t;
            break;
        }
    }
    if (next_commit && (!armed_ || *armed_ != *next_commit)) {
        armed_ = *next_commit;
        return PolicyAction::set_alarm(*next_commit, 3);
    }

    if (ctx.server.activity == Activity::Serving || ctx.server.activity == Activity::Setting)
        return PolicyAction::idle();

    for (const auto& [t, ordinal] : virtual_commits_) {
        if (t > ctx.clock) break;
        if (started_.count(ordinal)) continue;
        const JobView& job = real_jobs_.at(ordinal);
        if (job.queue != ctx.server.location) return PolicyAction::switch_to(job.queue);
        started_.insert(ordinal);
        return PolicyAction::serve(ordinal);
    }
    return PolicyAction::idle();
}

} // namespace pollbench::detail
