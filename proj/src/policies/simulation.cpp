#include "policies_impl.hpp"

#include <algorithm>

namespace pollbench::detail {

void EligibilityTracker::seed(int ordinal, Time release, Time work, int queue) {
    sim_.add_job(ordinal, release, work);
    jobs_[ordinal] = JobView{ordinal, release, work, queue};
    known_.insert(ordinal);
}

void EligibilityTracker::observe(const DecisionContext& ctx) {
    if (ctx.cause.kind == CauseKind::Arrival && !known_.count(ctx.cause.job)) {
        // Every arrival raises exactly one epoch, so each job is fed once.
        for (const auto& per_queue : ctx.waiting) {
            for (const auto& j : per_queue) {
                if (j.ordinal == ctx.cause.job) {
                    seed(j.ordinal, ctx.clock, j.work, j.queue);
                    break;
                }
            }
        }
    }
    sim_.advance(ctx.clock);
}

std::optional<Time> EligibilityTracker::alarm_request(const DecisionContext& ctx) {
    std::optional<Time> nc = sim_.next_completion();
    if (nc && *nc > ctx.clock && (!armed_ || *armed_ != *nc)) {
        armed_ = *nc;
        return nc;
    }
    return std::nullopt;
}

namespace {

/// Serves eligible jobs strictly in the given order; switches with a setup
/// whenever the next job sits at a different queue.
PolicyAction follow_order(const DecisionContext& ctx, const std::vector<int>& order,
                          const std::set<int>& started,
                          const std::map<int, JobView>& info) {
    if (ctx.server.activity == Activity::Serving || ctx.server.activity == Activity::Setting)
        return PolicyAction::idle();
    for (int ordinal : order) {
        if (started.count(ordinal)) continue;
        const JobView& job = info.at(ordinal);
        if (job.queue == ctx.server.location) return PolicyAction::serve(ordinal);
        return PolicyAction::switch_to(job.queue);
    }
    return PolicyAction::idle();
}

void note_arrival(const DecisionContext& ctx, std::set<int>& seen,
                  std::map<int, JobView>& known) {
    if (ctx.cause.kind != CauseKind::Arrival || seen.count(ctx.cause.job)) return;
    for (const auto& per_queue : ctx.waiting) {
        for (const auto& j : per_queue) {
            if (j.ordinal == ctx.cause.job) {
                known[j.ordinal] = j;
                seen.insert(j.ordinal);
                return;
            }
        }
    }
}

} // namespace

PolicyAction OneMachinePolicy::decide(const DecisionContext& ctx) {
    if (clearing_) {
        // Zero-release configuration: no virtual run, smallest workload first.
        note_arrival(ctx, seen_, known_jobs_);
        if (ctx.server.activity == Activity::Serving || ctx.server.activity == Activity::Setting)
            return PolicyAction::idle();
        const JobView* best = nullptr;
        for (const auto& [ordinal, j] : known_jobs_) {
            if (started_.count(ordinal)) continue;
            if (!best || j.work < best->work ||
                (j.work == best->work &&
                 (j.release < best->release ||
                  (j.release == best->release && j.ordinal < best->ordinal))))
                best = &j;
        }
        if (!best) return PolicyAction::idle();
        if (best->queue != ctx.server.location) return PolicyAction::switch_to(best->queue);
        started_.insert(best->ordinal);
        return PolicyAction::serve(best->ordinal);
    }

    tracker_.observe(ctx);
    if (auto alarm = tracker_.alarm_request(ctx)) return PolicyAction::set_alarm(*alarm, 1);

    PolicyAction action = [&] {
        std::map<int, JobView> info;
        for (int ordinal : tracker_.eligible_order()) info[ordinal] = tracker_.info(ordinal);
        return follow_order(ctx, tracker_.eligible_order(), started_, info);
    }();
    if (action.kind == PolicyAction::Kind::Serve) started_.insert(action.job_id);
    return action;
}

void GippPolicy::seed_backlog(const std::vector<JobView>& jobs, Time at) {
    for (const auto& j : jobs) {
        tracker_.seed(j.ordinal, at, j.work, j.queue);
        known_jobs_[j.ordinal] = j;
        seen_.insert(j.ordinal);
    }
}

const JobView* gittins_pick(const std::vector<const JobView*>& candidates, int server_queue,
                            const Time& tau) {
    // Comparing 1/denom values: the smaller denominator wins; a zero
    // denominator is the tagged infinite index.
    auto denom = [&](const JobView& j) {
        return j.queue == server_queue ? j.work : j.work + tau;
    };
    const JobView* best = nullptr;
    for (const JobView* j : candidates) {
        if (!best) {
            best = j;
            continue;
        }
        Time dj = denom(*j);
        Time db = denom(*best);
        bool better;
        if (dj != db) better = dj < db;
        else if (j->work != best->work) better = j->work < best->work;
        else if (j->queue != best->queue) better = j->queue < best->queue;
        else better = j->ordinal < best->ordinal;
        if (better) best = j;
    }
    return best;
}

PolicyAction GippPolicy::decide(const DecisionContext& ctx) {
    if (!clearing_) {
        tracker_.observe(ctx);
        if (auto alarm = tracker_.alarm_request(ctx)) return PolicyAction::set_alarm(*alarm, 2);
        for (int ordinal : tracker_.eligible_order()) {
            if (!known_jobs_.count(ordinal)) known_jobs_[ordinal] = tracker_.info(ordinal);
        }
    } else {
        note_arrival(ctx, seen_, known_jobs_);
    }

    if (ctx.server.activity == Activity::Serving || ctx.server.activity == Activity::Setting)
        return PolicyAction::idle();

    std::vector<const JobView*> candidates;
    if (clearing_) {
        for (const auto& [ordinal, j] : known_jobs_)
            if (!started_.count(ordinal)) candidates.push_back(&j);
    } else {
        for (int ordinal : tracker_.eligible_order())
            if (!started_.count(ordinal)) candidates.push_back(&known_jobs_.at(ordinal));
    }
    const JobView* best = gittins_pick(candidates, ctx.server.location, ctx.tau);
    if (!best) return PolicyAction::idle();
    if (best->queue != ctx.server.location) return PolicyAction::switch_to(best->queue);
    started_.insert(best->ordinal);
    return PolicyAction::serve(best->ordinal);
}

} // namespace pollbench::detail
