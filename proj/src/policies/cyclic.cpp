#include "policies_impl.hpp"

#include <algorithm>

namespace pollbench::detail {

namespace {

/// Intra-queue pick: FCFS is (release, ordinal); SPT is (work, release, ordinal).
const JobView* pick_job(const std::vector<JobView>& jobs, IntraOrder order) {
    if (jobs.empty()) return nullptr;
    const JobView* best = &jobs.front();
    if (order == IntraOrder::Fcfs) return best; // arrival order is (release, ordinal)
    for (const auto& j : jobs) {
        if (j.work != best->work ? j.work < best->work
            : j.release != best->release ? j.release < best->release
                                         : j.ordinal < best->ordinal)
            best = &j;
    }
    return best;
}

int next_queue(int q, int k) { return q % k + 1; }

/// Scans q+1, ..., k, 1, ..., q-1 and finally q itself for a non-empty
/// queue; returns 0 when the whole system is empty.
int next_nonempty_cyclic(const DecisionContext& ctx, int from) {
    for (int step = 1; step <= ctx.k; ++step) {
        int q = (from - 1 + step) % ctx.k + 1;
        if (!ctx.queue_empty(q)) return q;
    }
    return 0;
}

} // namespace

const JobView* intra_queue_pick(const std::vector<JobView>& jobs, IntraOrder order) {
    return pick_job(jobs, order);
}

PolicyAction CyclicPolicy::decide(const DecisionContext& ctx) {
    if (ctx.server.activity == Activity::Serving || ctx.server.activity == Activity::Setting)
        return PolicyAction::idle();

    const int loc = ctx.server.location;
    if (loc == kDock) {
        if (ctx.system_empty()) return PolicyAction::idle();
        if (skip_empty_) return PolicyAction::switch_to(next_nonempty_cyclic(ctx, ctx.k));
        return PolicyAction::switch_to(1);
    }

    Time gate = ctx.in_visit ? ctx.visit_start : ctx.clock;
    if (gated_ && regate_queue_ == loc && ctx.in_visit && regate_time_ > gate) gate = regate_time_;

    std::vector<JobView> servable;
    for (const auto& j : ctx.waiting[static_cast<std::size_t>(loc - 1)]) {
        if (!gated_ || j.release <= gate) servable.push_back(j);
    }
    if (const JobView* job = pick_job(servable, order_)) return PolicyAction::serve(job->ordinal);

    if (skip_empty_) {
        int target = next_nonempty_cyclic(ctx, loc);
        if (target == 0) return PolicyAction::idle(); // system empty: wake on arrival
        if (target == loc) {
            // Only this queue holds work (all of it behind the gate): begin a
            // fresh gated visit in place, no setup needed.
            regate_queue_ = loc;
            regate_time_ = ctx.clock;
            const JobView* job =
                pick_job(ctx.waiting[static_cast<std::size_t>(loc - 1)], order_);
            return PolicyAction::serve(job->ordinal);
        }
        return PolicyAction::switch_to(target);
    }

    // No skipping: keep cycling, setting up empty queues as they come.
    if (ctx.k == 1) return PolicyAction::idle();
    if (ctx.system_empty() && ctx.tau.is_zero())
        return PolicyAction::idle(); // free setups make cycling a no-op; avoid spinning
    return PolicyAction::switch_to(next_queue(loc, ctx.k));
}

PolicyAction LLimitedPolicy::decide(const DecisionContext& ctx) {
    if (ctx.server.activity == Activity::Serving || ctx.server.activity == Activity::Setting)
        return PolicyAction::idle();

    const int loc = ctx.server.location;
    if (loc == kDock) {
        if (ctx.system_empty()) return PolicyAction::idle();
        if (skip_empty_) {
            for (int q = 1; q <= ctx.k; ++q)
                if (!ctx.queue_empty(q)) return PolicyAction::switch_to(q);
        }
        return PolicyAction::switch_to(1);
    }

    // Visits are identified by the total establishment count; a fresh
    // establishment resets the per-round offset, while an in-place
    // round restart only bumps the offset.
    long sig = 0;
    for (int c : ctx.visit_count) sig += c;
    if (sig != last_visit_sig_) {
        last_visit_sig_ = sig;
        round_offset_ = 0;
    }
    int served_this_round = ctx.in_visit ? ctx.visit_served - round_offset_ : 0;

    const auto& here = ctx.waiting[static_cast<std::size_t>(loc - 1)];
    if (ctx.k == 1) {
        // Degenerate single-queue system: the cap cannot trigger a switch.
        if (const JobView* job = intra_queue_pick(here, order_))
            return PolicyAction::serve(job->ordinal);
        return PolicyAction::idle();
    }

    if (served_this_round < limit_ && !here.empty())
        return PolicyAction::serve(intra_queue_pick(here, order_)->ordinal);

    if (skip_empty_) {
        for (int step = 1; step <= ctx.k; ++step) {
            int q = (loc - 1 + step) % ctx.k + 1;
            if (!ctx.queue_empty(q)) {
                if (q == loc) {
                    // Alone with work beyond the cap: a new round in place.
                    round_offset_ = ctx.visit_served;
                    return PolicyAction::serve(intra_queue_pick(here, order_)->ordinal);
                }
                return PolicyAction::switch_to(q);
            }
        }
        return PolicyAction::idle();
    }
    if (ctx.system_empty() && ctx.tau.is_zero()) return PolicyAction::idle();
    return PolicyAction::switch_to(next_queue(loc, ctx.k));
}

PolicyAction SlqPolicy::decide(const DecisionContext& ctx) {
    if (ctx.server.activity == Activity::Serving || ctx.server.activity == Activity::Setting)
        return PolicyAction::idle();

    const int loc = ctx.server.location;
    if (loc != kDock) {
        const auto& here = ctx.waiting[static_cast<std::size_t>(loc - 1)];
        if (const JobView* job = intra_queue_pick(here, IntraOrder::Fcfs))
            return PolicyAction::serve(job->ordinal);
    }

    // Exhausted (or docked): switch to the longest queue, lowest id on ties.
    int best = 0;
    std::size_t best_len = 0;
    for (int q = 1; q <= ctx.k; ++q) {
        std::size_t len = ctx.waiting[static_cast<std::size_t>(q - 1)].size();
        if (len > best_len) {
            best = q;
            best_len = len;
        }
    }
    if (best == 0) return PolicyAction::idle(); // idle in place when the system is empty
    return PolicyAction::switch_to(best);
}

StaticTablePolicy::StaticTablePolicy(std::vector<int> table) : table_(std::move(table)) {
    for (std::size_t i = 1; i < table_.size(); ++i)
        if (table_[i] == table_[i - 1])
            throw PolicySpecError("static table repeats a queue consecutively");
}

PolicyAction StaticTablePolicy::decide(const DecisionContext& ctx) {
    if (ctx.server.activity == Activity::Serving || ctx.server.activity == Activity::Setting)
        return PolicyAction::idle();

    const int loc = ctx.server.location;
    if (loc != kDock) {
        const auto& here = ctx.waiting[static_cast<std::size_t>(loc - 1)];
        if (const JobView* job = intra_queue_pick(here, IntraOrder::Fcfs))
            return PolicyAction::serve(job->ordinal);
    }

    if (pos_ < table_.size()) {
        int target = table_[pos_];
        if (target == loc) {
            pos_++; // already here: the table entry is a free revisit
            return decide(ctx);
        }
        pos_++;
        return PolicyAction::switch_to(target);
    }

    // Table exhausted: fall back to cyclic skip-empty behaviour.
    for (int step = 1; step <= ctx.k; ++step) {
        int q = (std::max(loc, 1) - 1 + step) % ctx.k + 1;
        if (!ctx.queue_empty(q) && q != loc) return PolicyAction::switch_to(q);
    }
    if (loc != kDock && !ctx.queue_empty(loc))
        return PolicyAction::serve(
            intra_queue_pick(ctx.waiting[static_cast<std::size_t>(loc - 1)], IntraOrder::Fcfs)->ordinal);
    return PolicyAction::idle();
}

} // namespace pollbench::detail
