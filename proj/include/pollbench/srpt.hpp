#pragma once

#include <pollbench/core.hpp>

#include <deque>
#include <map>
#include <optional>
#include <vector>

namespace pollbench {

/// Incremental preemptive shortest-remaining-processing-time simulator on a
/// zero-setup single machine. Jobs are fed in release order (online use) or
/// all at once (benchmark use); advance() replays releases, preemptions and
/// completions up to a target time. Ties in remaining work break by earlier
/// release, then ordinal; simultaneous completions are recorded in that
/// same order.
class SrptSimulator {
public:
    void add_job(int ordinal, Time release, Time work);

    /// Processes every event at times <= t and moves the clock to t.
    /// Requires t >= now().
    void advance(const Time& t);

    /// Runs until all added jobs are complete.
    void run_to_end();

    const Time& now() const { return now_; }

    /// Completion instant of the job that would finish next if no further
    /// job arrives; empty when nothing is active or pending.
    std::optional<Time> next_completion() const;

    /// Ordinals in completion order so far.
    const std::vector<int>& completed_order() const { return completed_order_; }
    const std::map<int, Time>& completion_times() const { return completion_times_; }

    Time total_completion() const;

private:
    struct Active {
        int ordinal;
        Time release;
        Time remaining;
    };
    struct Pending {
        int ordinal;
        Time release;
        Time work;
    };

    std::size_t running_index() const; // argmin (remaining, release, ordinal)
    void finish_at(const std::vector<std::size_t>& idx, const Time& t);

    Time now_{0};
    std::deque<Pending> pending_; // not yet released, non-decreasing release
    std::vector<Active> active_;
    std::vector<int> completed_order_;
    std::map<int, Time> completion_times_;
};

} // namespace pollbench
