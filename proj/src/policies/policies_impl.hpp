#pragma once

#include <pollbench/policies.hpp>
#include <pollbench/srpt.hpp>

#include <map>
#include <set>

namespace pollbench::detail {

const JobView* intra_queue_pick(const std::vector<JobView>& jobs, IntraOrder order);

/// Cyclic routing with exhaustive or gated service, with or without
/// skipping empty queues. The gate of a visit closes when the visit begins
/// (the setup completion, or the first service after an idle spell).
class CyclicPolicy : public Policy {
public:
    CyclicPolicy(bool gated, bool skip_empty, IntraOrder order)
        : gated_(gated), skip_empty_(skip_empty), order_(order) {}

    PolicyAction decide(const DecisionContext& ctx) override;

private:
    bool gated_;
    bool skip_empty_;
    IntraOrder order_;
    int regate_queue_ = 0; // in-place gated revisit bookkeeping
    Time regate_time_;
};

class LLimitedPolicy : public Policy {
public:
    LLimitedPolicy(long limit, bool skip_empty, IntraOrder order)
        : limit_(limit), skip_empty_(skip_empty), order_(order) {
        if (limit < 1) throw PolicySpecError("l-limited requires l >= 1");
    }

    PolicyAction decide(const DecisionContext& ctx) override;

private:
    long limit_;
    bool skip_empty_;
    IntraOrder order_;
    long last_visit_sig_ = -1;
    int round_offset_ = 0;
};

/// Exhaustive service; on exhaustion switch to the queue holding the most
/// jobs (ties to the lowest id); idle in place when the system is empty.
class SlqPolicy : public Policy {
public:
    PolicyAction decide(const DecisionContext& ctx) override;
};

/// Follows a fixed visit order (exhaustive per visit), then cycles
/// skip-empty once the table runs out. Used to exercise static routing.
class StaticTablePolicy : public Policy {
public:
    explicit StaticTablePolicy(std::vector<int> table);
    PolicyAction decide(const DecisionContext& ctx) override;

private:
    std::vector<int> table_;
    std::size_t pos_ = 0;
};

/// Shared machinery of the simulation-based policies: a zero-setup
/// preemptive SRPT run in lockstep with real time. A job becomes eligible
/// at its virtual completion instant; alarms wake the policy at instants
/// that coincide with no physical event.
class EligibilityTracker {
public:
    void seed(int ordinal, Time release, Time work, int queue);
    void observe(const DecisionContext& ctx); // feed arrivals, advance, remember metadata
    std::optional<Time> alarm_request(const DecisionContext& ctx);

    const std::vector<int>& eligible_order() const { return sim_.completed_order(); }
    const JobView& info(int ordinal) const { return jobs_.at(ordinal); }

private:
    SrptSimulator sim_;
    std::map<int, JobView> jobs_;
    std::set<int> known_;
    std::optional<Time> armed_;
};

class OneMachinePolicy : public Policy {
public:
    explicit OneMachinePolicy(bool clearing) : clearing_(clearing) {}
    PolicyAction decide(const DecisionContext& ctx) override;

private:
    bool clearing_;
    EligibilityTracker tracker_;
    std::set<int> started_;
    std::set<int> seen_; // clearing mode bookkeeping
    std::map<int, JobView> known_jobs_;
};

class GippPolicy : public Policy {
public:
    explicit GippPolicy(bool clearing) : clearing_(clearing) {}

    /// Pre-arrival backlog for a tracker started mid-run (mixed strategy
    /// hands over the unserved jobs at its trigger instant).
    void seed_backlog(const std::vector<JobView>& jobs, Time at);

    PolicyAction decide(const DecisionContext& ctx) override;

private:
    bool clearing_;
    EligibilityTracker tracker_;
    std::set<int> started_;
    std::set<int> seen_;
    std::map<int, JobView> known_jobs_;
};

/// Largest-index-first selection: the index of a job with work p is 1/p at
/// the server's queue and 1/(p + tau) elsewhere; zero denominators sort as
/// infinite. Ties break by smaller work, then queue id, then ordinal.
const JobView* gittins_pick(const std::vector<const JobView*>& candidates, int server_queue,
                            const Time& tau);

class FollowerPolicy : public Policy {
public:
    FollowerPolicy(Transform transform, PolicySpec base_spec);
    void bind(const SimStatics& statics) override;
    PolicyAction decide(const DecisionContext& ctx) override;

private:
    void refresh(const DecisionContext& ctx);

    Transform transform_;
    PolicySpec base_spec_;
    bool base_preemptive_;
    std::vector<Job> revealed_;   // in arrival order, transformed works
    std::set<int> known_;
    std::map<int, JobView> real_jobs_;
    std::vector<std::pair<Time, int>> virtual_commits_; // (commit instant, ordinal)
    bool dirty_ = true;
    std::set<int> started_;
    std::optional<Time> armed_;
};

class MixedPolicy : public Policy {
public:
    MixedPolicy(Rational eta, std::optional<Rational> p_min_cfg, PolicySpec base_spec);
    void bind(const SimStatics& statics) override;
    PolicyAction decide(const DecisionContext& ctx) override;

private:
    enum class Mode { Base, FinishingJob, Gipp };

    void arm_gipp(const DecisionContext& ctx);

    Rational eta_;
    std::optional<Rational> p_min_cfg_;
    Rational threshold_;
    PolicySpec base_spec_;
    std::unique_ptr<Policy> base_;
    std::unique_ptr<GippPolicy> gipp_;
    Mode mode_ = Mode::Base;
};

} // namespace pollbench::detail
