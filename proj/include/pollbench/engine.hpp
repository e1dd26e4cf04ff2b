#pragma once

#include <pollbench/core.hpp>
#include <pollbench/trace.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

namespace pollbench {

/// Location 0 means the neutral dock the server occupies before its first
/// setup; the first establishment of any queue costs a full tau.
inline constexpr int kDock = 0;

enum class Activity { Idle, Setting, Serving, Waiting };

struct ServerState {
    int location = kDock; // kDock or 1..k
    Activity activity = Activity::Idle;
    int setting_target = 0;
    Time setting_started;
    int serving_job = -1;
    Time serving_started;
    Time waiting_until;
};

enum class CauseKind { Arrival, ServeDone, SetupDone, WaitTimerFired, AlarmFired };

struct Cause {
    CauseKind kind;
    int job = -1;       // Arrival / ServeDone
    int queue = 0;      // SetupDone
    std::uint64_t alarm_tag = 0;
};

struct JobView {
    int ordinal;
    Time release;
    Time work;
    int queue;
};

/// Everything a policy may look at when it is consulted. Built from state
/// revealed at or before `clock`; future arrivals are invisible.
struct DecisionContext {
    Time clock;
    Cause cause;
    int k = 1;
    Time tau;
    ServerState server;

    /// waiting[q-1]: arrived, unserved, not-in-service jobs of queue q in
    /// arrival order (release, then ordinal).
    std::vector<std::vector<JobView>> waiting;

    /// Completed visits per queue (a visit starts at establishment, or at
    /// the first service after an idle spell at an established queue).
    std::vector<int> visit_count;
    bool in_visit = false;
    int visit_queue = 0;
    Time visit_start;
    int visit_served = 0; // jobs served (started) during the current visit

    bool queue_empty(int q) const { return waiting[static_cast<std::size_t>(q - 1)].empty(); }
    bool system_empty() const {
        for (const auto& w : waiting)
            if (!w.empty()) return false;
        return true;
    }
};

struct PolicyAction {
    enum class Kind {
        Serve,            // job_id
        SwitchTo,         // queue: begins a fresh setup of duration tau
        WaitUntil,        // time
        SetAlarm,         // time + tag; instantaneous, policy is re-consulted
        AbortSetupAndStay,// legal only while setting up
        IdleUntilNextEvent,
    };

    Kind kind;
    int job_id = -1;
    int queue = 0;
    Time time;
    std::uint64_t alarm_tag = 0;

    static PolicyAction serve(int job) { return {Kind::Serve, job, 0, Time(0), 0}; }
    static PolicyAction switch_to(int q) { return {Kind::SwitchTo, -1, q, Time(0), 0}; }
    static PolicyAction wait_until(Time t) { return {Kind::WaitUntil, -1, 0, t, 0}; }
    static PolicyAction set_alarm(Time t, std::uint64_t tag) { return {Kind::SetAlarm, -1, 0, t, tag}; }
    static PolicyAction abort_setup() { return {Kind::AbortSetupAndStay, -1, 0, Time(0), 0}; }
    static PolicyAction idle() { return {Kind::IdleUntilNextEvent, -1, 0, Time(0), 0}; }
};

/// Structural facts a policy may use in addition to the online stream:
/// queue count, setup time, and the workload envelope the operator
/// configured (mirrors treating gamma/theta as known constants).
struct SimStatics {
    int k = 1;
    Time tau;
    InstanceParams params;
};

class Policy {
public:
    virtual ~Policy() = default;

    virtual void bind(const SimStatics& statics) { statics_ = statics; }

    virtual PolicyAction decide(const DecisionContext& ctx) = 0;

    /// When true the engine enforces the per-visit stay budget: waiting may
    /// not extend a visit beyond (jobs served + jobs present) * p_max.
    virtual bool budget_constrained() const { return false; }

protected:
    const SimStatics& statics() const { return statics_; }

private:
    SimStatics statics_;
};

class SimulationError : public std::runtime_error {
public:
    explicit SimulationError(const std::string& what) : std::runtime_error(what) {}
};

class IllegalActionError : public SimulationError {
public:
    explicit IllegalActionError(const std::string& what) : SimulationError(what) {}
};

class StalledError : public SimulationError {
public:
    explicit StalledError(const std::string& what) : SimulationError(what) {}
};

/// Runs `policy` against a validated instance and returns the full trace.
/// Deterministic: identical inputs give identical traces. Decision epochs
/// are job arrivals, service completions, setup completions, wait-timer
/// expiries and policy alarms; at equal times arrivals are ingested first
/// (ordered by queue then ordinal), then setup and service completions,
/// then timers, then alarms.
ScheduleTrace simulate(Policy& policy, const JobInstance& instance);

} // namespace pollbench
