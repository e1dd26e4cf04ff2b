#include <pollbench/engine.hpp>

#include <algorithm>
#include <map>
#include <set>

namespace pollbench {

namespace {

struct Engine {
    const JobInstance& inst;
    Policy& policy;
    bool enforce_budget;
    Time p_max_budget;

    Time clock{0};
    ServerState server;

    std::vector<int> arrival_order;    // ordinals sorted by (release, queue, ordinal)
    std::size_t next_arrival = 0;
    std::map<int, const Job*> jobs;    // ordinal -> job
    std::vector<std::vector<int>> waiting; // per queue, arrival order
    std::set<int> served;
    int unserved = 0;

    std::optional<Time> setup_done;
    std::optional<Time> serve_done;
    std::optional<Time> wait_until;
    std::set<std::pair<Time, std::uint64_t>> alarms;

    std::vector<int> visit_count;
    bool in_visit = false;
    int visit_queue = 0;
    Time visit_start;
    int visit_served = 0;

    std::optional<Time> idle_since;
    Time guard_clock{0};
    int guard_epochs = 0;

    ScheduleTrace trace;

    Engine(const JobInstance& i, Policy& p)
        : inst(i), policy(p), waiting(static_cast<std::size_t>(i.k)),
          visit_count(static_cast<std::size_t>(i.k) + 1, 0) {
        SimStatics statics{i.k, i.tau, derive_params(i)};
        policy.bind(statics);
        enforce_budget = policy.budget_constrained();
        p_max_budget = statics.params.p_max;

        for (const auto& job : inst.jobs) jobs[job.ordinal] = &job;
        for (const auto& job : inst.jobs) arrival_order.push_back(job.ordinal);
        std::sort(arrival_order.begin(), arrival_order.end(), [&](int a, int b) {
            const Job& ja = *jobs.at(a);
            const Job& jb = *jobs.at(b);
            if (ja.release != jb.release) return ja.release < jb.release;
            if (ja.queue != jb.queue) return ja.queue < jb.queue;
            return ja.ordinal < jb.ordinal;
        });
        unserved = static_cast<int>(inst.jobs.size());
    }

    void emit(EventType type, Time t, int queue = 0, int job = -1) {
        trace.events.push_back(TraceEvent{type, t, queue, job});
    }

    void close_idle_span() {
        if (idle_since && clock > *idle_since) {
            emit(EventType::IdleStart, *idle_since);
            emit(EventType::IdleEnd, clock);
        }
        idle_since.reset();
    }

    int total_waiting() const {
        int n = 0;
        for (const auto& w : waiting) n += static_cast<int>(w.size());
        return n;
    }

    void start_visit(int q) {
        visit_count[static_cast<std::size_t>(q)]++;
        in_visit = true;
        visit_queue = q;
        visit_start = clock;
        visit_served = 0;
    }

    DecisionContext make_context(const Cause& cause) const {
        DecisionContext ctx;
        ctx.clock = clock;
        ctx.cause = cause;
        ctx.k = inst.k;
        ctx.tau = inst.tau;
        ctx.server = server;
        ctx.waiting.resize(static_cast<std::size_t>(inst.k));
        for (int q = 1; q <= inst.k; ++q) {
            for (int ord : waiting[static_cast<std::size_t>(q - 1)]) {
                const Job& j = *jobs.at(ord);
                ctx.waiting[static_cast<std::size_t>(q - 1)].push_back(
                    JobView{j.ordinal, j.release, j.work, j.queue});
            }
        }
        ctx.visit_count.assign(visit_count.begin() + 1, visit_count.end());
        ctx.in_visit = in_visit;
        ctx.visit_queue = visit_queue;
        ctx.visit_start = visit_start;
        ctx.visit_served = visit_served;
        return ctx;
    }

    [[noreturn]] void illegal(const std::string& msg) {
        throw IllegalActionError("illegal action at t=" + clock.to_string() + ": " + msg);
    }

    void end_wait_if_any() {
        if (server.activity == Activity::Waiting) {
            emit(EventType::WaitEnd, clock, server.location);
            wait_until.reset();
            server.activity = Activity::Idle;
        }
    }

    void apply_serve(int job_id) {
        if (server.activity == Activity::Serving || server.activity == Activity::Setting)
            illegal("serve while busy");
        auto it = jobs.find(job_id);
        if (it == jobs.end()) illegal("serve of unknown job " + std::to_string(job_id));
        const Job& job = *it->second;
        if (served.count(job_id)) illegal("serve of finished job " + std::to_string(job_id));
        if (job.release > clock) illegal("serve of unreleased job " + std::to_string(job_id));
        if (server.location != job.queue)
            illegal("serve of job " + std::to_string(job_id) + " from queue " +
                    std::to_string(job.queue) + " while at " + std::to_string(server.location));

        end_wait_if_any();
        close_idle_span();
        if (!in_visit) start_visit(server.location); // resumed service without a new setup

        auto& wq = waiting[static_cast<std::size_t>(job.queue - 1)];
        wq.erase(std::find(wq.begin(), wq.end(), job_id));

        emit(EventType::ServeStart, clock, job.queue, job_id);
        server.activity = Activity::Serving;
        server.serving_job = job_id;
        server.serving_started = clock;
        serve_done = clock + job.work;
        visit_served++;
    }

    void apply_switch(int q) {
        if (server.activity == Activity::Serving || server.activity == Activity::Setting)
            illegal("switch while busy");
        if (q < 1 || q > inst.k) illegal("switch to queue " + std::to_string(q));
        if (q == server.location) illegal("switch to the current queue");

        end_wait_if_any();
        close_idle_span();
        in_visit = false;

        emit(EventType::SetupStart, clock, q);
        server.activity = Activity::Setting;
        server.setting_target = q;
        server.setting_started = clock;
        setup_done = clock + inst.tau;
    }

    void apply_wait(Time t) {
        if (server.activity == Activity::Serving || server.activity == Activity::Setting)
            illegal("wait while busy");
        if (server.location == kDock) illegal("wait before any setup");
        if (t <= clock) illegal("wait until a past or current time");
        if (enforce_budget) {
            // Stay budget: (jobs served this visit + jobs now present) * p_max,
            // measured from the start of the visit. New arrivals re-extend it.
            Rational units(visit_served +
                           static_cast<int>(waiting[static_cast<std::size_t>(server.location - 1)].size()));
            Time deadline = (in_visit ? visit_start : clock) + units * p_max_budget;
            if (t > deadline)
                illegal("wait beyond the per-visit stay budget (deadline " +
                        deadline.to_string() + ")");
        }
        if (server.activity == Activity::Waiting) {
            server.waiting_until = t; // re-target an ongoing wait
            wait_until = t;
            return;
        }
        close_idle_span();
        emit(EventType::WaitStart, clock, server.location);
        server.activity = Activity::Waiting;
        server.waiting_until = t;
        wait_until = t;
    }

    void apply_abort() {
        if (server.activity != Activity::Setting) illegal("abort without a setup in progress");
        emit(EventType::SetupAbort, clock, server.setting_target);
        server.activity = Activity::Idle;
        server.setting_target = 0;
        setup_done.reset();
    }

    void epoch(Cause cause) {
        if (clock != guard_clock) {
            guard_clock = clock;
            guard_epochs = 0;
        }
        if (++guard_epochs > 1024 + 16 * (static_cast<int>(inst.jobs.size()) + inst.k))
            illegal("livelock: too many zero-time decisions");

        for (int hops = 0; hops < 256; ++hops) {
            PolicyAction action = policy.decide(make_context(cause));
            switch (action.kind) {
            case PolicyAction::Kind::Serve:
                apply_serve(action.job_id);
                return;
            case PolicyAction::Kind::SwitchTo:
                apply_switch(action.queue);
                return;
            case PolicyAction::Kind::WaitUntil:
                apply_wait(action.time);
                return;
            case PolicyAction::Kind::SetAlarm:
                if (action.time < clock) illegal("alarm in the past");
                alarms.insert({action.time, action.alarm_tag});
                continue; // instantaneous, re-consult
            case PolicyAction::Kind::AbortSetupAndStay:
                apply_abort();
                continue; // server now idle, re-consult
            case PolicyAction::Kind::IdleUntilNextEvent:
                if (server.activity == Activity::Idle && !idle_since) idle_since = clock;
                if (server.activity == Activity::Idle && total_waiting() == 0) in_visit = false;
                return;
            }
        }
        illegal("runaway chain of instantaneous actions");
    }

    ScheduleTrace run() {
        while (unserved > 0) {
            std::optional<Time> next;
            auto consider = [&](const std::optional<Time>& t) {
                if (t && (!next || *t < *next)) next = *t;
            };
            if (next_arrival < arrival_order.size())
                consider(jobs.at(arrival_order[next_arrival])->release);
            consider(setup_done);
            consider(serve_done);
            consider(wait_until);
            if (!alarms.empty()) consider(alarms.begin()->first);

            if (!next)
                throw StalledError("stalled at t=" + clock.to_string() + " with " +
                                   std::to_string(unserved) + " unserved job(s)");
            clock = *next;

            // Phase 1: ingest every arrival at this instant, then one epoch
            // per arrival in (queue, ordinal) order.
            std::vector<int> arrived_now;
            while (next_arrival < arrival_order.size()) {
                int ord = arrival_order[next_arrival];
                const Job& j = *jobs.at(ord);
                if (j.release != clock) break;
                waiting[static_cast<std::size_t>(j.queue - 1)].push_back(ord);
                arrived_now.push_back(ord);
                next_arrival++;
            }
            for (int ord : arrived_now) epoch(Cause{CauseKind::Arrival, ord, 0, 0});

            // Phase 2: setup completion (unless aborted during phase 1).
            if (setup_done && *setup_done == clock) {
                int q = server.setting_target;
                emit(EventType::SetupEnd, clock, q);
                server.location = q;
                server.activity = Activity::Idle;
                server.setting_target = 0;
                setup_done.reset();
                start_visit(q);
                epoch(Cause{CauseKind::SetupDone, -1, q, 0});
            }

            // Phase 3: service completion.
            if (serve_done && *serve_done == clock) {
                int ord = server.serving_job;
                emit(EventType::ServeEnd, clock, jobs.at(ord)->queue, ord);
                trace.completions[ord] = clock;
                served.insert(ord);
                server.activity = Activity::Idle;
                server.serving_job = -1;
                serve_done.reset();
                unserved--;
                if (unserved == 0) break; // finalize without consulting further
                epoch(Cause{CauseKind::ServeDone, ord, 0, 0});
            }

            // Phase 4: wait timer.
            if (wait_until && *wait_until == clock) {
                emit(EventType::WaitEnd, clock, server.location);
                server.activity = Activity::Idle;
                wait_until.reset();
                epoch(Cause{CauseKind::WaitTimerFired, -1, 0, 0});
            }

            // Phase 5: alarms.
            while (!alarms.empty() && alarms.begin()->first == clock) {
                std::uint64_t tag = alarms.begin()->second;
                alarms.erase(alarms.begin());
                epoch(Cause{CauseKind::AlarmFired, -1, 0, tag});
            }
        }
        return trace;
    }
};

} // namespace

ScheduleTrace simulate(Policy& policy, const JobInstance& instance) {
    // Cheap normalization audit; callers are expected to go through validate().
    JobInstance checked = validate(instance);
    for (std::size_t i = 0; i < instance.jobs.size(); ++i)
        if (checked.jobs[i].ordinal != instance.jobs[i].ordinal)
            throw InstanceError("instance is not normalized; run validate() first");

    Engine engine(instance, policy);
    return engine.run();
}

} // namespace pollbench
