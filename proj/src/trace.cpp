#include <pollbench/trace.hpp>

#include <algorithm>

namespace pollbench {

const char* event_name(EventType type) {
    switch (type) {
    case EventType::SetupStart: return "SETUP_START";
    case EventType::SetupEnd: return "SETUP_END";
    case EventType::SetupAbort: return "SETUP_ABORT";
    case EventType::ServeStart: return "SERVE_START";
    case EventType::ServeEnd: return "SERVE_END";
    case EventType::WaitStart: return "WAIT_START";
    case EventType::WaitEnd: return "WAIT_END";
    case EventType::IdleStart: return "IDLE_START";
    case EventType::IdleEnd: return "IDLE_END";
    }
    return "?";
}

bool ScheduleTrace::operator==(const ScheduleTrace& o) const {
    if (completions != o.completions) return false;
    if (events.size() != o.events.size()) return false;
    for (std::size_t i = 0; i < events.size(); ++i) {
        const auto& a = events[i];
        const auto& b = o.events[i];
        if (a.type != b.type || a.t != b.t || a.queue != b.queue || a.job != b.job) return false;
    }
    return true;
}

Time total_completion(const ScheduleTrace& trace, const JobInstance& instance) {
    Time total(0);
    for (const auto& job : instance.jobs) {
        auto it = trace.completions.find(job.ordinal);
        if (it == trace.completions.end())
            throw TraceError("unserved job " + std::to_string(job.ordinal));
        total += it->second;
    }
    return total;
}

void validate_trace(const ScheduleTrace& trace, const JobInstance& instance) {
    std::map<int, const Job*> by_ordinal;
    for (const auto& job : instance.jobs) by_ordinal[job.ordinal] = &job;

    auto fail = [](const std::string& msg) { throw TraceError(msg); };

    Time prev(0);
    bool first = true;
    int established = 0;      // 0 = no queue established yet
    int setting = 0;          // queue being set up, 0 = none
    Time setting_since(0);
    int serving = -1;
    Time serve_started(0);
    std::map<int, Time> starts;
    std::map<int, Time> ends;

    for (const auto& ev : trace.events) {
        if (!first && ev.t < prev) fail("events out of order at t=" + ev.t.to_string());
        first = false;
        prev = ev.t;

        switch (ev.type) {
        case EventType::SetupStart:
            if (setting != 0) fail("setup started while another setup in progress");
            if (serving != -1) fail("setup started while serving");
            setting = ev.queue;
            setting_since = ev.t;
            break;
        case EventType::SetupEnd:
            if (setting != ev.queue) fail("setup end without matching start");
            if (ev.t - setting_since != instance.tau)
                fail("setup duration is not tau at t=" + ev.t.to_string());
            established = ev.queue;
            setting = 0;
            break;
        case EventType::SetupAbort:
            if (setting != ev.queue) fail("setup abort without matching start");
            setting = 0; // no establishment: a fresh setup is needed later
            break;
        case EventType::ServeStart: {
            auto it = by_ordinal.find(ev.job);
            if (it == by_ordinal.end()) fail("service of unknown job " + std::to_string(ev.job));
            const Job& job = *it->second;
            if (starts.count(ev.job)) fail("job " + std::to_string(ev.job) + " served twice");
            if (setting != 0) fail("service started during a setup");
            if (serving != -1) fail("overlapping services");
            if (established != job.queue)
                fail("job " + std::to_string(ev.job) + " served without establishment of queue " +
                     std::to_string(job.queue));
            if (ev.t < job.release)
                fail("job " + std::to_string(ev.job) + " served before release");
            serving = ev.job;
            serve_started = ev.t;
            starts[ev.job] = ev.t;
            break;
        }
        case EventType::ServeEnd: {
            if (serving != ev.job) fail("serve end without matching start");
            const Job& job = *by_ordinal.at(ev.job);
            if (ev.t - serve_started != job.work)
                fail("service of job " + std::to_string(ev.job) + " is not exactly its work");
            ends[ev.job] = ev.t;
            serving = -1;
            break;
        }
        case EventType::WaitStart:
        case EventType::WaitEnd:
        case EventType::IdleStart:
        case EventType::IdleEnd:
            break;
        }
    }
    if (serving != -1) fail("trace ends mid-service");
    if (setting != 0) fail("trace ends mid-setup");

    for (const auto& job : instance.jobs) {
        if (!ends.count(job.ordinal)) fail("job " + std::to_string(job.ordinal) + " never served");
        auto it = trace.completions.find(job.ordinal);
        if (it == trace.completions.end() || it->second != ends.at(job.ordinal))
            fail("completion of job " + std::to_string(job.ordinal) + " inconsistent with trace");
    }
    if (trace.completions.size() != instance.jobs.size())
        fail("completion entries do not match the instance");
}

std::string timeline_dump(const ScheduleTrace& trace) {
    std::string out;
    for (const auto& ev : trace.events) {
        out += "t=" + ev.t.to_string() + " " + event_name(ev.type);
        if (ev.job >= 0) out += " job=" + std::to_string(ev.job);
        if (ev.queue > 0) out += " q=" + std::to_string(ev.queue);
        out += "\n";
    }
    return out;
}

} // namespace pollbench
