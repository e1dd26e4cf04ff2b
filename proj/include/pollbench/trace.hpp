#pragma once

#include <pollbench/core.hpp>

#include <map>
#include <string>
#include <vector>

namespace pollbench {

enum class EventType {
    SetupStart,
    SetupEnd,
    SetupAbort,
    ServeStart,
    ServeEnd,
    WaitStart,
    WaitEnd,
    IdleStart,
    IdleEnd,
};

const char* event_name(EventType type);

struct TraceEvent {
    EventType type;
    Time t;
    int queue = 0; // setup/wait/serve location; 0 when not applicable
    int job = -1;  // ordinal; -1 when not applicable
};

/// The full timeline one simulation produced: setups, services, waits and
/// idle gaps, plus the completion time of every job.
struct ScheduleTrace {
    std::vector<TraceEvent> events;
    std::map<int, Time> completions; // ordinal -> ServeEnd time

    bool operator==(const ScheduleTrace& o) const;
};

class TraceError : public std::runtime_error {
public:
    explicit TraceError(const std::string& what) : std::runtime_error(what) {}
};

/// Sum of completion times. Throws TraceError("unserved job ...") when a
/// job of the instance has no completion recorded.
Time total_completion(const ScheduleTrace& trace, const JobInstance& instance);

/// Structural audit of a trace against its instance: events time-ordered,
/// service intervals disjoint and exactly p_j long, every ServeStart at an
/// established queue (a completed, unaborted setup with no establishment
/// elsewhere in between), setups exactly tau long, ServeStart >= release,
/// every job served exactly once, completions consistent.
void validate_trace(const ScheduleTrace& trace, const JobInstance& instance);

/// One event per line: "t=5/2 SERVE_END job=3 q=2". Stable format, used by
/// golden-file tests and the `trace` CLI subcommand.
std::string timeline_dump(const ScheduleTrace& trace);

} // namespace pollbench
