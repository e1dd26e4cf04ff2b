#pragma once

#include <pollbench/core.hpp>
#include <pollbench/policies.hpp>
#include <pollbench/trace.hpp>

#include <optional>
#include <string>
#include <vector>

namespace pollbench {

enum class BenchmarkKind { SrptReduced, BruteForceOptimal, ConstructedOffline };

const char* benchmark_name(BenchmarkKind kind);

struct BenchmarkResult {
    BenchmarkKind kind;
    Time total;
    std::optional<ScheduleTrace> schedule;
    bool exact = false; // true for the brute-force oracle
};

/// Total completion time of preemptive SRPT on the setup-free copy of the
/// instance: a lower bound on the offline optimum.
BenchmarkResult srpt_reduced(const JobInstance& instance);

class TooLargeError : public std::runtime_error {
public:
    explicit TooLargeError(const std::string& what) : std::runtime_error(what) {}
};

/// Earliest-start schedule of the jobs in the given order: each job starts
/// at max(previous completion + tau * [first job or queue change], release).
/// For a fixed order this is optimal: starting any job earlier never delays
/// a completion, and a pending setup can overlap waiting for a release
/// (exchange argument; no deliberate idling is ever needed).
Time schedule_order_total(const JobInstance& instance, const std::vector<int>& order);

/// Same schedule as schedule_order_total, materialized as a trace.
ScheduleTrace schedule_order_trace(const JobInstance& instance, const std::vector<int>& order);

/// Exact offline optimum by permutation search with symmetric-job pruning
/// and a completion lower bound. Enumerates orders only: for a fixed order
/// the earliest-start schedule dominates, so the search is exhaustive over
/// all offline schedules. Throws TooLargeError above max_n (default 10).
/// The returned schedule is the cost-minimal order, ties broken toward the
/// lexicographically smallest ordinal sequence, independent of threading.
BenchmarkResult brute_force_optimal(const JobInstance& instance, int max_n = 10,
                                    bool parallel = true);

/// Reference implementation: plain enumeration of every permutation.
/// Kept textbook-simple so the pruned/parallel search can be audited
/// against it.
BenchmarkResult brute_force_optimal_serial_reference(const JobInstance& instance, int max_n = 10);

/// Minimum earliest-start total over orders that an exhaustive-service
/// policy could produce: whenever consecutive jobs sit in different queues,
/// the departed queue holds no job released by the switch instant.
Time min_exhaustive_order_total(const JobInstance& instance, int max_n = 10);

struct RatioReport {
    PolicySpec policy;
    std::string instance_id;
    Time policy_total;
    BenchmarkResult benchmark;
    bool zero_benchmark = false; // ratio undefined: benchmark total is zero
    Rational ratio;              // valid when !zero_benchmark
    std::optional<Rational> claimed_bound;
    bool bound_satisfied = true; // stays true when no bound applies
};

/// The tightest documented performance bound applicable to this policy on
/// this instance against the given benchmark, if any.
std::optional<Rational> claimed_bound(const PolicySpec& spec, const JobInstance& instance,
                                      const InstanceParams& params, BenchmarkKind kind);

/// Runs the policy, computes the benchmark and their exact ratio, and
/// compares against the registered bound when one applies.
RatioReport competitive_ratio(const PolicySpec& spec, const JobInstance& instance,
                              BenchmarkKind kind, int max_n = 10,
                              const std::optional<BenchmarkResult>& constructed = std::nullopt,
                              const std::string& instance_id = "");

} // namespace pollbench
