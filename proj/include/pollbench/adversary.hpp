#pragma once

#include <pollbench/benchmarks.hpp>
#include <pollbench/core.hpp>
#include <pollbench/policies.hpp>
#include <pollbench/trace.hpp>

#include <map>
#include <string>
#include <vector>

namespace pollbench {

/// A worst-case instance family: the instance, a closed-form lower bound on
/// the target policy's cost, and an explicit offline schedule whose total
/// (offline_bound) upper-bounds the offline optimum.
struct AdversarialFamily {
    std::string name;
    std::map<std::string, std::string> params;
    JobInstance instance;
    PolicySpec target_policy;
    Rational online_bound;     // lower bound on the target policy's total
    Rational offline_bound;    // exact total of offline_schedule
    ScheduleTrace offline_schedule;
    std::string limit_behavior;

    BenchmarkResult constructed_benchmark() const {
        return BenchmarkResult{BenchmarkKind::ConstructedOffline, offline_bound, offline_schedule,
                               false};
    }
};

class ParamsViolateRegimeError : public std::runtime_error {
public:
    explicit ParamsViolateRegimeError(const std::string& what) : std::runtime_error(what) {}
};

/// Seeds every queue at time zero (one job of work gamma at queue 1, unit
/// jobs elsewhere) and drops a batch of n unit jobs on queue 1 just after a
/// cyclic server has moved on; tau = n^2. Drives cyclic policies to a ratio
/// approaching k+1. Requires 3*gamma/2 <= k+1.
AdversarialFamily missed_batch(int k, const Rational& gamma, long long n,
                               const Rational& eps = Rational(1, 2));

/// One huge job (work n^2) on each of queues 2..k at time zero and n
/// zero-work jobs landing on queue 1 at tau + eps: cyclic policies strand
/// the zero-work batch behind the giants. Ratio grows without bound in n.
AdversarialFamily stranded_zeros(int k, long long n, const Rational& eps = Rational(1, 2),
                                 const Rational& tau = Rational(1));

/// l*n unit jobs on every queue at time zero: the per-visit cap forces k*n
/// full tours instead of k, so the visit-capped policy diverges as tau
/// grows. Both sides of the ratio are exact closed forms.
AdversarialFamily capped_visits(int k, long long n, long long l, const Rational& tau);

/// Two queues: one job of work p at queue 1 at time zero, n zero-work jobs
/// at queue 2 at time tau. Longest-queue-first serves the heavy job first;
/// ratio grows without bound along p = n.
AdversarialFamily slq_divergence(long long n, const Rational& p, const Rational& tau);

/// Streams one unit job onto each queue exactly when a fixed-table server
/// establishes it, with n_k jobs parked at the table's final queue from
/// time zero; tau = n_k^2. Lower-bounds every static routing discipline.
AdversarialFamily static_stream(const std::vector<int>& table, long long n_k);

enum class RoutingTrapKind { QueueLength, JobPriority };

/// QueueLength: one job per queue at time zero, heavy (work p) at queue 1,
/// zero elsewhere; equal queue lengths force a length-based policy into the
/// heavy job first. JobPriority: zero-work jobs, one per queue 2..k plus n
/// at queue 1, ordered so a priority-based policy tours the singles before
/// the batch. Both push the ratio to k in the limit.
AdversarialFamily routing_trap(RoutingTrapKind kind, int k, const Rational& p_or_n,
                               const Rational& tau);

/// A single unit job at time zero with tau = theta: any policy pays
/// 1 + theta against a setup-free benchmark of 1.
AdversarialFamily single_job(const Rational& theta);

/// Generator lookup by family name for the CLI; throws std::out_of_range
/// for unknown names.
AdversarialFamily make_family(const std::string& name,
                              const std::map<std::string, std::string>& params);

std::vector<std::string> family_names();

} // namespace pollbench
