#pragma once

#include <pollbench/rational.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pollbench {

using Time = Rational;

/// One arriving task. `ordinal` is the position in the input file (0-based)
/// and doubles as the job's identity everywhere else.
struct Job {
    int ordinal = 0;
    Time release;
    Time work;
    int queue = 1; // 1..k
};

/// A finite set of jobs plus the system parameters. After validate() the
/// jobs are sorted by (release, ordinal); ordinals keep their input values.
struct JobInstance {
    int k = 1;
    Time tau;
    std::vector<Job> jobs;

    std::size_t size() const { return jobs.size(); }
    bool is_clearing() const;
};

class InstanceError : public std::runtime_error {
public:
    explicit InstanceError(const std::string& what) : std::runtime_error(what) {}
};

/// A ratio bound that may be infinite (workload variation with p_min = 0).
/// Deliberately not a sentinel number: comparisons against Unbounded are
/// explicit.
struct Bound {
    static Bound unbounded() { return Bound{true, Rational()}; }
    static Bound of(const Rational& v) { return Bound{false, v}; }

    bool is_unbounded = false;
    Rational value;

    std::string to_string() const { return is_unbounded ? "unbounded" : value.to_string(); }
};

struct InstanceParams {
    Time p_min;
    Time p_max;
    Bound gamma; // workload variation: p_max <= gamma * p_min
    Bound theta; // setup bound: tau <= theta * p_min
};

/// Checks all instance invariants and returns a copy with jobs sorted by
/// (release, ordinal). Rejects out-of-range queues and negative times.
JobInstance validate(const JobInstance& instance);

/// Workload extremes and the gamma/theta ratios, with the degenerate-case
/// conventions: p_min = p_max = 0 gives gamma = 1; tau = p_min = 0 gives
/// theta = 1; p_min = 0 below a positive p_max (or tau) gives Unbounded.
InstanceParams derive_params(const JobInstance& instance);

/// n(n+1)/2: the total completion time of n unit jobs served back to back
/// from time zero with no setups.
Time pure_completion(long long n);

} // namespace pollbench
