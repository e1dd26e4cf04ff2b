#include <pollbench/core.hpp>

#include <algorithm>

namespace pollbench {

bool JobInstance::is_clearing() const {
    for (const auto& j : jobs)
        if (!j.release.is_zero()) return false;
    return true;
}

JobInstance validate(const JobInstance& instance) {
    if (instance.k < 1) throw InstanceError("queue count must be at least 1");
    if (instance.tau.is_negative()) throw InstanceError("setup time must be non-negative");
    for (const auto& job : instance.jobs) {
        if (job.release.is_negative())
            throw InstanceError("job " + std::to_string(job.ordinal) + " has negative release");
        if (job.work.is_negative())
            throw InstanceError("job " + std::to_string(job.ordinal) + " has negative work");
        if (job.queue < 1 || job.queue > instance.k)
            throw InstanceError("job " + std::to_string(job.ordinal) + " has queue " +
                                std::to_string(job.queue) + " outside 1.." +
                                std::to_string(instance.k));
    }

    JobInstance out = instance;
    std::stable_sort(out.jobs.begin(), out.jobs.end(), [](const Job& a, const Job& b) {
        if (a.release != b.release) return a.release < b.release;
        return a.ordinal < b.ordinal;
    });
    return out;
}

InstanceParams derive_params(const JobInstance& instance) {
    InstanceParams params;
    if (instance.jobs.empty()) {
        params.p_min = Time(0);
        params.p_max = Time(0);
    } else {
        params.p_min = instance.jobs.front().work;
        params.p_max = instance.jobs.front().work;
        for (const auto& job : instance.jobs) {
            params.p_min = min(params.p_min, job.work);
            params.p_max = max(params.p_max, job.work);
        }
    }

    if (params.p_min.is_zero()) {
        params.gamma = params.p_max.is_zero() ? Bound::of(Rational(1)) : Bound::unbounded();
        params.theta = instance.tau.is_zero() ? Bound::of(Rational(1)) : Bound::unbounded();
    } else {
        params.gamma = Bound::of(params.p_max / params.p_min);
        params.theta = Bound::of(instance.tau / params.p_min);
    }
    return params;
}

Time pure_completion(long long n) {
    if (n < 0) throw std::domain_error("pure_completion of negative count");
    return Rational(static_cast<Rational::Int>(n) * (n + 1), 2);
}

} // namespace pollbench
