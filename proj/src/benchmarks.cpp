#include <pollbench/benchmarks.hpp>

#include <pollbench/engine.hpp>
#include <pollbench/srpt.hpp>

#include <algorithm>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pollbench {

const char* benchmark_name(BenchmarkKind kind) {
    switch (kind) {
    case BenchmarkKind::SrptReduced: return "srpt_reduced";
    case BenchmarkKind::BruteForceOptimal: return "brute_force_optimal";
    case BenchmarkKind::ConstructedOffline: return "constructed_offline";
    }
    return "?";
}

BenchmarkResult srpt_reduced(const JobInstance& instance) {
    SrptSimulator sim;
    JobInstance sorted = validate(instance);
    for (const auto& j : sorted.jobs) sim.add_job(j.ordinal, j.release, j.work);
    sim.run_to_end();
    return BenchmarkResult{BenchmarkKind::SrptReduced, sim.total_completion(), std::nullopt, false};
}

Time schedule_order_total(const JobInstance& instance, const std::vector<int>& order) {
    std::map<int, const Job*> by_ordinal;
    for (const auto& j : instance.jobs) by_ordinal[j.ordinal] = &j;

    Time completion(0);
    Time total(0);
    int prev_queue = kDock;
    for (int ordinal : order) {
        const Job& job = *by_ordinal.at(ordinal);
        Time base = completion;
        if (job.queue != prev_queue) base += instance.tau; // first job pays a setup too
        Time start = max(base, job.release);
        completion = start + job.work;
        total += completion;
        prev_queue = job.queue;
    }
    return total;
}

ScheduleTrace schedule_order_trace(const JobInstance& instance, const std::vector<int>& order) {
    std::map<int, const Job*> by_ordinal;
    for (const auto& j : instance.jobs) by_ordinal[j.ordinal] = &j;

    ScheduleTrace trace;
    Time completion(0);
    int prev_queue = kDock;
    for (int ordinal : order) {
        const Job& job = *by_ordinal.at(ordinal);
        Time base = completion;
        if (job.queue != prev_queue) {
            trace.events.push_back({EventType::SetupStart, completion, job.queue, -1});
            base = completion + instance.tau;
            trace.events.push_back({EventType::SetupEnd, base, job.queue, -1});
        }
        Time start = max(base, job.release);
        if (start > base) {
            trace.events.push_back({EventType::WaitStart, base, job.queue, -1});
            trace.events.push_back({EventType::WaitEnd, start, job.queue, -1});
        }
        trace.events.push_back({EventType::ServeStart, start, job.queue, ordinal});
        completion = start + job.work;
        trace.events.push_back({EventType::ServeEnd, completion, job.queue, ordinal});
        trace.completions[ordinal] = completion;
        prev_queue = job.queue;
    }
    return trace;
}

namespace {

struct SearchJob {
    int ordinal;
    Time release;
    Time work;
    int queue;
};

struct BestOrder {
    Time total;
    std::vector<int> order;
    bool valid = false;

    /// Cost first, then lexicographic order: thread-count independent.
    void offer(const Time& t, const std::vector<int>& o) {
        if (!valid || t < total || (t == total && o < order)) {
            total = t;
            order = o;
            valid = true;
        }
    }
    void merge(const BestOrder& o) {
        if (o.valid) offer(o.total, o.order);
    }
};

struct Dfs {
    const std::vector<SearchJob>& jobs;
    const Time& tau;
    BestOrder local;
    const Time* shared_bound = nullptr; // optional cross-thread prune hint

    std::vector<int> chosen;
    std::vector<bool> used;

    explicit Dfs(const std::vector<SearchJob>& j, const Time& t) : jobs(j), tau(t) {
        used.assign(jobs.size(), false);
    }

    /// Remaining-cost lower bound: each unscheduled job completes no earlier
    /// than max(now, release) + work, and no earlier than now plus the
    /// prefix sums of the remaining works in SPT order.
    Time lower_bound(const Time& now, const Time& partial) const {
        Time by_release = partial;
        std::vector<Time> works;
        for (std::size_t i = 0; i < jobs.size(); ++i) {
            if (used[i]) continue;
            by_release += max(now, jobs[i].release) + jobs[i].work;
            works.push_back(jobs[i].work);
        }
        std::sort(works.begin(), works.end());
        Time by_spt = partial;
        Time acc = now;
        for (const Time& w : works) {
            acc += w;
            by_spt += acc;
        }
        return max(by_release, by_spt);
    }

    void run(const Time& completion, const Time& partial, int prev_queue) {
        if (chosen.size() == jobs.size()) {
            local.offer(partial, chosen);
            return;
        }
        // Prune strictly worse branches only, so every minimal-cost order
        // survives and the lexicographic tie-break stays deterministic.
        Time lb = lower_bound(completion, partial);
        if (local.valid && lb > local.total) return;
        if (shared_bound && lb > *shared_bound) return;

        for (std::size_t i = 0; i < jobs.size(); ++i) {
            if (used[i]) continue;
            // Identical jobs are interchangeable: branch only on the first.
            bool duplicate = false;
            for (std::size_t j = 0; j < i; ++j) {
                if (!used[j] && jobs[j].release == jobs[i].release &&
                    jobs[j].work == jobs[i].work && jobs[j].queue == jobs[i].queue) {
                    duplicate = true;
                    break;
                }
            }
            if (duplicate) continue;

            const SearchJob& job = jobs[i];
            Time base = completion;
            if (job.queue != prev_queue) base += tau;
            Time start = max(base, job.release);
            Time done = start + job.work;

            used[i] = true;
            chosen.push_back(job.ordinal);
            run(done, partial + done, job.queue);
            chosen.pop_back();
            used[i] = false;
        }
    }
};

std::vector<SearchJob> search_jobs(const JobInstance& instance) {
    std::vector<SearchJob> jobs;
    for (const auto& j : instance.jobs) jobs.push_back({j.ordinal, j.release, j.work, j.queue});
    std::sort(jobs.begin(), jobs.end(), [](const SearchJob& a, const SearchJob& b) {
        return a.ordinal < b.ordinal;
    });
    return jobs;
}

BenchmarkResult result_from(const JobInstance& instance, const BestOrder& best) {
    BenchmarkResult r{BenchmarkKind::BruteForceOptimal, best.valid ? best.total : Time(0),
                      std::nullopt, true};
    if (best.valid) r.schedule = schedule_order_trace(instance, best.order);
    else r.schedule = ScheduleTrace{};
    return r;
}

} // namespace

BenchmarkResult brute_force_optimal(const JobInstance& instance, int max_n, bool parallel) {
    if (static_cast<int>(instance.jobs.size()) > max_n)
        throw TooLargeError("instance has " + std::to_string(instance.jobs.size()) +
                            " jobs, brute force is capped at " + std::to_string(max_n));
    std::vector<SearchJob> jobs = search_jobs(instance);
    if (jobs.empty()) return result_from(instance, BestOrder{Time(0), {}, true});

    const std::size_t n = jobs.size();

#ifdef _OPENMP
    if (parallel && n >= 4) {
        // Prefix classes (first two choices) fan out across threads; a
        // shared incumbent tightens pruning everywhere. Only strictly worse
        // branches are cut, so the reduction below is order-independent.
        std::vector<std::pair<std::size_t, std::size_t>> prefixes;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                if (a != b) prefixes.push_back({a, b});

        std::vector<BestOrder> results(prefixes.size());
        Time shared_best;
        bool shared_valid = false;
        std::mutex shared_mu;

#pragma omp parallel for schedule(dynamic)
        for (std::size_t p = 0; p < prefixes.size(); ++p) {
            auto [a, b] = prefixes[p];
            Dfs dfs(jobs, instance.tau);
            Time bound_copy;
            bool have_bound = false;
            {
                std::lock_guard<std::mutex> lock(shared_mu);
                if (shared_valid) {
                    bound_copy = shared_best;
                    have_bound = true;
                }
            }
            if (have_bound) dfs.shared_bound = &bound_copy;

            Time c0 = max(instance.tau, jobs[a].release) + jobs[a].work;
            Time base1 = c0;
            if (jobs[b].queue != jobs[a].queue) base1 += instance.tau;
            Time c1 = max(base1, jobs[b].release) + jobs[b].work;

            dfs.used[a] = dfs.used[b] = true;
            dfs.chosen = {jobs[a].ordinal, jobs[b].ordinal};
            dfs.run(c1, c0 + c1, jobs[b].queue);
            results[p] = dfs.local;

            if (dfs.local.valid) {
                std::lock_guard<std::mutex> lock(shared_mu);
                if (!shared_valid || dfs.local.total < shared_best) {
                    shared_best = dfs.local.total;
                    shared_valid = true;
                }
            }
        }

        BestOrder best;
        for (const auto& r : results) best.merge(r);
        return result_from(instance, best);
    }
#else
    (void)parallel;
#endif

    Dfs dfs(jobs, instance.tau);
    dfs.run(Time(0), Time(0), kDock);
    return result_from(instance, dfs.local);
}

BenchmarkResult brute_force_optimal_serial_reference(const JobInstance& instance, int max_n) {
    if (static_cast<int>(instance.jobs.size()) > max_n)
        throw TooLargeError("instance has " + std::to_string(instance.jobs.size()) +
                            " jobs, brute force is capped at " + std::to_string(max_n));
    std::vector<int> order;
    for (const auto& j : instance.jobs) order.push_back(j.ordinal);
    std::sort(order.begin(), order.end());

    BestOrder best;
    if (order.empty()) best.offer(Time(0), {});
    do {
        if (!order.empty()) best.offer(schedule_order_total(instance, order), order);
    } while (std::next_permutation(order.begin(), order.end()));
    return result_from(instance, best);
}

Time min_exhaustive_order_total(const JobInstance& instance, int max_n) {
    if (static_cast<int>(instance.jobs.size()) > max_n)
        throw TooLargeError("exhaustive-order search capped at " + std::to_string(max_n));
    std::map<int, const Job*> by_ordinal;
    for (const auto& j : instance.jobs) by_ordinal[j.ordinal] = &j;

    std::vector<int> order;
    for (const auto& j : instance.jobs) order.push_back(j.ordinal);
    std::sort(order.begin(), order.end());

    std::optional<Time> best;
    do {
        // Replay the earliest-start schedule and reject orders that leave a
        // queue while it still holds a job released by the switch instant.
        Time completion(0);
        Time total(0);
        int prev_queue = kDock;
        bool exhaustive = true;
        for (std::size_t i = 0; i < order.size() && exhaustive; ++i) {
            const Job& job = *by_ordinal.at(order[i]);
            if (prev_queue != kDock && job.queue != prev_queue) {
                for (std::size_t j = i; j < order.size(); ++j) {
                    const Job& later = *by_ordinal.at(order[j]);
                    if (later.queue == prev_queue && later.release <= completion) {
                        exhaustive = false;
                        break;
                    }
                }
            }
            if (!exhaustive) break;
            Time base = completion;
            if (job.queue != prev_queue) base += instance.tau;
            Time start = max(base, job.release);
            completion = start + job.work;
            total += completion;
            prev_queue = job.queue;
        }
        if (exhaustive && (!best || total < *best)) best = total;
    } while (std::next_permutation(order.begin(), order.end()));

    return best ? *best : Time(0);
}

std::optional<Rational> claimed_bound(const PolicySpec& spec, const JobInstance& instance,
                                      const InstanceParams& params, BenchmarkKind kind) {
    using Family = PolicySpec::Family;
    const bool gamma_ok = !params.gamma.is_unbounded;
    const bool theta_ok = !params.theta.is_unbounded;
    const Rational k1(instance.k + 1);

    auto maybe_min = [](std::optional<Rational> a, std::optional<Rational> b) {
        if (a && b) return std::optional<Rational>(min(*a, *b));
        return a ? a : b;
    };

    std::optional<Rational> work_conserving;
    if (gamma_ok && theta_ok) work_conserving = params.gamma.value + params.theta.value;

    switch (spec.family) {
    case Family::CyclicExhaustive:
    case Family::CyclicGated: {
        if (kind != BenchmarkKind::BruteForceOptimal) return std::nullopt;
        std::optional<Rational> kappa;
        if (gamma_ok) kappa = max(Rational(3, 2) * params.gamma.value, k1);
        return maybe_min(kappa, work_conserving);
    }
    case Family::LLimited:
    case Family::Slq:
    case Family::StaticTable:
        if (kind != BenchmarkKind::BruteForceOptimal) return std::nullopt;
        return work_conserving;
    case Family::OneMachine:
    case Family::Gipp: {
        if (kind == BenchmarkKind::ConstructedOffline) return std::nullopt;
        if (!theta_ok) return std::nullopt;
        if (spec.clearing && instance.is_clearing() && kind == BenchmarkKind::SrptReduced)
            return Rational(1) + params.theta.value;
        if (spec.clearing) return std::nullopt;
        return Rational(2) + params.theta.value;
    }
    case Family::Mixed: {
        if (kind != BenchmarkKind::BruteForceOptimal) return std::nullopt;
        if (!theta_ok) return std::nullopt;
        if (spec.eta > params.theta.value) return std::nullopt;
        if (spec.p_min_cfg && *spec.p_min_cfg > params.p_min) return std::nullopt;
        Rational kappa_eta = max(Rational(3, 2) * spec.eta, k1);
        return max(kappa_eta, Rational(2) + params.theta.value);
    }
    case Family::Follower: {
        if (!spec.transform || !spec.base) return std::nullopt;
        bool base_cyclic = spec.base->family == Family::CyclicExhaustive ||
                           spec.base->family == Family::CyclicGated;
        bool base_srpt = spec.base->family == Family::SrptOrder;
        switch (*spec.transform) {
        case Transform::WorkloadReduced:
        case Transform::WorkloadAugmented:
            if (kind == BenchmarkKind::BruteForceOptimal && base_cyclic && gamma_ok)
                return params.gamma.value * k1;
            return std::nullopt;
        case Transform::SetupReduced:
            if (kind != BenchmarkKind::ConstructedOffline && base_srpt && theta_ok)
                return Rational(2) + params.theta.value;
            return std::nullopt;
        case Transform::SetupAugmented:
            if (kind != BenchmarkKind::ConstructedOffline && base_srpt && theta_ok)
                return Rational(2) * (Rational(1) + params.theta.value);
            return std::nullopt;
        }
        return std::nullopt;
    }
    default:
        return std::nullopt;
    }
}

RatioReport competitive_ratio(const PolicySpec& spec, const JobInstance& instance,
                              BenchmarkKind kind, int max_n,
                              const std::optional<BenchmarkResult>& constructed,
                              const std::string& instance_id) {
    RatioReport report;
    report.policy = spec;
    report.instance_id = instance_id;

    auto policy = make_policy(spec);
    ScheduleTrace trace = simulate(*policy, instance);
    report.policy_total = total_completion(trace, instance);

    switch (kind) {
    case BenchmarkKind::SrptReduced: report.benchmark = srpt_reduced(instance); break;
    case BenchmarkKind::BruteForceOptimal:
        report.benchmark = brute_force_optimal(instance, max_n);
        break;
    case BenchmarkKind::ConstructedOffline:
        if (!constructed) throw std::invalid_argument("constructed benchmark not supplied");
        report.benchmark = *constructed;
        break;
    }

    if (report.benchmark.total.is_zero()) {
        report.zero_benchmark = true;
    } else {
        report.ratio = report.policy_total / report.benchmark.total;
    }

    report.claimed_bound = claimed_bound(spec, instance, derive_params(instance), kind);
    if (report.claimed_bound && !report.zero_benchmark)
        report.bound_satisfied = report.ratio <= *report.claimed_bound;
    else if (report.claimed_bound && report.zero_benchmark)
        report.bound_satisfied = report.policy_total.is_zero();
    return report;
}

} // namespace pollbench
