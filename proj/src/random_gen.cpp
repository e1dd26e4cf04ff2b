#include <pollbench/random_gen.hpp>

namespace pollbench {

JobInstance random_instance(const RandomInstanceConfig& config) {
    SplitMix64 rng(config.seed);
    JobInstance instance;
    instance.k = config.k;
    instance.tau = config.tau;
    for (int i = 0; i < config.n; ++i) {
        Job job;
        job.ordinal = i;
        job.release = Time(static_cast<long long>(rng.below(
            static_cast<std::uint64_t>(config.release_max + 1))));
        job.work = Time(config.work_min +
                        static_cast<long long>(rng.below(static_cast<std::uint64_t>(
                            config.work_max - config.work_min + 1))));
        job.queue = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(config.k)));
        instance.jobs.push_back(job);
    }
    return validate(instance);
}

} // namespace pollbench
