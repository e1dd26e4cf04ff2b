#pragma once

#include <pollbench/adversary.hpp>
#include <pollbench/benchmarks.hpp>
#include <pollbench/io.hpp>
#include <pollbench/random_gen.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pollbench {

/// Where an experiment's instance comes from: a file, an adversarial
/// family, or the seeded random generator.
struct InstanceSource {
    enum class Kind { File, Family, Random };
    Kind kind = Kind::Family;
    std::string path;                          // File
    std::string family;                        // Family
    std::map<std::string, std::string> params; // Family / Random
};

struct ExperimentConfig {
    InstanceSource source;
    std::vector<PolicySpec> policies;
    BenchmarkKind benchmark = BenchmarkKind::BruteForceOptimal;
    int max_n = 10;
    std::string out;            // output path; empty = stdout
    std::string sweep_axis;     // parameter name; empty = plain run
    std::vector<std::string> sweep_values;
    int workers = 0;            // 0 = library default
};

std::string experiment_config_to_json(const ExperimentConfig& config);
ExperimentConfig experiment_config_from_json(const std::string& text);

struct GenOutput {
    std::string instance_json;
    std::optional<std::string> bounds_json; // absent for random instances
    std::string instance_id;
};

/// `gen`: materialize an instance (plus the bounds sidecar for adversarial
/// families).
GenOutput run_gen(const InstanceSource& source);

struct RunOutput {
    std::string csv;
    bool all_bounds_ok = true;
};

/// `run`: one CSV row per policy on one instance. Policy failures land in
/// the error column instead of aborting the batch.
RunOutput run_experiment(const JobInstance& instance, const std::string& instance_id,
                         const std::vector<PolicySpec>& policies, BenchmarkKind benchmark,
                         int max_n,
                         const std::optional<BenchmarkResult>& constructed = std::nullopt);

/// `sweep`: the run above across one axis; points are dispatched to a
/// worker pool but rows are emitted in axis order.
RunOutput run_sweep(const ExperimentConfig& config);

/// Shared CSV header for run/sweep rows.
std::vector<std::string> ratio_csv_header(bool with_axis);
std::vector<std::string> ratio_csv_row(const RatioReport& report, const std::string& error);

} // namespace pollbench
