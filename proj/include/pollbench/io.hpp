#pragma once

#include <pollbench/adversary.hpp>
#include <pollbench/benchmarks.hpp>
#include <pollbench/core.hpp>
#include <pollbench/policies.hpp>
#include <pollbench/trace.hpp>

#include <string>
#include <vector>

namespace pollbench {

/// Canonical instance document: {"k": int, "tau": "num/den", "jobs":
/// [{"r": "num/den", "p": "num/den", "q": int}, ...]}. Rationals are
/// "num/den" strings; bare integers are accepted as shorthand on input.
std::string instance_to_json(const JobInstance& instance);
JobInstance instance_from_json(const std::string& text);

std::string trace_to_json(const ScheduleTrace& trace);
ScheduleTrace trace_from_json(const std::string& text);

std::string policy_spec_to_json(const PolicySpec& spec);
PolicySpec policy_spec_from_json(const std::string& text);

/// Generator sidecar: family, params, bounds, and the explicit offline
/// schedule backing the offline bound.
std::string bounds_to_json(const AdversarialFamily& family);
BenchmarkResult constructed_from_bounds_json(const std::string& text);

/// RFC-4180 style CSV: comma separated, header row, LF line ends. Fields
/// containing commas or quotes are quoted with doubled quotes.
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header);
    void row(const std::vector<std::string>& fields);
    const std::string& str() const { return out_; }

private:
    std::string out_;
    std::size_t width_;
};

std::string csv_escape(const std::string& field);

} // namespace pollbench
