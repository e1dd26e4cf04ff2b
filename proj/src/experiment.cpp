#include <pollbench/experiment.hpp>

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pollbench {

namespace {

using ojson = nlohmann::ordered_json;

std::string format_decimal(const Rational& value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", value.to_double());
    return buf;
}

InstanceSource source_from_node(const ojson& node) {
    InstanceSource source;
    std::string kind = node.at("kind").get<std::string>();
    if (kind == "file") {
        source.kind = InstanceSource::Kind::File;
        source.path = node.at("path").get<std::string>();
    } else if (kind == "family") {
        source.kind = InstanceSource::Kind::Family;
        source.family = node.at("family").get<std::string>();
    } else if (kind == "random") {
        source.kind = InstanceSource::Kind::Random;
    } else {
        throw std::invalid_argument("unknown instance source kind: " + kind);
    }
    if (node.contains("params"))
        for (const auto& [key, value] : node.at("params").items())
            source.params[key] = value.get<std::string>();
    return source;
}

ojson source_to_node(const InstanceSource& source) {
    ojson node;
    switch (source.kind) {
    case InstanceSource::Kind::File:
        node["kind"] = "file";
        node["path"] = source.path;
        break;
    case InstanceSource::Kind::Family:
        node["kind"] = "family";
        node["family"] = source.family;
        break;
    case InstanceSource::Kind::Random:
        node["kind"] = "random";
        break;
    }
    ojson params = ojson::object();
    for (const auto& [key, value] : source.params) params[key] = value;
    node["params"] = params;
    return node;
}

RandomInstanceConfig random_config_from(const std::map<std::string, std::string>& params) {
    RandomInstanceConfig config;
    auto get = [&](const char* key) -> std::optional<std::string> {
        auto it = params.find(key);
        if (it == params.end()) return std::nullopt;
        return it->second;
    };
    if (auto v = get("seed")) config.seed = std::stoull(*v);
    if (auto v = get("n")) config.n = std::stoi(*v);
    if (auto v = get("k")) config.k = std::stoi(*v);
    if (auto v = get("tau")) config.tau = Rational::from_string(*v);
    if (auto v = get("work_min")) config.work_min = std::stoll(*v);
    if (auto v = get("work_max")) config.work_max = std::stoll(*v);
    if (auto v = get("release_max")) config.release_max = std::stoll(*v);
    return config;
}

std::string source_instance_id(const InstanceSource& source) {
    switch (source.kind) {
    case InstanceSource::Kind::File: return source.path;
    case InstanceSource::Kind::Random: {
        auto it = source.params.find("seed");
        return "random-seed" + (it == source.params.end() ? "0" : it->second);
    }
    case InstanceSource::Kind::Family: {
        std::string id = source.family;
        for (const auto& [key, value] : source.params) id += "-" + key + value;
        return id;
    }
    }
    return "instance";
}

} // namespace

std::string experiment_config_to_json(const ExperimentConfig& config) {
    ojson node;
    node["source"] = source_to_node(config.source);
    ojson policies = ojson::array();
    for (const auto& spec : config.policies)
        policies.push_back(ojson::parse(policy_spec_to_json(spec)));
    node["policies"] = policies;
    node["benchmark"] = benchmark_name(config.benchmark);
    node["max_n"] = config.max_n;
    node["out"] = config.out;
    if (!config.sweep_axis.empty()) {
        node["sweep"] = ojson{{"axis", config.sweep_axis}, {"values", config.sweep_values}};
    }
    node["workers"] = config.workers;
    return node.dump(2) + "\n";
}

ExperimentConfig experiment_config_from_json(const std::string& text) {
    ojson node = ojson::parse(text);
    ExperimentConfig config;
    config.source = source_from_node(node.at("source"));
    for (const auto& p : node.at("policies"))
        config.policies.push_back(policy_spec_from_json(p.dump()));
    std::string bench = node.value("benchmark", "brute_force_optimal");
    if (bench == "srpt_reduced") config.benchmark = BenchmarkKind::SrptReduced;
    else if (bench == "brute_force_optimal") config.benchmark = BenchmarkKind::BruteForceOptimal;
    else if (bench == "constructed_offline") config.benchmark = BenchmarkKind::ConstructedOffline;
    else throw std::invalid_argument("unknown benchmark: " + bench);
    config.max_n = node.value("max_n", 10);
    config.out = node.value("out", std::string());
    if (node.contains("sweep")) {
        config.sweep_axis = node.at("sweep").at("axis").get<std::string>();
        for (const auto& v : node.at("sweep").at("values"))
            config.sweep_values.push_back(v.is_string() ? v.get<std::string>() : v.dump());
    }
    config.workers = node.value("workers", 0);
    return config;
}

GenOutput run_gen(const InstanceSource& source) {
    GenOutput out;
    out.instance_id = source_instance_id(source);
    switch (source.kind) {
    case InstanceSource::Kind::File: {
        std::ifstream in(source.path);
        if (!in) throw std::runtime_error("cannot read instance file: " + source.path);
        std::stringstream buffer;
        buffer << in.rdbuf();
        out.instance_json = instance_to_json(instance_from_json(buffer.str()));
        return out;
    }
    case InstanceSource::Kind::Random: {
        JobInstance instance = random_instance(random_config_from(source.params));
        out.instance_json = instance_to_json(instance);
        return out;
    }
    case InstanceSource::Kind::Family: {
        AdversarialFamily family = make_family(source.family, source.params);
        out.instance_json = instance_to_json(family.instance);
        out.bounds_json = bounds_to_json(family);
        return out;
    }
    }
    throw std::logic_error("unreachable");
}

std::vector<std::string> ratio_csv_header(bool with_axis) {
    std::vector<std::string> header;
    if (with_axis) {
        header.push_back("axis");
        header.push_back("axis_value");
    }
    for (const char* h : {"instance_id", "policy_json", "policy_total", "benchmark_kind",
                          "benchmark_total", "ratio_num", "ratio_den", "ratio_decimal",
                          "claimed_bound", "bound_ok", "error"})
        header.push_back(h);
    return header;
}

std::vector<std::string> ratio_csv_row(const RatioReport& report, const std::string& error) {
    std::vector<std::string> row;
    row.push_back(report.instance_id);
    row.push_back(policy_spec_to_json(report.policy));
    if (!error.empty()) {
        row.insert(row.end(), {"", "", "", "", "", "", "", ""});
        row.push_back(error);
        return row;
    }
    row.push_back(report.policy_total.to_string());
    row.push_back(benchmark_name(report.benchmark.kind));
    row.push_back(report.benchmark.total.to_string());
    if (report.zero_benchmark) {
        row.push_back("");
        row.push_back("");
        row.push_back("");
    } else {
        row.push_back(int128_to_string(report.ratio.num()));
        row.push_back(int128_to_string(report.ratio.den()));
        row.push_back(format_decimal(report.ratio));
    }
    row.push_back(report.claimed_bound ? report.claimed_bound->to_string() : "");
    row.push_back(report.claimed_bound ? (report.bound_satisfied ? "true" : "false") : "");
    row.push_back(report.zero_benchmark ? "ZeroBenchmark" : "");
    return row;
}

RunOutput run_experiment(const JobInstance& instance, const std::string& instance_id,
                         const std::vector<PolicySpec>& policies, BenchmarkKind benchmark,
                         int max_n, const std::optional<BenchmarkResult>& constructed) {
    CsvWriter csv(ratio_csv_header(false));
    bool all_ok = true;
    for (const auto& spec : policies) {
        try {
            RatioReport report =
                competitive_ratio(spec, instance, benchmark, max_n, constructed, instance_id);
            if (!report.bound_satisfied) all_ok = false;
            csv.row(ratio_csv_row(report, ""));
        } catch (const std::exception& e) {
            RatioReport failed;
            failed.policy = spec;
            failed.instance_id = instance_id;
            csv.row(ratio_csv_row(failed, e.what()));
            all_ok = false;
        }
    }
    return RunOutput{csv.str(), all_ok};
}

RunOutput run_sweep(const ExperimentConfig& config) {
    if (config.sweep_axis.empty()) throw std::invalid_argument("sweep requires an axis");

    struct Point {
        std::string value;
        std::string rows; // headerless CSV fragment
        bool ok = true;
    };
    std::vector<Point> points(config.sweep_values.size());
    for (std::size_t i = 0; i < points.size(); ++i) points[i].value = config.sweep_values[i];

#ifdef _OPENMP
    int saved = omp_get_max_threads();
    if (config.workers > 0) omp_set_num_threads(config.workers);
#endif

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::size_t i = 0; i < points.size(); ++i) {
        Point& point = points[i];
        try {
            InstanceSource source = config.source;
            source.params[config.sweep_axis] = point.value;
            // A parameter set to "$axis" tracks the axis value (e.g. p = n).
            for (auto& [key, value] : source.params)
                if (value == "$axis") value = point.value;

            JobInstance instance;
            std::optional<BenchmarkResult> constructed;
            std::string id = source_instance_id(source);
            if (source.kind == InstanceSource::Kind::Family) {
                AdversarialFamily family = make_family(source.family, source.params);
                instance = family.instance;
                constructed = family.constructed_benchmark();
            } else if (source.kind == InstanceSource::Kind::Random) {
                instance = random_instance(random_config_from(source.params));
            } else {
                GenOutput gen = run_gen(source);
                instance = instance_from_json(gen.instance_json);
            }

            std::string rows;
            for (const auto& spec : config.policies) {
                std::vector<std::string> row;
                row.push_back(config.sweep_axis);
                row.push_back(point.value);
                std::vector<std::string> rest;
                try {
                    RatioReport report = competitive_ratio(spec, instance, config.benchmark,
                                                           config.max_n, constructed, id);
                    if (!report.bound_satisfied) point.ok = false;
                    rest = ratio_csv_row(report, "");
                } catch (const std::exception& e) {
                    RatioReport failed;
                    failed.policy = spec;
                    failed.instance_id = id;
                    rest = ratio_csv_row(failed, e.what());
                    point.ok = false;
                }
                row.insert(row.end(), rest.begin(), rest.end());
                for (std::size_t c = 0; c < row.size(); ++c) {
                    if (c) rows += ",";
                    rows += csv_escape(row[c]);
                }
                rows += "\n";
            }
            point.rows = rows;
        } catch (const std::exception& e) {
            std::vector<std::string> row{config.sweep_axis, point.value};
            while (row.size() + 1 < ratio_csv_header(true).size()) row.push_back("");
            row.push_back(e.what());
            std::string line;
            for (std::size_t c = 0; c < row.size(); ++c) {
                if (c) line += ",";
                line += csv_escape(row[c]);
            }
            point.rows = line + "\n";
            point.ok = false;
        }
    }

#ifdef _OPENMP
    if (config.workers > 0) omp_set_num_threads(saved);
#endif

    CsvWriter csv(ratio_csv_header(true));
    std::string out = csv.str();
    bool all_ok = true;
    for (const auto& point : points) {
        out += point.rows;
        all_ok = all_ok && point.ok;
    }
    return RunOutput{out, all_ok};
}

} // namespace pollbench
