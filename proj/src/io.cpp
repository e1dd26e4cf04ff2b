#include <pollbench/io.hpp>

#include <json.hpp>

namespace pollbench {

namespace {

using ojson = nlohmann::ordered_json;

Rational rational_from_node(const ojson& node, const char* what) {
    if (node.is_string()) return Rational::from_string(node.get<std::string>());
    if (node.is_number_integer()) return Rational(node.get<long long>());
    throw InstanceError(std::string("expected a rational (\"num/den\" or integer) for ") + what);
}

ojson rational_node(const Rational& value) { return ojson(value.to_string()); }

ojson spec_to_node(const PolicySpec& spec) {
    using Family = PolicySpec::Family;
    ojson node;
    node["family"] = spec.family_name();
    switch (spec.family) {
    case Family::CyclicExhaustive:
    case Family::CyclicGated:
        node["skip_empty"] = spec.skip_empty;
        node["order"] = spec.order == IntraOrder::Spt ? "spt" : "fcfs";
        break;
    case Family::LLimited:
        node["l"] = spec.l;
        node["skip_empty"] = spec.skip_empty;
        node["order"] = spec.order == IntraOrder::Spt ? "spt" : "fcfs";
        break;
    case Family::Slq:
    case Family::SrptOrder:
        break;
    case Family::OneMachine:
    case Family::Gipp:
        if (spec.clearing) node["clearing"] = true;
        break;
    case Family::Mixed:
        node["eta"] = rational_node(spec.eta);
        if (spec.p_min_cfg) node["p_min"] = rational_node(*spec.p_min_cfg);
        if (spec.base) node["base"] = spec_to_node(*spec.base);
        break;
    case Family::Follower:
        switch (spec.transform.value()) {
        case Transform::WorkloadReduced: node["transform"] = "workload_reduced"; break;
        case Transform::WorkloadAugmented: node["transform"] = "workload_augmented"; break;
        case Transform::SetupReduced: node["transform"] = "setup_reduced"; break;
        case Transform::SetupAugmented: node["transform"] = "setup_augmented"; break;
        }
        node["base"] = spec_to_node(*spec.base);
        break;
    case Family::StaticTable:
        node["table"] = spec.table;
        break;
    }
    return node;
}

PolicySpec spec_from_node(const ojson& node) {
    if (!node.is_object() || !node.contains("family"))
        throw PolicySpecError("policy spec must be an object with a \"family\" field");
    std::string family = node.at("family").get<std::string>();

    PolicySpec spec;
    auto order_of = [&]() {
        if (!node.contains("order")) return IntraOrder::Fcfs;
        std::string o = node.at("order").get<std::string>();
        if (o == "fcfs") return IntraOrder::Fcfs;
        if (o == "spt") return IntraOrder::Spt;
        throw PolicySpecError("unknown intra-queue order: " + o);
    };

    if (family == "cyclic_exhaustive" || family == "cyclic_gated") {
        spec.family = family == "cyclic_gated" ? PolicySpec::Family::CyclicGated
                                               : PolicySpec::Family::CyclicExhaustive;
        spec.skip_empty = node.value("skip_empty", family == "cyclic_exhaustive");
        spec.order = order_of();
    } else if (family == "l_limited") {
        spec.family = PolicySpec::Family::LLimited;
        spec.l = node.at("l").get<long>();
        spec.skip_empty = node.value("skip_empty", true);
        spec.order = order_of();
    } else if (family == "slq") {
        spec.family = PolicySpec::Family::Slq;
    } else if (family == "one_machine") {
        spec.family = PolicySpec::Family::OneMachine;
        spec.clearing = node.value("clearing", false);
    } else if (family == "gipp") {
        spec.family = PolicySpec::Family::Gipp;
        spec.clearing = node.value("clearing", false);
    } else if (family == "mixed") {
        spec.family = PolicySpec::Family::Mixed;
        spec.eta = rational_from_node(node.at("eta"), "eta");
        if (node.contains("p_min")) spec.p_min_cfg = rational_from_node(node.at("p_min"), "p_min");
        if (node.contains("base"))
            spec.base = std::make_shared<PolicySpec>(spec_from_node(node.at("base")));
    } else if (family == "follower") {
        spec.family = PolicySpec::Family::Follower;
        std::string t = node.at("transform").get<std::string>();
        if (t == "workload_reduced") spec.transform = Transform::WorkloadReduced;
        else if (t == "workload_augmented") spec.transform = Transform::WorkloadAugmented;
        else if (t == "setup_reduced") spec.transform = Transform::SetupReduced;
        else if (t == "setup_augmented") spec.transform = Transform::SetupAugmented;
        else throw PolicySpecError("unknown transform: " + t);
        spec.base = std::make_shared<PolicySpec>(spec_from_node(node.at("base")));
    } else if (family == "srpt_order") {
        spec.family = PolicySpec::Family::SrptOrder;
    } else if (family == "static_table") {
        spec.family = PolicySpec::Family::StaticTable;
        spec.table = node.at("table").get<std::vector<int>>();
    } else {
        throw PolicySpecError("unknown policy family: " + family);
    }
    return spec;
}

ojson trace_to_node(const ScheduleTrace& trace) {
    ojson events = ojson::array();
    for (const auto& ev : trace.events) {
        ojson e;
        e["type"] = event_name(ev.type);
        e["t"] = rational_node(ev.t);
        if (ev.queue > 0) e["q"] = ev.queue;
        if (ev.job >= 0) e["job"] = ev.job;
        events.push_back(e);
    }
    ojson completions = ojson::object();
    for (const auto& [ordinal, t] : trace.completions)
        completions[std::to_string(ordinal)] = rational_node(t);
    ojson node;
    node["events"] = events;
    node["completions"] = completions;
    return node;
}

ScheduleTrace trace_from_node(const ojson& node) {
    ScheduleTrace trace;
    for (const auto& e : node.at("events")) {
        TraceEvent ev;
        std::string type = e.at("type").get<std::string>();
        bool found = false;
        for (EventType candidate :
             {EventType::SetupStart, EventType::SetupEnd, EventType::SetupAbort,
              EventType::ServeStart, EventType::ServeEnd, EventType::WaitStart,
              EventType::WaitEnd, EventType::IdleStart, EventType::IdleEnd}) {
            if (type == event_name(candidate)) {
                ev.type = candidate;
                found = true;
                break;
            }
        }
        if (!found) throw TraceError("unknown event type: " + type);
        ev.t = rational_from_node(e.at("t"), "t");
        ev.queue = e.value("q", 0);
        ev.job = e.value("job", -1);
        trace.events.push_back(ev);
    }
    for (const auto& [key, value] : node.at("completions").items())
        trace.completions[std::stoi(key)] = rational_from_node(value, "completion");
    return trace;
}

} // namespace

std::string instance_to_json(const JobInstance& instance) {
    ojson node;
    node["k"] = instance.k;
    node["tau"] = rational_node(instance.tau);
    ojson jobs = ojson::array();
    for (const auto& job : instance.jobs) {
        ojson j;
        j["r"] = rational_node(job.release);
        j["p"] = rational_node(job.work);
        j["q"] = job.queue;
        jobs.push_back(j);
    }
    node["jobs"] = jobs;
    return node.dump(2) + "\n";
}

JobInstance instance_from_json(const std::string& text) {
    ojson node = ojson::parse(text);
    JobInstance instance;
    instance.k = node.at("k").get<int>();
    instance.tau = rational_from_node(node.at("tau"), "tau");
    int ordinal = 0;
    for (const auto& j : node.at("jobs")) {
        Job job;
        job.ordinal = ordinal++;
        job.release = rational_from_node(j.at("r"), "r");
        job.work = rational_from_node(j.at("p"), "p");
        job.queue = j.at("q").get<int>();
        instance.jobs.push_back(job);
    }
    return validate(instance);
}

std::string trace_to_json(const ScheduleTrace& trace) { return trace_to_node(trace).dump(2) + "\n"; }

ScheduleTrace trace_from_json(const std::string& text) {
    return trace_from_node(ojson::parse(text));
}

std::string policy_spec_to_json(const PolicySpec& spec) { return spec_to_node(spec).dump(); }

PolicySpec policy_spec_from_json(const std::string& text) {
    return spec_from_node(ojson::parse(text));
}

std::string bounds_to_json(const AdversarialFamily& family) {
    ojson node;
    node["family"] = family.name;
    ojson params = ojson::object();
    for (const auto& [key, value] : family.params) params[key] = value;
    node["params"] = params;
    node["target_policy"] = ojson::parse(policy_spec_to_json(family.target_policy));
    node["online_bound"] = rational_node(family.online_bound);
    node["offline_bound"] = rational_node(family.offline_bound);
    node["limit_behavior"] = family.limit_behavior;
    node["offline_schedule"] = trace_to_node(family.offline_schedule);
    return node.dump(2) + "\n";
}

BenchmarkResult constructed_from_bounds_json(const std::string& text) {
    ojson node = ojson::parse(text);
    BenchmarkResult result;
    result.kind = BenchmarkKind::ConstructedOffline;
    result.total = rational_from_node(node.at("offline_bound"), "offline_bound");
    result.schedule = trace_from_node(node.at("offline_schedule"));
    result.exact = false;
    return result;
}

std::string csv_escape(const std::string& field) {
    bool needs_quote = field.find_first_of(",\"\n") != std::string::npos;
    if (!needs_quote) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

CsvWriter::CsvWriter(std::vector<std::string> header) : width_(header.size()) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out_ += ",";
        out_ += csv_escape(header[i]);
    }
    out_ += "\n";
}

void CsvWriter::row(const std::vector<std::string>& fields) {
    if (fields.size() != width_) throw std::invalid_argument("csv row width mismatch");
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out_ += ",";
        out_ += csv_escape(fields[i]);
    }
    out_ += "\n";
}

} // namespace pollbench
