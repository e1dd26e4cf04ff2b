#include <pollbench/adversary.hpp>

#include <algorithm>
#include <stdexcept>

namespace pollbench {

namespace {

Rational g(long long n) { return pure_completion(n); }

Rational parse_param(const std::map<std::string, std::string>& params, const std::string& key,
                     const std::optional<Rational>& fallback = std::nullopt) {
    auto it = params.find(key);
    if (it == params.end()) {
        if (fallback) return *fallback;
        throw std::out_of_range("missing parameter: " + key);
    }
    return Rational::from_string(it->second);
}

long long parse_count(const std::map<std::string, std::string>& params, const std::string& key,
                      std::optional<long long> fallback = std::nullopt) {
    auto it = params.find(key);
    if (it == params.end()) {
        if (fallback) return *fallback;
        throw std::out_of_range("missing parameter: " + key);
    }
    return std::stoll(it->second);
}

JobInstance finish_instance(int k, Rational tau, std::vector<Job> jobs) {
    JobInstance inst;
    inst.k = k;
    inst.tau = std::move(tau);
    inst.jobs = std::move(jobs);
    return validate(inst);
}

} // namespace

AdversarialFamily missed_batch(int k, const Rational& gamma, long long n, const Rational& eps) {
    if (k < 2) throw ParamsViolateRegimeError("missed_batch requires k >= 2");
    if (n < 1) throw ParamsViolateRegimeError("missed_batch requires n >= 1");
    if (!(eps > Rational(0))) throw ParamsViolateRegimeError("missed_batch requires eps > 0");
    if (gamma < Rational(1)) throw ParamsViolateRegimeError("missed_batch requires gamma >= 1");
    if (Rational(3, 2) * gamma > Rational(k + 1))
        throw ParamsViolateRegimeError("missed_batch requires 3*gamma/2 <= k+1");

    Rational tau(static_cast<Rational::Int>(n) * n, 1);
    Rational batch_release = gamma + tau + eps;

    std::vector<Job> jobs;
    jobs.push_back({0, Rational(0), gamma, 1});
    for (int q = 2; q <= k; ++q) jobs.push_back({q - 1, Rational(0), Rational(1), q});
    for (long long i = 0; i < n; ++i)
        jobs.push_back({k + static_cast<int>(i), batch_release, Rational(1), 1});

    AdversarialFamily fam;
    fam.name = "missed_batch";
    fam.params = {{"k", std::to_string(k)},
                  {"gamma", gamma.to_string()},
                  {"n", std::to_string(n)},
                  {"eps", eps.to_string()}};
    fam.instance = finish_instance(k, tau, std::move(jobs));
    fam.target_policy = cyclic_exhaustive_spec(true, IntraOrder::Fcfs);

    long long total_jobs = k + n;
    fam.online_bound =
        g(total_jobs) + Rational(n) * Rational(k + 1) * tau + Rational(k * (k + 1), 2) * tau;

    // Offline: clear queue 1, hold there for the batch, then tour 2..k.
    std::vector<int> order;
    order.push_back(0);
    for (long long i = 0; i < n; ++i) order.push_back(k + static_cast<int>(i));
    for (int q = 2; q <= k; ++q) order.push_back(q - 1);
    fam.offline_schedule = schedule_order_trace(fam.instance, order);
    fam.offline_bound = schedule_order_total(fam.instance, order);
    fam.limit_behavior = "ratio of bounds exceeds k+1-eps as n grows (tau = n^2)";
    return fam;
}

AdversarialFamily stranded_zeros(int k, long long n, const Rational& eps, const Rational& tau) {
    if (k < 2) throw ParamsViolateRegimeError("stranded_zeros requires k >= 2");
    if (n < 0) throw ParamsViolateRegimeError("stranded_zeros requires n >= 0");
    if (!(eps > Rational(0))) throw ParamsViolateRegimeError("stranded_zeros requires eps > 0");

    Rational p(static_cast<Rational::Int>(n) * n, 1);
    std::vector<Job> jobs;
    for (int q = 2; q <= k; ++q) jobs.push_back({q - 2, Rational(0), p, q});
    for (long long i = 0; i < n; ++i)
        jobs.push_back({k - 1 + static_cast<int>(i), tau + eps, Rational(0), 1});

    AdversarialFamily fam;
    fam.name = "stranded_zeros";
    fam.params = {{"k", std::to_string(k)},
                  {"n", std::to_string(n)},
                  {"eps", eps.to_string()},
                  {"tau", tau.to_string()}};
    fam.instance = finish_instance(k, tau, std::move(jobs));
    fam.target_policy = cyclic_exhaustive_spec(true, IntraOrder::Fcfs);

    Rational kk(static_cast<Rational::Int>(k) * (k - 1), 2);
    fam.online_bound = kk * p + Rational(n) * Rational(k - 1) * p +
                       tau * (Rational(k) * Rational(n) + kk);

    // Offline: set up queue 1 first, absorb the zero-work batch at tau+eps,
    // then tour the giants.
    std::vector<int> order;
    for (long long i = 0; i < n; ++i) order.push_back(k - 1 + static_cast<int>(i));
    for (int q = 2; q <= k; ++q) order.push_back(q - 2);
    fam.offline_schedule = schedule_order_trace(fam.instance, order);
    fam.offline_bound = schedule_order_total(fam.instance, order);
    fam.limit_behavior = "ratio grows without bound as n grows (p = n^2)";
    return fam;
}

AdversarialFamily capped_visits(int k, long long n, long long l, const Rational& tau) {
    if (k < 2 || n < 1 || l < 1)
        throw ParamsViolateRegimeError("capped_visits requires k >= 2, n >= 1, l >= 1");

    std::vector<Job> jobs;
    int ordinal = 0;
    for (int q = 1; q <= k; ++q)
        for (long long i = 0; i < n * l; ++i) jobs.push_back({ordinal++, Rational(0), Rational(1), q});

    AdversarialFamily fam;
    fam.name = "capped_visits";
    fam.params = {{"k", std::to_string(k)},
                  {"n", std::to_string(n)},
                  {"l", std::to_string(l)},
                  {"tau", tau.to_string()}};
    fam.instance = finish_instance(k, tau, std::move(jobs));
    fam.target_policy = l_limited_spec(l, true);

    long long knl = k * n * l;
    long long kn = k * n;
    fam.online_bound = g(knl) + tau * Rational(l) * g(kn);
    // The exhaustive tour (one visit per queue) is optimal here.
    std::vector<int> order;
    for (int i = 0; i < static_cast<int>(knl); ++i) order.push_back(i);
    fam.offline_schedule = schedule_order_trace(fam.instance, order);
    fam.offline_bound = schedule_order_total(fam.instance, order);
    fam.limit_behavior = "ratio grows without bound as tau grows (tau = n^2 in the limit)";
    return fam;
}

AdversarialFamily slq_divergence(long long n, const Rational& p, const Rational& tau) {
    if (n < 1) throw ParamsViolateRegimeError("slq_divergence requires n >= 1");

    std::vector<Job> jobs;
    jobs.push_back({0, Rational(0), p, 1});
    for (long long i = 0; i < n; ++i)
        jobs.push_back({1 + static_cast<int>(i), tau, Rational(0), 2});

    AdversarialFamily fam;
    fam.name = "slq_divergence";
    fam.params = {{"n", std::to_string(n)}, {"p", p.to_string()}, {"tau", tau.to_string()}};
    fam.instance = finish_instance(2, tau, std::move(jobs));
    fam.target_policy = slq_spec();

    fam.online_bound = tau + Rational(2) * Rational(n) * tau + p + Rational(n) * p;

    std::vector<int> order;
    for (long long i = 0; i < n; ++i) order.push_back(1 + static_cast<int>(i));
    order.push_back(0);
    fam.offline_schedule = schedule_order_trace(fam.instance, order);
    fam.offline_bound = schedule_order_total(fam.instance, order);
    fam.limit_behavior = "ratio grows without bound along p = n";
    return fam;
}

AdversarialFamily static_stream(const std::vector<int>& table, long long n_k) {
    if (table.empty()) throw ParamsViolateRegimeError("static_stream requires a visit table");
    if (n_k < 1) throw ParamsViolateRegimeError("static_stream requires n_k >= 1");
    int k = 0;
    for (int q : table) k = std::max(k, q);
    if (table.back() != k)
        throw ParamsViolateRegimeError("the table must end at its last (highest) queue");
    for (std::size_t i = 0; i + 1 < table.size(); ++i)
        if (table[i] == k)
            throw ParamsViolateRegimeError("the final queue must appear only once in the table");

    Rational tau(static_cast<Rational::Int>(n_k) * n_k, 1);

    // The exhaustive table-following server establishes entry j at
    // (j+1)*tau + j (one unit job served per earlier entry); each streamed
    // job arrives exactly at its visit's establishment instant.
    std::vector<Job> jobs;
    int ordinal = 0;
    long long m = static_cast<long long>(table.size()) - 1; // streamed jobs
    for (long long j = 0; j < m; ++j) {
        Rational when = Rational(j + 1) * tau + Rational(j);
        jobs.push_back({ordinal++, when, Rational(1), table[static_cast<std::size_t>(j)]});
    }
    for (long long i = 0; i < n_k; ++i) jobs.push_back({ordinal++, Rational(0), Rational(1), k});

    AdversarialFamily fam;
    fam.name = "static_stream";
    {
        std::string t;
        for (std::size_t i = 0; i < table.size(); ++i)
            t += (i ? "," : "") + std::to_string(table[i]);
        fam.params = {{"table", t}, {"n_k", std::to_string(n_k)}};
    }
    fam.instance = finish_instance(k, tau, std::move(jobs));
    fam.target_policy = static_table_spec(table);

    // Streamed job j completes at (j+1)*tau + j + 1 under the table server.
    Rational stream_total(0);
    for (long long j = 0; j < m; ++j) stream_total += Rational(j + 1) * tau + Rational(j + 1);
    fam.online_bound = stream_total + Rational(n_k) * tau * Rational(m + 1) + g(n_k);

    // Offline: clear the parked batch first, then chase the stream.
    std::vector<int> order;
    for (long long i = 0; i < n_k; ++i) order.push_back(static_cast<int>(m + i));
    for (long long j = 0; j < m; ++j) order.push_back(static_cast<int>(j));
    fam.offline_schedule = schedule_order_trace(fam.instance, order);
    fam.offline_bound = schedule_order_total(fam.instance, order);
    fam.limit_behavior = "ratio of bounds approaches (number of pre-final visits + 1) as n_k grows";
    return fam;
}

AdversarialFamily routing_trap(RoutingTrapKind kind, int k, const Rational& p_or_n,
                               const Rational& tau) {
    if (k < 2) throw ParamsViolateRegimeError("routing_trap requires k >= 2");

    AdversarialFamily fam;
    fam.name = "routing_trap";
    fam.params = {{"kind", kind == RoutingTrapKind::QueueLength ? "queue_length" : "job_priority"},
                  {"k", std::to_string(k)},
                  {kind == RoutingTrapKind::QueueLength ? "p" : "n", p_or_n.to_string()},
                  {"tau", tau.to_string()}};

    if (kind == RoutingTrapKind::QueueLength) {
        const Rational& p = p_or_n;
        std::vector<Job> jobs;
        jobs.push_back({0, Rational(0), p, 1});
        for (int q = 2; q <= k; ++q) jobs.push_back({q - 1, Rational(0), Rational(0), q});
        fam.instance = finish_instance(k, tau, std::move(jobs));
        fam.target_policy = slq_spec(); // equal lengths: index ties walk 1..k

        fam.online_bound = Rational(k) * p + tau * Rational(k * (k + 1), 2);
        std::vector<int> order;
        for (int q = 2; q <= k; ++q) order.push_back(q - 1);
        order.push_back(0);
        fam.offline_schedule = schedule_order_trace(fam.instance, order);
        fam.offline_bound = schedule_order_total(fam.instance, order);
        fam.limit_behavior = "ratio approaches k as p grows";
        return fam;
    }

    long long n = static_cast<long long>(p_or_n.to_double());
    if (!p_or_n.is_integer() || n < 1)
        throw ParamsViolateRegimeError("job_priority trap requires integer n >= 1");
    // Singles first in ordinal order: a completion-order policy tours the
    // k-1 singles before reaching the batch.
    std::vector<Job> jobs;
    for (int q = 2; q <= k; ++q) jobs.push_back({q - 2, Rational(0), Rational(0), q});
    for (long long i = 0; i < n; ++i)
        jobs.push_back({k - 1 + static_cast<int>(i), Rational(0), Rational(0), 1});
    fam.instance = finish_instance(k, tau, std::move(jobs));
    fam.target_policy = one_machine_spec(false);

    fam.online_bound = tau * (Rational(k * (k - 1), 2) + Rational(k) * Rational(n));
    std::vector<int> order;
    for (long long i = 0; i < n; ++i) order.push_back(k - 1 + static_cast<int>(i));
    for (int q = 2; q <= k; ++q) order.push_back(q - 2);
    fam.offline_schedule = schedule_order_trace(fam.instance, order);
    fam.offline_bound = schedule_order_total(fam.instance, order);
    fam.limit_behavior = "ratio approaches k as n grows";
    return fam;
}

AdversarialFamily single_job(const Rational& theta) {
    if (theta.is_negative()) throw ParamsViolateRegimeError("single_job requires theta >= 0");

    AdversarialFamily fam;
    fam.name = "single_job";
    fam.params = {{"theta", theta.to_string()}};
    fam.instance = finish_instance(1, theta, {Job{0, Rational(0), Rational(1), 1}});
    fam.target_policy = one_machine_spec(false);
    fam.online_bound = Rational(1) + theta;
    fam.offline_schedule = schedule_order_trace(fam.instance, {0});
    fam.offline_bound = schedule_order_total(fam.instance, {0});
    fam.limit_behavior = "every policy pays at least 1+theta against a setup-free benchmark of 1";
    return fam;
}

AdversarialFamily make_family(const std::string& name,
                              const std::map<std::string, std::string>& params) {
    if (name == "missed_batch")
        return missed_batch(static_cast<int>(parse_count(params, "k")),
                            parse_param(params, "gamma", Rational(1)), parse_count(params, "n"),
                            parse_param(params, "eps", Rational(1, 2)));
    if (name == "stranded_zeros")
        return stranded_zeros(static_cast<int>(parse_count(params, "k")), parse_count(params, "n"),
                              parse_param(params, "eps", Rational(1, 2)),
                              parse_param(params, "tau", Rational(1)));
    if (name == "capped_visits")
        return capped_visits(static_cast<int>(parse_count(params, "k")), parse_count(params, "n"),
                             parse_count(params, "l", 1), parse_param(params, "tau", Rational(1)));
    if (name == "slq_divergence")
        return slq_divergence(parse_count(params, "n"), parse_param(params, "p"),
                              parse_param(params, "tau", Rational(1)));
    if (name == "static_stream") {
        std::vector<int> table;
        auto it = params.find("table");
        if (it == params.end()) {
            table = cyclic_visit_table(static_cast<int>(parse_count(params, "k")));
        } else {
            std::string s = it->second;
            std::size_t pos = 0;
            while (pos < s.size()) {
                std::size_t comma = s.find(',', pos);
                if (comma == std::string::npos) comma = s.size();
                table.push_back(std::stoi(s.substr(pos, comma - pos)));
                pos = comma + 1;
            }
        }
        return static_stream(table, parse_count(params, "n_k"));
    }
    if (name == "routing_trap") {
        auto it = params.find("kind");
        RoutingTrapKind kind = (it != params.end() && it->second == "job_priority")
                                   ? RoutingTrapKind::JobPriority
                                   : RoutingTrapKind::QueueLength;
        Rational pn = kind == RoutingTrapKind::QueueLength ? parse_param(params, "p")
                                                           : parse_param(params, "n");
        return routing_trap(kind, static_cast<int>(parse_count(params, "k")), pn,
                            parse_param(params, "tau", Rational(1)));
    }
    if (name == "single_job") return single_job(parse_param(params, "theta"));
    throw std::out_of_range("unknown adversarial family: " + name);
}

std::vector<std::string> family_names() {
    return {"missed_batch", "stranded_zeros", "capped_visits", "slq_divergence",
            "static_stream",  "routing_trap",  "single_job"};
}

} // namespace pollbench
