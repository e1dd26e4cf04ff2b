#pragma once

#include <pollbench/engine.hpp>

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace pollbench {

enum class IntraOrder { Fcfs, Spt };

enum class Transform {
    WorkloadReduced,   // every work becomes p_min, setups unchanged
    WorkloadAugmented, // every work becomes p_max, setups unchanged
    SetupReduced,      // setups removed, works unchanged
    SetupAugmented,    // setups removed, every work grows by tau
};

/// Serializable description of a policy; `make_policy` turns it into a
/// fresh stateful instance bound to one simulation.
struct PolicySpec {
    enum class Family {
        CyclicExhaustive,
        CyclicGated,
        LLimited,
        Slq,
        OneMachine,
        Gipp,
        Mixed,
        Follower,
        SrptOrder,   // virtual base for followers only; not runnable
        StaticTable, // fixed visit table, exhaustive service
    };

    Family family = Family::CyclicExhaustive;
    bool skip_empty = true;
    IntraOrder order = IntraOrder::Fcfs;
    long l = 1;                         // LLimited
    Rational eta;                       // Mixed
    std::optional<Rational> p_min_cfg;  // Mixed: threshold base, defaults to the instance p_min
    bool clearing = false;              // OneMachine/Gipp: skip the virtual simulation,
                                        // order by workload/index directly (zero-release systems)
    std::optional<Transform> transform; // Follower
    std::shared_ptr<PolicySpec> base;   // Follower (required), Mixed (optional)
    std::vector<int> table;             // StaticTable

    std::string family_name() const;
};

class PolicySpecError : public std::runtime_error {
public:
    explicit PolicySpecError(const std::string& what) : std::runtime_error(what) {}
};

class UnboundedTransformError : public std::runtime_error {
public:
    explicit UnboundedTransformError(const std::string& what) : std::runtime_error(what) {}
};

std::unique_ptr<Policy> make_policy(const PolicySpec& spec);

/// Convenience constructors for the common specs.
PolicySpec cyclic_exhaustive_spec(bool skip_empty = true, IntraOrder order = IntraOrder::Fcfs);
PolicySpec cyclic_gated_spec(bool skip_empty = false, IntraOrder order = IntraOrder::Fcfs);
PolicySpec l_limited_spec(long l, bool skip_empty = true);
PolicySpec slq_spec();
PolicySpec one_machine_spec(bool clearing = false);
PolicySpec gipp_spec(bool clearing = false);
PolicySpec mixed_spec(Rational eta, std::optional<Rational> p_min = std::nullopt);
PolicySpec follower_spec(Transform transform, PolicySpec base);
PolicySpec srpt_order_spec();
PolicySpec static_table_spec(std::vector<int> table);

/// The visit order a cyclic policy follows up to its first visit of queue k.
std::vector<int> cyclic_visit_table(int k);

/// Minimizes nu(eta) = kappa(eta) * mu(eta)^n + (theta+2) * (1 - mu(eta)^n)
/// with kappa(eta) = max(3*eta/2, k+1) over the feasible threshold interval
/// [2(k+1)/3, min(2(theta+2)/3, theta)] by scalar grid search. Returns the
/// interval's lower end when the interval is empty or degenerate.
Rational optimal_eta(int k, const Rational& theta,
                     const std::function<double(const Rational&)>& mu, long long n);

} // namespace pollbench
