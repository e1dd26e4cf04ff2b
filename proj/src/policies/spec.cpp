#include "policies_impl.hpp"

namespace pollbench {

std::string PolicySpec::family_name() const {
    switch (family) {
    case Family::CyclicExhaustive: return "cyclic_exhaustive";
    case Family::CyclicGated: return "cyclic_gated";
    case Family::LLimited: return "l_limited";
    case Family::Slq: return "slq";
    case Family::OneMachine: return "one_machine";
    case Family::Gipp: return "gipp";
    case Family::Mixed: return "mixed";
    case Family::Follower: return "follower";
    case Family::SrptOrder: return "srpt_order";
    case Family::StaticTable: return "static_table";
    }
    return "?";
}

std::unique_ptr<Policy> make_policy(const PolicySpec& spec) {
    using Family = PolicySpec::Family;
    switch (spec.family) {
    case Family::CyclicExhaustive:
        return std::make_unique<detail::CyclicPolicy>(false, spec.skip_empty, spec.order);
    case Family::CyclicGated:
        return std::make_unique<detail::CyclicPolicy>(true, spec.skip_empty, spec.order);
    case Family::LLimited:
        return std::make_unique<detail::LLimitedPolicy>(spec.l, spec.skip_empty, spec.order);
    case Family::Slq:
        return std::make_unique<detail::SlqPolicy>();
    case Family::OneMachine:
        return std::make_unique<detail::OneMachinePolicy>(spec.clearing);
    case Family::Gipp:
        return std::make_unique<detail::GippPolicy>(spec.clearing);
    case Family::Mixed: {
        PolicySpec base = spec.base ? *spec.base
                                    : cyclic_exhaustive_spec(true, IntraOrder::Spt);
        return std::make_unique<detail::MixedPolicy>(spec.eta, spec.p_min_cfg, base);
    }
    case Family::Follower: {
        if (!spec.transform) throw PolicySpecError("follower requires a transform");
        if (!spec.base) throw PolicySpecError("follower requires a base policy");
        return std::make_unique<detail::FollowerPolicy>(*spec.transform, *spec.base);
    }
    case Family::SrptOrder:
        throw PolicySpecError("srpt_order is only valid as a follower base");
    case Family::StaticTable:
        return std::make_unique<detail::StaticTablePolicy>(spec.table);
    }
    throw PolicySpecError("unknown policy family");
}

PolicySpec cyclic_exhaustive_spec(bool skip_empty, IntraOrder order) {
    PolicySpec s;
    s.family = PolicySpec::Family::CyclicExhaustive;
    s.skip_empty = skip_empty;
    s.order = order;
    return s;
}

PolicySpec cyclic_gated_spec(bool skip_empty, IntraOrder order) {
    PolicySpec s;
    s.family = PolicySpec::Family::CyclicGated;
    s.skip_empty = skip_empty;
    s.order = order;
    return s;
}

PolicySpec l_limited_spec(long l, bool skip_empty) {
    PolicySpec s;
    s.family = PolicySpec::Family::LLimited;
    s.l = l;
    s.skip_empty = skip_empty;
    return s;
}

PolicySpec slq_spec() {
    PolicySpec s;
    s.family = PolicySpec::Family::Slq;
    return s;
}

PolicySpec one_machine_spec(bool clearing) {
    PolicySpec s;
    s.family = PolicySpec::Family::OneMachine;
    s.clearing = clearing;
    return s;
}

PolicySpec gipp_spec(bool clearing) {
    PolicySpec s;
    s.family = PolicySpec::Family::Gipp;
    s.clearing = clearing;
    return s;
}

PolicySpec mixed_spec(Rational eta, std::optional<Rational> p_min) {
    PolicySpec s;
    s.family = PolicySpec::Family::Mixed;
    s.eta = std::move(eta);
    s.p_min_cfg = std::move(p_min);
    return s;
}

PolicySpec follower_spec(Transform transform, PolicySpec base) {
    PolicySpec s;
    s.family = PolicySpec::Family::Follower;
    s.transform = transform;
    s.base = std::make_shared<PolicySpec>(std::move(base));
    return s;
}

PolicySpec srpt_order_spec() {
    PolicySpec s;
    s.family = PolicySpec::Family::SrptOrder;
    return s;
}

PolicySpec static_table_spec(std::vector<int> table) {
    PolicySpec s;
    s.family = PolicySpec::Family::StaticTable;
    s.table = std::move(table);
    return s;
}

std::vector<int> cyclic_visit_table(int k) {
    std::vector<int> table;
    for (int q = 1; q <= k; ++q) table.push_back(q);
    return table;
}

} // namespace pollbench
