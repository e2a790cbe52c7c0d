#pragma once

// JSON views of the report types. Field names follow the type definitions;
// absent optionals are omitted.

#include <json.hpp>

#include "icotherm/causal_switch.hpp"
#include "icotherm/cycle.hpp"
#include "icotherm/sweep.hpp"
#include "icotherm/verify.hpp"

namespace icotherm {

inline nlohmann::json to_json(const StrokeRecord& s) {
    return {{"label", s.label},
            {"delta_u", s.delta_u},
            {"delta_s", s.delta_s},
            {"exchange_kind", to_string(s.exchange_kind)}};
}

inline nlohmann::json to_json(const CycleReport& r) {
    nlohmann::json j;
    j["mode"] = to_string(r.mode);
    j["strokes"] = nlohmann::json::array();
    for (const StrokeRecord& s : r.strokes) j["strokes"].push_back(to_json(s));
    j["q_hot"] = r.q_hot;
    j["q_cold"] = r.q_cold;
    j["work"] = r.work;
    if (r.merit) j["merit"] = *r.merit;
    if (r.omega) j["omega"] = *r.omega;
    if (r.branch_probability) j["branch_probability"] = *r.branch_probability;
    if (r.expected_repeats) j["expected_repeats"] = *r.expected_repeats;
    j["first_law_residual"] = r.first_law_residual;
    return j;
}

inline nlohmann::json to_json(const VerifyInputs& in) {
    nlohmann::json j{{"a", in.a}, {"b", in.b},         {"theta", in.theta},
                     {"beta_eps", in.beta_eps},        {"eps", in.eps}};
    if (in.branch == 0)
        j["branch"] = "plus";
    else if (in.branch == 1)
        j["branch"] = "minus";
    return j;
}

inline nlohmann::json to_json(const VerifyReport& r) {
    nlohmann::json j;
    j["pass"] = r.pass;
    j["equations"] = nlohmann::json::array();
    for (const EquationStat& st : r.equations) {
        j["equations"].push_back({{"id", st.id},
                                  {"cases", st.cases},
                                  {"max_deviation", st.max_deviation},
                                  {"worst_inputs", to_json(st.worst_inputs)}});
    }
    return j;
}

inline nlohmann::json to_json(const SweepRow& row) {
    nlohmann::json j;
    j["a"] = row.a;
    j["theta"] = row.theta;
    j["beta_eps"] = row.beta_eps;
    j["branch"] = row.branch;
    if (row.p) j["p"] = *row.p;
    if (row.omega) j["omega"] = *row.omega;
    j["q_hot"] = row.q_hot;
    j["work"] = row.work;
    j["q_cold"] = row.q_cold;
    if (row.merit) j["merit"] = *row.merit;
    j["mode"] = to_string(row.mode);
    return j;
}

inline nlohmann::json to_json(const std::vector<SweepRow>& rows) {
    nlohmann::json j = nlohmann::json::array();
    for (const SweepRow& r : rows) j.push_back(to_json(r));
    return j;
}

}  // namespace icotherm
