#pragma once

// JSON (de)serialization of library records, and the sweep CSV writer.
//
// Rationals are written as strings ("2.25", "11/9") so they stay exact;
// reals use the shortest representation that round-trips.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "asymdof/alignment.hpp"
#include "asymdof/model.hpp"
#include "asymdof/oracle.hpp"
#include "asymdof/region.hpp"

namespace nlohmann {

template <>
struct adl_serializer<asymdof::Rational> {
    static void to_json(json& j, const asymdof::Rational& r) { j = asymdof::to_string(r); }
    static void from_json(const json& j, asymdof::Rational& r) {
        r = asymdof::parse_rational(j.get<std::string>());
    }
};

}  // namespace nlohmann

namespace asymdof {

using nlohmann::json;

template <typename T>
void to_json(json& j, const Triple<T>& t) {
    j = json::array({t[0], t[1], t[2]});
}

template <typename T>
void from_json(const json& j, Triple<T>& t) {
    if (!j.is_array() || j.size() != 3) throw std::invalid_argument("expected a 3-element array");
    for (std::size_t i = 0; i < 3; ++i) t[i] = j.at(i).get<T>();
}

void to_json(json& j, const NetworkDims& d);
void from_json(const json& j, NetworkDims& d);

void to_json(json& j, const Regime& r);
void from_json(const json& j, Regime& r);
/// Regime block of a report: to_json(regime) plus the scaled d_o.
json regime_json(const NetworkDims& dims, const Regime& regime);

void to_json(json& j, const TreeEntry& e);
void from_json(const json& j, TreeEntry& e);
void to_json(json& j, const TreeAllocation& a);
void from_json(const json& j, TreeAllocation& a);

void to_json(json& j, const RegionPoint& p);
void from_json(const json& j, RegionPoint& p);

void to_json(json& j, const ChainSpec& c);
void from_json(const json& j, ChainSpec& c);

void to_json(json& j, const ReceiverCheck& r);
void from_json(const json& j, ReceiverCheck& r);
void to_json(json& j, const TrialRecord& r);
void from_json(const json& j, TrialRecord& r);
void to_json(json& j, const VerificationReport& r);
void from_json(const json& j, VerificationReport& r);

/// The leakage trace is an in-memory diagnostic and is not serialized.
void to_json(json& j, const OracleTrial& t);
void from_json(const json& j, OracleTrial& t);
void to_json(json& j, const OracleResult& r);
void from_json(const json& j, OracleResult& r);

void to_json(json& j, const SweepRow& r);
void from_json(const json& j, SweepRow& r);

inline constexpr const char* kSweepCsvHeader = "gamma,L,loss_class,max_sum_dof,max_user_dof";

/// Header line plus one line per row; skipped rows leave L and the DoF
/// columns empty and report loss_class SKIPPED.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace asymdof
