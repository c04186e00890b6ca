#pragma once

// nlohmann::json conversions for the serializable result types.

#include <nlohmann/json.hpp>

#include "qbs/assess.hpp"
#include "qbs/replication.hpp"
#include "qbs/simulator.hpp"

namespace qbs {

void to_json(nlohmann::json& j, const Replication& r);
void from_json(const nlohmann::json& j, Replication& r);

// {mode, aggregate, seed, B, f, replications: [{raw, estimate[, matched]}]}
void to_json(nlohmann::json& j, const ReplicationSet& set);
void from_json(const nlohmann::json& j, ReplicationSet& set);

void to_json(nlohmann::json& j, const BootstrapReport& report);
void from_json(const nlohmann::json& j, BootstrapReport& report);

// {width, shots, counts: {"<msb-first bitstring>": n}}
void to_json(nlohmann::json& j, const CountsTable& counts);

}  // namespace qbs
