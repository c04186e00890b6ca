#include "qbs/json.hpp"

#include "qbs/error.hpp"

namespace qbs {

void to_json(nlohmann::json& j, const Replication& r) {
    j = nlohmann::json{{"raw", r.raw}, {"estimate", r.estimate}, {"matched", r.matched}};
}

void from_json(const nlohmann::json& j, Replication& r) {
    r.raw = j.at("raw").get<std::uint64_t>();
    r.estimate = j.at("estimate").get<double>();
    r.matched = j.value("matched", r.raw);
}

void to_json(nlohmann::json& j, const ReplicationSet& set) {
    j = nlohmann::json{{"mode", to_string(set.mode)},
                       {"aggregate", to_string(set.aggregate)},
                       {"seed", set.seed},
                       {"B", set.size()},
                       {"f", set.f},
                       {"replications", set.replications}};
}

void from_json(const nlohmann::json& j, ReplicationSet& set) {
    set.mode = parse_mode(j.at("mode").get<std::string>());
    set.aggregate = parse_aggregate(j.value("aggregate", std::string("COUNT")));
    set.seed = j.at("seed").get<std::uint64_t>();
    set.f = j.at("f").get<double>();
    set.replications = j.at("replications").get<std::vector<Replication>>();
    if (j.contains("B") && j.at("B").get<std::size_t>() != set.replications.size()) {
        throw ParseError("replication set B does not match the number of replications");
    }
}

void to_json(nlohmann::json& j, const BootstrapReport& r) {
    j = nlohmann::json{{"version", r.version},
                       {"aggregate", to_string(r.aggregate)},
                       {"mode", to_string(r.mode)},
                       {"seed", r.seed},
                       {"B", r.replication_count},
                       {"f", r.f},
                       {"n", r.n},
                       {"N", r.population},
                       {"alpha", r.alpha},
                       {"z", r.z},
                       {"point_estimate", r.point_estimate},
                       {"se_B", r.se},
                       {"ci", {{"lower", r.ci.lower}, {"upper", r.ci.upper}, {"half_width", r.ci.half_width}}},
                       {"sample_rows", r.sample_rows},
                       {"replications", r.replications}};
}

void from_json(const nlohmann::json& j, BootstrapReport& r) {
    r.version = j.at("version").get<std::string>();
    r.aggregate = parse_aggregate(j.at("aggregate").get<std::string>());
    r.mode = parse_mode(j.at("mode").get<std::string>());
    r.seed = j.at("seed").get<std::uint64_t>();
    r.replication_count = j.at("B").get<std::size_t>();
    r.f = j.at("f").get<double>();
    r.n = j.at("n").get<std::size_t>();
    r.population = j.at("N").get<std::uint64_t>();
    r.alpha = j.at("alpha").get<double>();
    r.z = j.at("z").get<double>();
    r.point_estimate = j.at("point_estimate").get<double>();
    r.se = j.at("se_B").get<double>();
    const auto& ci = j.at("ci");
    r.ci.lower = ci.at("lower").get<double>();
    r.ci.upper = ci.at("upper").get<double>();
    r.ci.half_width = ci.value("half_width", (r.ci.upper - r.ci.lower) / 2.0);
    r.sample_rows = j.value("sample_rows", std::vector<std::size_t>{});
    r.replications = j.at("replications").get<ReplicationSet>();
}

void to_json(nlohmann::json& j, const CountsTable& counts) {
    nlohmann::json entries = nlohmann::json::object();
    for (const auto& [bits, n] : counts.by_bitstring()) entries[bits] = n;
    j = nlohmann::json{{"width", counts.width()}, {"shots", counts.shots()}, {"counts", std::move(entries)}};
}

}  // namespace qbs
