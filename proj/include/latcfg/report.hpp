#pragma once

// Structured run reports: one JSON line per record plus a trailing summary
// record. Serialization is deterministic (keys sorted, values exact
// rationals as strings), so reports can be pinned by golden tests.

#include "latcfg/cluster.hpp"
#include "latcfg/config.hpp"
#include "latcfg/tiling.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace latcfg {

using json = nlohmann::json;

inline json to_json(Vec2 v) { return json::array({v.x, v.y}); }
inline json to_json(Direction d) { return json::array({d.dx, d.dy}); }

inline json to_json(const DirectionSet& ds) {
    json arr = json::array();
    for (Direction d : ds) arr.push_back(to_json(d));
    return arr;
}

inline json to_json(const DivisibilityReport& r) {
    json counts = json::object();
    for (auto& [id, n] : r.line_counts) counts[std::to_string(id)] = n;
    return json{{"type", "direction"},
                {"direction", to_json(r.direction)},
                {"line_counts", counts},
                {"all_divisible", r.all_divisible},
                {"cyclotomic_levels", r.cyclotomic_levels}};
}

inline json to_json(const AnnihilationCertificate& cert) {
    json j{{"kind", cert_kind_name(cert.kind)},
           {"window", json::array({cert.window.x0, cert.window.y0, cert.window.x1,
                                   cert.window.y1})}};
    if (cert.kind == CertKind::Fails) {
        j["witness"] = to_json(cert.witness);
        j["value"] = rat_str(cert.value);
    }
    if (cert.lattice)
        j["lattice"] = json::array({cert.lattice->a(), cert.lattice->b(), cert.lattice->c()});
    return j;
}

inline json to_json(const RectangleOutcome& out) {
    if (auto* r = std::get_if<IsRectangle>(&out)) {
        return json{{"outcome", "rectangle"},
                    {"A", r->A},
                    {"B", r->B},
                    {"basis", json::array({to_json(r->d1), to_json(r->d2)})},
                    {"axes_unimodular", r->axes_unimodular},
                    {"base", to_json(r->base)}};
    }
    if (auto* na = std::get_if<NotApplicable>(&out)) {
        json dirs = json::array();
        for (Direction d : na->divisible_directions) dirs.push_back(to_json(d));
        return json{{"outcome", "not_applicable"},
                    {"reason", na->reason},
                    {"divisible_directions", dirs}};
    }
    const auto& cw = std::get<CounterexampleWitness>(out);
    return json{{"outcome", "counterexample"}, {"witness", to_json(cw.witness)}};
}

struct RunReport {
    std::string command;
    json inputs = json::object();
    json results = json::object();
    std::vector<std::string> certificates;

    json to_json() const {
        return json{{"type", "summary"},
                    {"command", command},
                    {"inputs", inputs},
                    {"results", results},
                    {"certificates", certificates}};
    }

    static RunReport from_json(const json& j) {
        RunReport r;
        r.command = j.at("command").get<std::string>();
        r.inputs = j.at("inputs");
        r.results = j.at("results");
        r.certificates = j.at("certificates").get<std::vector<std::string>>();
        return r;
    }

    std::string to_jsonl() const { return to_json().dump(); }
};

} // namespace latcfg
