#include "cvforge/circuit.hpp"

#include <nlohmann/json.hpp>
#include <stdexcept>

namespace cvforge {

namespace {

const char* kind_name(GateKind k) {
    switch (k) {
        case GateKind::Squeeze: return "squeeze";
        case GateKind::Displace: return "displace";
        case GateKind::Rotate: return "rotate";
        case GateKind::BeamSplitter: return "beamsplitter";
        case GateKind::CubicPhase: return "cubicphase";
        case GateKind::LossMarker: return "lossmarker";
        case GateKind::HomodyneMarker: return "homodynemarker";
    }
    return "?";
}

GateKind kind_from(const std::string& s) {
    if (s == "squeeze") return GateKind::Squeeze;
    if (s == "displace") return GateKind::Displace;
    if (s == "rotate") return GateKind::Rotate;
    if (s == "beamsplitter") return GateKind::BeamSplitter;
    if (s == "cubicphase") return GateKind::CubicPhase;
    if (s == "lossmarker") return GateKind::LossMarker;
    if (s == "homodynemarker") return GateKind::HomodyneMarker;
    throw std::invalid_argument("unknown gate kind: " + s);
}

}  // namespace

GateCensus gate_census(const CircuitIR& c) {
    GateCensus n;
    for (const Gate& g : c.gates) {
        switch (g.kind) {
            case GateKind::Squeeze: ++n.squeeze; break;
            case GateKind::Displace: ++n.displace; break;
            case GateKind::Rotate: ++n.rotate; break;
            case GateKind::BeamSplitter: ++n.beam_splitter; break;
            case GateKind::CubicPhase: ++n.cubic_phase; break;
            case GateKind::LossMarker: ++n.loss_marker; break;
            case GateKind::HomodyneMarker: ++n.homodyne_marker; break;
        }
    }
    return n;
}

std::string circuit_to_json(const CircuitIR& c) {
    nlohmann::ordered_json j;
    j["arity"] = c.arity;
    j["gates"] = nlohmann::ordered_json::array();
    for (const Gate& g : c.gates) {
        nlohmann::ordered_json e;
        e["kind"] = kind_name(g.kind);
        e["modes"] = g.modes;
        e["params"] = g.params;
        j["gates"].push_back(e);
    }
    return j.dump(2);
}

CircuitIR circuit_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    CircuitIR c;
    c.arity = j.at("arity").get<int>();
    for (const auto& e : j.at("gates")) {
        Gate g;
        g.kind = kind_from(e.at("kind").get<std::string>());
        g.modes = e.at("modes").get<std::vector<int>>();
        g.params = e.at("params").get<std::vector<double>>();
        for (int m : g.modes)
            if (m < 0 || m >= c.arity)
                throw std::invalid_argument("gate mode index out of range");
        c.gates.push_back(std::move(g));
    }
    return c;
}

}  // namespace cvforge
