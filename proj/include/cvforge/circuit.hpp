#pragma once

#include <string>
#include <vector>

#include "cvforge/numerics.hpp"

namespace cvforge {

enum class GateKind {
    Squeeze,         // params: {xi}, e^{xi} scaling of x
    Displace,        // params: {re, im} of the coherent amplitude
    Rotate,          // params: {angle}; pi/2 is the Fourier gate
    BeamSplitter,    // params: {s}; generator s*(p_k x_l - x_k p_l), modes {k, l}
    CubicPhase,      // params: {r}; e^{i r x^3}
    LossMarker,      // params: {eta}; loss amplitude, transmission sqrt(1-eta^2)
    HomodyneMarker,  // params: {0 for x, 1 for p}; terminates the mode
};

struct Gate {
    GateKind kind;
    std::vector<int> modes;
    std::vector<double> params;

    static Gate squeeze(double xi, int mode) { return {GateKind::Squeeze, {mode}, {xi}}; }
    static Gate displace(cplx a, int mode) {
        return {GateKind::Displace, {mode}, {a.real(), a.imag()}};
    }
    static Gate rotate(double angle, int mode) { return {GateKind::Rotate, {mode}, {angle}}; }
    static Gate beam_splitter(double s, int k, int l) {
        return {GateKind::BeamSplitter, {k, l}, {s}};
    }
    static Gate cubic(double r, int mode) { return {GateKind::CubicPhase, {mode}, {r}}; }
    static Gate loss(double eta, int mode) { return {GateKind::LossMarker, {mode}, {eta}}; }
    static Gate homodyne_x(int mode) { return {GateKind::HomodyneMarker, {mode}, {0.0}}; }
    static Gate homodyne_p(int mode) { return {GateKind::HomodyneMarker, {mode}, {1.0}}; }
};

// Gates apply in list order (gates.front() acts first).
struct CircuitIR {
    int arity = 1;
    std::vector<Gate> gates;
};

struct GateCensus {
    int squeeze = 0;
    int displace = 0;
    int rotate = 0;
    int beam_splitter = 0;
    int cubic_phase = 0;
    int loss_marker = 0;
    int homodyne_marker = 0;
};

GateCensus gate_census(const CircuitIR& c);

std::string circuit_to_json(const CircuitIR& c);
CircuitIR circuit_from_json(const std::string& text);

}  // namespace cvforge
