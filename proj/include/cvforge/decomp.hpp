#pragma once

#include <optional>
#include <vector>

#include "cvforge/circuit.hpp"
#include "cvforge/polycore.hpp"

namespace cvforge {

// Beam-splitter angle that minimizes the cubic-gate strength for a given
// QND strength, arccos(1/sqrt(3)).
double min_strength_angle();

enum class CompileStrategy { MinStrength, EqualStrength };

// e^{i alpha x_i x_j^2} as B_ij(s) X^3(r,i) B_ij(-2s) X^3(r,i) B_ij(s)
// followed by the corrective X^3(-beta, i), with alpha = 6r cos(s) sin^2(s)
// and beta = 2r cos^3(s).  The corrective is the last gate so callers can
// strip and merge it.
CircuitIR decompose_cubic_qnd(double alpha, int mode_i, int mode_j);
CircuitIR decompose_cubic_qnd(double alpha, int mode_i, int mode_j, double s);

// e^{i beta x_i x_j x_k} via two opposite-strength QND gates conjugated by
// jk beam splitters (u = pi/4, 2t sin(2u) = beta).  The two inner QND
// correctives cancel and are elided: 4 cubic gates, 9 beam splitters.
CircuitIR decompose_cv_toffoli(double beta, int mode_i, int mode_j, int mode_k);

// The alternating x^2/p^2 controlled-phase-rotation product for a strength
// vector: pair j contributes e^{i t mu_j x_c p_t^2 / 2} then
// e^{i t lambda_j x_c x_t^2 / 2}, rightmost pair first, cycled by the
// repetition count.  p^2 factors are realized by Fourier conjugation of the
// target mode; all mode-c cubic correctives merge into one trailing gate.
CircuitIR compile_S(const ParamVector& params, double t, int control, int target,
                    CompileStrategy strategy = CompileStrategy::MinStrength);

// Same alternation with three-mode gates e^{i t lambda_j x_i x_j x_k} and
// e^{i t mu_j x_i p_j p_k} built from CV Toffoli blocks.
CircuitIR compile_T(const ParamVector& params, double t, int mode_i, int mode_j,
                    int mode_k);

struct EqualStrengthPlan {
    std::vector<double> s;
    double r = 0.0;
};

// Beam-splitter angles s_j and one common cubic strength magnitude r with
// 6 r cos(s_j) sin^2(s_j) = |alpha_j| and the merged corrective magnitude
// equal to r.  Returns nullopt when no solution lies in (0, pi/2)^n.
std::optional<EqualStrengthPlan> equal_strength_plan(const std::vector<double>& alphas);

}  // namespace cvforge
