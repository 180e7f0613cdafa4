#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

#include "cvforge/circuit.hpp"
#include "cvforge/grid.hpp"

namespace cvforge {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// Pure state on `arity` modes, each truncated at n_max photons.  The
// amplitude tensor is row-major with mode 0 slowest.
class FockState {
  public:
    FockState(int arity, int n_max);

    int arity() const { return arity_; }
    int n_max() const { return n_max_; }
    int dim() const { return n_max_ + 1; }
    Vec& amp() { return amp_; }
    const Vec& amp() const { return amp_; }

    cplx& at(std::initializer_list<int> ns);
    double norm_sq() const { return amp_.squaredNorm(); }

    static FockState vacuum(int arity, int n_max);
    static FockState fock(int arity, int n_max, std::initializer_list<int> ns);
    static FockState coherent(cplx alpha, int n_max);  // arity 1

  private:
    int arity_, n_max_;
    Vec amp_;
};

class FockDensity {
  public:
    FockDensity(int arity, int n_max);
    explicit FockDensity(const FockState& psi);

    int arity() const { return arity_; }
    int n_max() const { return n_max_; }
    int dim() const { return n_max_ + 1; }
    Mat& rho() { return rho_; }
    const Mat& rho() const { return rho_; }
    double trace() const { return rho_.trace().real(); }

  private:
    int arity_, n_max_;
    Mat rho_;  // (dim^arity) x (dim^arity)
};

void apply_gate(FockState& psi, const Gate& g);
void apply_gate(FockDensity& rho, const Gate& g);

// Kraus photon-loss channel with amplitude reflectivity eta on one mode,
// A_k = sum_n sqrt(C(n,k)) (sqrt(1-eta^2))^{n-k} eta^k |n-k><n|.
void loss_channel(FockDensity& rho, double eta, int mode);

struct RunResult {
    std::optional<FockState> pure;
    std::optional<FockDensity> density;
    std::vector<std::string> warnings;

    bool is_pure() const { return pure.has_value(); }
};

// Applies gates in order.  The first LossMarker switches to the density
// representation; HomodyneMarker gates are recorded but deferred to
// homodyne_condition.
RunResult run_circuit(const CircuitIR& c, const FockState& input);

enum class Quadrature { X, P };

struct HomodyneResult {
    std::optional<FockState> pure;      // set when input pure and w == 0
    std::optional<FockDensity> density;
    double probability = 0.0;  // density value when w == 0, else window mass
};

HomodyneResult homodyne_condition(const FockState& psi, int mode, Quadrature q,
                                  double value, double window);
HomodyneResult homodyne_condition(const FockDensity& rho, int mode, Quadrature q,
                                  double value, double window);

double fidelity(const FockState& a, const FockState& b);
double fidelity(const FockDensity& rho, const FockState& target);

FockDensity partial_trace_keep(const FockDensity& rho, int keep_mode);
FockDensity partial_trace_keep(const FockState& psi, int keep_mode);

// Wigner function of a single-mode state on the requested rectangle,
// W[i*p_points + j] at (x_i, p_j); normalization int W dx dp = trace.
struct WignerGrid {
    int x_points = 0, p_points = 0;
    double x_min = 0, x_max = 0, p_min = 0, p_max = 0;
    std::vector<double> w;

    double x(int i) const { return x_min + (x_max - x_min) * i / (x_points - 1); }
    double p(int j) const { return p_min + (p_max - p_min) * j / (p_points - 1); }
};

WignerGrid wigner(const FockDensity& rho, double x_range, double p_range, int points);

// Hermite-function synthesis of a single-mode pure state.
GridWavefunction to_position_wavefunction(const FockState& psi, const Grid1D& grid);

}  // namespace cvforge
