#pragma once

#include "rarewave/eos.hpp"
#include "rarewave/rarefaction.hpp"

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace rarewave {

struct Grid {
    double L = 1.0;  ///< half-width, domain [-L, L]
    int N = 16;      ///< cell count (>= 16)

    double h() const { return 2.0 * L / N; }
    double x_center(int i) const { return -L + (i + 0.5) * h(); }
    double x_face(int i) const { return -L + i * h(); }
    void validate() const;
};

/// Dirichlet data of the inflow/outflow problem: all three primitives at the
/// left (inflow, u_L > 0), temperature and velocity at the right (outflow,
/// density extrapolated from the interior).
struct BoundaryData {
    double rho_L, theta_L, u_L;
    double theta_R, u_R;

    static BoundaryData from_wave(const RarefactionWave& w);
};

enum class InitMode {
    MollifiedRiemann,  ///< Riemann data smoothed over a width-w transition at x = 0
    ExactWaveAt,       ///< wave profile at t_start > 0; the run clock starts there
};

struct SolverConfig {
    Grid grid;
    EosParams eos;
    BoundaryData boundary{1.0, 1.0, 1.0, 1.0, 1.0};
    double cfl = 0.4;
    double t_final = 0.5;
    InitMode init_mode = InitMode::MollifiedRiemann;
    double mollify_width = 0.0;  ///< 0 = auto: max(4h, 0.01 L)
    double t_start = 0.0;        ///< initial clock; must be in (0, t_final) for ExactWaveAt
    int order = 2;               ///< 1 = first order, 2 = minmod MUSCL + two-stage update
    std::vector<double> probe_times;  ///< report times, strictly inside (t_start, t_final]

    double width() const;
    void validate() const;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when density or recovered temperature loses positivity; the run is
/// aborted rather than clipped so energy accounting never silently corrupts.
struct PositivityError : std::runtime_error {
    double t;
    int cell;
    double rho;
    double rho_e;
    PositivityError(double t_, int cell_, double rho_, double rho_e_);
};

/// Conservative variables per cell plus the primitives recovered from them.
struct FluidField {
    int n = 0;
    std::vector<double> rho, mom, E;  ///< conserved: density, momentum, total energy
    std::vector<double> u, theta;     ///< derived primitives

    void resize(int n_cells);
};

/// Recovers (u, theta) from the conserved variables via invert_energy; throws
/// PositivityError (tagged with time t) on non-positive density or internal
/// energy below the EOS floor.
void recover_primitives(FluidField& f, const EosParams& par, double t);

FluidField initialize(const SolverConfig& config, const RarefactionWave& wave);

/// Local Lax-Friedrichs (Rusanov) flux between reconstructed interface states:
/// (F(L) + F(R))/2 - lambda (U_R - U_L)/2, lambda = max(|u| + wave_speed_bound).
std::array<double, 3> convective_flux(const FlowState& left, const FlowState& right,
                                      const EosParams& par);

/// Face-centered viscous stress and Fourier flux of the planar d = 3 reduction:
/// sigma = eps ((4/3) mu + eta) du/dx, q = -eps kappa dtheta/dx, with arithmetic
/// face means; returns (0, -sigma, -sigma u_f + q).
std::array<double, 3> dissipative_flux(const FlowState& left, const FlowState& right,
                                       double h, const EosParams& par);

/// Ghost primitives: left all-Dirichlet (inflow), right Dirichlet in theta and
/// u with zeroth-order density extrapolation (outflow).
struct GhostStates {
    FlowState left;
    FlowState right;
};
GhostStates apply_boundary(const FluidField& f, const SolverConfig& config);

/// CFL step: dt = cfl * min_i min(h/(|u|+c_est), h^2/(2 eps nu_max)).
double stable_dt(const FluidField& f, const SolverConfig& config);

/// Boundary bookkeeping of one step (time-integrated flux triples through the
/// leftmost and rightmost faces, in the + x direction).
struct StepFluxes {
    std::array<double, 3> left{};
    std::array<double, 3> right{};
};

/// One explicit update (two-stage second-order by default); recovers
/// primitives and re-checks positivity after each stage.
StepFluxes step(FluidField& f, const SolverConfig& config, double t, double dt);

class EnergyProbes;  // relative-energy module
struct EnergyReport;

/// Integrates from t_start to t_final, invoking the probes each step and
/// emitting one report at initialization plus one per probe time.
std::vector<EnergyReport> run(const SolverConfig& config, const RarefactionWave& wave,
                              EnergyProbes& probes);

} // namespace rarewave
