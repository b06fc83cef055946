#pragma once

#include "rarewave/eos.hpp"
#include "rarewave/rarefaction.hpp"
#include "rarewave/solver.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rarewave {

/// Time-stamped diagnostics of one run.
struct EnergyReport {
    double t = 0.0;
    double eps = 0.0;
    double E_rel_total = 0.0;      ///< integrated relative energy against the wave
    double L1_rho = 0.0;           ///< L1 distances to the wave profile
    double L1_theta = 0.0;
    double L1_m = 0.0;
    double ballistic_total = 0.0;  ///< integrated ballistic energy with (u_B, theta_B)
    double dissipation_accum = 0.0;  ///< time-accumulated entropy-production integral
};

/// Boundary-compatible weight profiles of the ballistic energy: u_B monotone
/// between the end velocities, theta_B convex with 0 < theta_B <= wave
/// temperature.  Both depend on x only.
struct BallisticData {
    std::vector<double> u_B;            ///< at cell centers
    std::vector<double> theta_B;
    std::vector<double> u_B_face;       ///< at faces (dissipation integrand)
    std::vector<double> theta_B_face;

    /// u_B: monotone cubic (zero end-slope smoothstep) between u_L and u_R.
    /// theta_B: piecewise-linear with a kink at x = 0, dropping to
    /// min(theta_L, theta_R); convex, below the wave temperature at all probe
    /// times (asserted at construction against samples of the wave).
    static BallisticData build(const RarefactionWave& wave, const Grid& grid,
                               double t_final);
};

/// E_eps(state | target) = rho |u - u~|^2 / 2 + rho e(rho,theta)
///   - theta~ rho s(rho,theta) - (e~ - theta~ s~ + p~/rho~) rho + p~,
/// all thermodynamic functions carrying the radiative a_eps terms.  With
/// a_eps = 0 this is the plain relative energy along the same code path.
double relative_energy_density(const FlowState& state, const FlowState& target,
                               const EosParams& par);

/// Midpoint-rule integral of the relative energy against the wave at time t.
double total_relative_energy(const FluidField& f, const Grid& grid,
                             const RarefactionWave& wave, double t,
                             const EosParams& par);

/// rho |u - u_B|^2 / 2 + rho e - theta_B rho s
double ballistic_energy_density(const FlowState& state, double u_B, double theta_B,
                                const EosParams& par);

struct L1Distances {
    double rho, theta, m;
};
L1Distances l1_distances(const FluidField& f, const Grid& grid,
                         const RarefactionWave& wave, double t);

/// Step-by-step diagnostics of one run; owns the dissipation accumulator.
class EnergyProbes {
public:
    EnergyProbes(const RarefactionWave& wave, const Grid& grid,
                 const EosParams& par, BallisticData data);

    /// Accumulates the entropy-production integral
    /// (theta_B/theta)(S : grad u + eps kappa |grad theta|^2 / theta)
    /// over [t, t + dt] by face-centered differences (first order in time).
    void on_step(const FluidField& f, double dt);

    EnergyReport report(const FluidField& f, double t) const;

    const BallisticData& ballistic() const { return data_; }

private:
    const RarefactionWave* wave_;
    Grid grid_;
    EosParams par_;
    BallisticData data_;
    double dissipation_ = 0.0;
    double dissipation_comp_ = 0.0;  // Kahan compensation
};

/// Bregman-distance property suite over random states and targets in
/// [1e-2, 1e2]^2 x [-5, 5].
struct BregmanReport {
    std::int64_t samples = 0;
    std::int64_t skipped = 0;           ///< conservative-inversion failures
    double min_energy = 0.0;            ///< (i) >= -1e-12
    double max_indiscernible_dist = 0.0;  ///< (ii) worst distance among E <= 1e-10 pairs
    std::int64_t indiscernible_pairs = 0;
    double max_midpoint_excess = 0.0;   ///< (iii) max E_mid - (E_1 + E_2)/2
    bool nonnegativity_ok = false;
    bool indiscernibility_ok = false;
    bool midpoint_convexity_ok = false;
    bool all_ok() const {
        return nonnegativity_ok && indiscernibility_ok && midpoint_convexity_ok;
    }
};
BregmanReport bregman_properties_check(const EosParams& par, int sample_count,
                                       std::uint64_t seed = 0x5eedb7e6ULL);

/// Uniform-bound probe across an eps sweep: fits
/// ballistic_total(t) + dissipation_accum(t) <= ballistic_total(0) + C (t - t0)
/// per run and checks the fitted constants do not grow as eps decreases.
struct UniformBoundVerdict {
    std::vector<double> eps;
    std::vector<double> C_per_eps;          ///< with dissipation accounting
    std::vector<double> C_ablated_per_eps;  ///< without dissipation accounting
    double C_fitted = 0.0;                  ///< max over the sweep
    bool eps_stable = false;                ///< consecutive ratio <= 1.1
    bool ablation_agrees = false;
    std::string detail;
};
UniformBoundVerdict uniform_bound_probe(
    const std::vector<std::pair<double, std::vector<EnergyReport>>>& trajectories);

} // namespace rarewave
