#pragma once

#include "rarewave/eos.hpp"

namespace rarewave {

/// Pointwise fluid state (density, temperature, velocity).
struct FlowState {
    double rho;
    double theta;
    double u;

    ThermoState thermo() const { return ThermoState{rho, theta}; }
};

/// Mono-atomic (gamma = 5/3) sound speed in the Boyle-Mariotte region,
/// c = sqrt(5 theta / 3).
double sound_speed(const FlowState& q);

/// Classical mono-atomic specific entropy (3/2) log(theta) - log(rho).
double monatomic_entropy(const FlowState& q);

struct RiemannEndStates {
    FlowState left;
    FlowState right;
};

/// Exact self-similar rarefaction wave of the isentropic gamma = 5/3 Euler
/// system.  Both end states sit on the Boyle-Mariotte branch at Z == Ztilde;
/// the fan interpolates along the isentrope.
struct RarefactionWave {
    int family = 1;          ///< 1 (left-going acoustic family) or 3
    double s_const = 0.0;    ///< constant specific entropy across the wave
    double Ztilde = 1.0;     ///< rho / theta^{3/2}, constant across the wave
    RiemannEndStates ends;
    double xi_head = 0.0;    ///< fan edges in the self-similar variable xi = x1/t
    double xi_tail = 0.0;
    double L = 0.0;          ///< domain half-width (assigned by the harness)
    double T = 0.0;          ///< final time (assigned by the harness)
};

struct WaveError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Connects the right state across a single rarefaction via the gamma = 5/3
/// Riemann invariants: theta_R = rho_R^{2/3} exp(2 s / 3), and u_R = u_L
/// -/+ 3 (c_R - c_L) for family 1/3.  Rejects non-admissible rho_right
/// (family 1 requires rho_right <= rho_left, family 3 the reverse).
RiemannEndStates connect_right_state(const FlowState& left, int family,
                                     double rho_right);

/// Full wave construction. Sets Ztilde from the left state (the wave lives on
/// the Z == Ztilde branch by construction).
RarefactionWave make_rarefaction(const FlowState& left, int family,
                                 double rho_right);

/// Evaluates the wave at t > 0.  Inside the fan (family 1):
///   c = (u_L + 3 c_L - xi) / 4,  u = xi + c,  theta = 3 c^2 / 5,
///   rho = Ztilde theta^{3/2}.
FlowState evaluate(const RarefactionWave& wave, double t, double x1);

/// The discontinuous t = 0 Riemann datum (left state for x1 < 0, right for
/// x1 >= 0); initializers use this, evaluate() itself requires t > 0.
FlowState riemann_datum(const RarefactionWave& wave, double x1);

/// L = (1 + margin) max(|xi_head|, |xi_tail|, |u_L| + c_L, |u_R| + c_R) T:
/// keeps the fan and all acoustic signals strictly interior over [0, T].
double domain_halfwidth(const RarefactionWave& wave, double t_final,
                        double margin);

/// Mirror image x1 -> -x1, u -> -u: swaps the end states and flips the family
/// (1 <-> 3).  The u_R < 0 boundary configuration reduces to the native
/// u_L > 0 one through this map.
RarefactionWave reflect(const RarefactionWave& wave);
FlowState reflect(const FlowState& q);

struct EulerResidual {
    double mass;
    double momentum;
    double energy;
};

/// Central-difference residuals of the three Euler conservation laws, sampled
/// over the open fan interior and the constant regions (stencils never touch
/// the kinks at xi_head, xi_tail).  Max-norm per equation.
EulerResidual euler_residual(const RarefactionWave& wave, double t, double h);

} // namespace rarewave
