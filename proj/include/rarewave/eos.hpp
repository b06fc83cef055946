#pragma once

#include <cmath>
#include <stdexcept>

namespace rarewave {

/// Parameters of the hybrid mono-atomic / radiative equation of state and the
/// scaled transport laws.  All quantities are nondimensional.
///
/// The structural pressure P(Z) follows the Boyle-Mariotte law P(Z) = Z up to
/// the junction value Ztilde and switches to the degenerate-gas branch
/// (3/5) Z^{5/3} Ztilde^{-2/3} + (2/5) Ztilde beyond it.  The radiative terms
/// carry the coefficient a_eps; in sweep configurations a_eps = eps^2 so that
/// a_eps/eps -> 0 with the dissipation scale.
struct EosParams {
    double Ztilde = 1.0;     ///< junction value of Z = rho / theta^{3/2} (> 0)
    double a_eps = 0.0;      ///< radiation coefficient (>= 0)
    double eps = 1.0;        ///< dissipation scale (> 0)
    double mu_bar = 1.0;     ///< shear viscosity prefactor, mu(theta) = mu_bar (1 + theta)
    double eta_bar = 0.0;    ///< bulk viscosity prefactor, eta(theta) = eta_bar (1 + theta)
    double kappa_bar = 1.0;  ///< conductivity prefactor, kappa(theta) = kappa_bar (1 + theta^beta)
    double beta = 6.5;       ///< conductivity exponent (> 6)

    void validate() const;

    /// Sweep parameterisation: a(eps) = eps^2.
    static EosParams for_eps(double eps, double Ztilde = 1.0);
};

/// Pointwise thermodynamic state (density, absolute temperature).
struct ThermoState {
    double rho;
    double theta;

    double Z() const { return rho / (theta * std::sqrt(theta)); }
    void validate() const;
};

struct EosDomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// --- structural functions of Z = rho / theta^{3/2} -------------------------

/// P(Z): Boyle-Mariotte branch for Z <= Ztilde, degenerate branch beyond.
/// C^1 at the junction.  Requires Z >= 0.
double structural_pressure(double Z, const EosParams& par);
double structural_pressure_deriv(double Z, const EosParams& par);

/// S(Z) = 1 - log(Z/Ztilde) for Z <= Ztilde, Ztilde/Z beyond; strictly
/// decreasing, C^1 at the junction with S'(Ztilde) = -1/Ztilde.  Requires Z > 0.
double structural_entropy(double Z, const EosParams& par);
double structural_entropy_deriv(double Z, const EosParams& par);
double structural_entropy_deriv2(double Z, const EosParams& par);

// --- thermodynamic evaluations ---------------------------------------------

/// p = theta^{5/2} P(Z) + a_eps theta^4
double pressure(const ThermoState& q, const EosParams& par);

/// volumetric internal energy rho*e = (3/2) theta^{5/2} P(Z) + 3 a_eps theta^4
double internal_energy(const ThermoState& q, const EosParams& par);

/// specific entropy s = S(Z) + 4 a_eps theta^3 / rho
double specific_entropy(const ThermoState& q, const EosParams& par);

/// rho*s
double entropy_density(const ThermoState& q, const EosParams& par);

// analytic partial derivatives (flux Jacobian estimates, Newton iterations)
double dp_drho(const ThermoState& q, const EosParams& par);
double dp_dtheta(const ThermoState& q, const EosParams& par);
double internal_energy_dtheta(const ThermoState& q, const EosParams& par);
double entropy_density_dtheta(const ThermoState& q, const EosParams& par);

/// Recovers the unique theta > 0 with internal_energy(rho, theta) = rho_e.
/// Safeguarded Newton with bisection fallback on the bracket
/// [1e-12, 1e3 rho_e/rho]; relative tolerance 1e-12 or better.
/// theta_hint, when positive, seeds the iteration (e.g. previous time level).
double invert_energy(double rho, double rho_e, const EosParams& par,
                     double theta_hint = 0.0);

/// Recovers the unique theta > 0 with entropy_density(rho, theta) = rho_s.
/// rho_s must be positive (the entropy density S(Z) is positive on both
/// branches).  Used to reconstruct states from conservative entropy variables.
double invert_entropy(double rho, double rho_s, const EosParams& par,
                      double theta_hint = 0.0);

/// Upper bound on the acoustic speed: 1.2 sqrt((5/3) p / rho).  Only ever used
/// as a dissipation bound, never as the exact sound speed.
double wave_speed_bound(const ThermoState& q, const EosParams& par);

/// Pressure and the acoustic bound in one evaluation (flux and CFL loops).
struct PressureSpeed {
    double p;
    double c_bound;
};
PressureSpeed pressure_and_speed_bound(const ThermoState& q, const EosParams& par);

// --- transport laws ---------------------------------------------------------

double viscosity_mu(double theta, const EosParams& par);
double viscosity_eta(double theta, const EosParams& par);
double conductivity_kappa(double theta, const EosParams& par);

} // namespace rarewave
