#include "rarewave/eos.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace rarewave {

namespace {

// theta^{3/2} and theta^{5/2} without pow(); these sit on solver hot paths.
inline double pow32(double x) { return x * std::sqrt(x); }
inline double pow52(double x) { return x * x * std::sqrt(x); }
inline double pow53(double x) { return x * std::cbrt(x * x); }
inline double pow23(double x) { return std::cbrt(x * x); }

} // namespace

void EosParams::validate() const {
    if (!(Ztilde > 0.0)) throw EosDomainError("EosParams: Ztilde must be > 0");
    if (!(eps > 0.0)) throw EosDomainError("EosParams: eps must be > 0");
    if (!(a_eps >= 0.0)) throw EosDomainError("EosParams: a_eps must be >= 0");
    if (!(beta > 6.0)) throw EosDomainError("EosParams: beta must be > 6");
    if (!(mu_bar >= 0.0 && eta_bar >= 0.0 && kappa_bar >= 0.0))
        throw EosDomainError("EosParams: transport prefactors must be >= 0");
    if (!std::isfinite(a_eps / eps))
        throw EosDomainError("EosParams: a_eps/eps must be finite");
}

EosParams EosParams::for_eps(double eps, double Ztilde) {
    EosParams par;
    par.Ztilde = Ztilde;
    par.eps = eps;
    par.a_eps = eps * eps;
    par.validate();
    return par;
}

void ThermoState::validate() const {
    if (!(rho > 0.0) || !std::isfinite(rho))
        throw EosDomainError("ThermoState: rho must be positive and finite");
    if (!(theta > 0.0) || !std::isfinite(theta))
        throw EosDomainError("ThermoState: theta must be positive and finite");
    if (!std::isfinite(Z()))
        throw EosDomainError("ThermoState: Z = rho/theta^{3/2} not finite");
}

double structural_pressure(double Z, const EosParams& par) {
    if (Z < 0.0) throw EosDomainError("structural_pressure: Z must be >= 0");
    const double Zt = par.Ztilde;
    if (Z <= Zt) return Z;
    const double r = Z / Zt;
    return Zt * (0.6 * r * std::cbrt(r * r) + 0.4);
}

double structural_pressure_deriv(double Z, const EosParams& par) {
    if (Z < 0.0) throw EosDomainError("structural_pressure_deriv: Z must be >= 0");
    const double Zt = par.Ztilde;
    if (Z <= Zt) return 1.0;
    return pow23(Z / Zt);
}

double structural_entropy(double Z, const EosParams& par) {
    if (!(Z > 0.0)) throw EosDomainError("structural_entropy: Z must be > 0");
    const double Zt = par.Ztilde;
    if (Z <= Zt) return 1.0 - std::log(Z / Zt);
    return Zt / Z;
}

double structural_entropy_deriv(double Z, const EosParams& par) {
    if (!(Z > 0.0)) throw EosDomainError("structural_entropy_deriv: Z must be > 0");
    const double Zt = par.Ztilde;
    if (Z <= Zt) return -1.0 / Z;
    return -Zt / (Z * Z);
}

// S is C^1 but not C^2 at the junction; at Z == Ztilde we return the
// Boyle-Mariotte side.  Callers probing the junction use one-sided differences.
double structural_entropy_deriv2(double Z, const EosParams& par) {
    if (!(Z > 0.0)) throw EosDomainError("structural_entropy_deriv2: Z must be > 0");
    const double Zt = par.Ztilde;
    if (Z <= Zt) return 1.0 / (Z * Z);
    return 2.0 * Zt / (Z * Z * Z);
}

double pressure(const ThermoState& q, const EosParams& par) {
    const double Z = q.Z();
    return pow52(q.theta) * structural_pressure(Z, par)
           + par.a_eps * (q.theta * q.theta) * (q.theta * q.theta);
}

double internal_energy(const ThermoState& q, const EosParams& par) {
    const double Z = q.Z();
    return 1.5 * pow52(q.theta) * structural_pressure(Z, par)
           + 3.0 * par.a_eps * (q.theta * q.theta) * (q.theta * q.theta);
}

double specific_entropy(const ThermoState& q, const EosParams& par) {
    const double Z = q.Z();
    return structural_entropy(Z, par)
           + 4.0 * par.a_eps * q.theta * q.theta * q.theta / q.rho;
}

double entropy_density(const ThermoState& q, const EosParams& par) {
    const double Z = q.Z();
    return q.rho * structural_entropy(Z, par)
           + 4.0 * par.a_eps * q.theta * q.theta * q.theta;
}

double dp_drho(const ThermoState& q, const EosParams& par) {
    // dp/drho = theta^{5/2} P'(Z) / theta^{3/2} = theta P'(Z)
    return q.theta * structural_pressure_deriv(q.Z(), par);
}

double dp_dtheta(const ThermoState& q, const EosParams& par) {
    const double Z = q.Z();
    const double P = structural_pressure(Z, par);
    const double Pp = structural_pressure_deriv(Z, par);
    return 2.5 * pow32(q.theta) * P - 1.5 * q.rho * Pp
           + 4.0 * par.a_eps * q.theta * q.theta * q.theta;
}

double internal_energy_dtheta(const ThermoState& q, const EosParams& par) {
    const double Z = q.Z();
    const double P = structural_pressure(Z, par);
    const double Pp = structural_pressure_deriv(Z, par);
    return 1.5 * (2.5 * pow32(q.theta) * P - 1.5 * q.rho * Pp)
           + 12.0 * par.a_eps * q.theta * q.theta * q.theta;
}

double entropy_density_dtheta(const ThermoState& q, const EosParams& par) {
    const double Z = q.Z();
    const double Sp = structural_entropy_deriv(Z, par);
    return -1.5 * (q.rho * q.rho / pow52(q.theta)) * Sp
           + 12.0 * par.a_eps * q.theta * q.theta;
}

namespace {

// Safeguarded Newton on a monotone increasing scalar function: keeps the
// bracket [lo, hi] valid, falls back to bisection whenever a Newton step
// leaves it or stalls.  f and df are evaluated together through `eval`.
template <class Eval>
double monotone_solve(double lo, double hi, double x0, Eval eval,
                      const char* who) {
    double flo = eval(lo).first;
    double fhi = eval(hi).first;
    if (flo > 0.0 || fhi < 0.0)
        throw std::runtime_error(std::string(who) + ": root not bracketed");
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;

    double x = std::clamp(x0, lo, hi);
    for (int it = 0; it < 120; ++it) {
        auto [f, df] = eval(x);
        if (f == 0.0) return x;
        if (f > 0.0) hi = x; else lo = x;

        double step = (df > 0.0) ? f / df : std::numeric_limits<double>::infinity();
        double xn = x - step;
        if (!(xn > lo) || !(xn < hi)) xn = 0.5 * (lo + hi);
        if (std::abs(xn - x) <= 1e-15 * std::abs(xn)) return xn;
        x = xn;
        if (hi - lo <= 1e-15 * std::abs(x)) return x;
    }
    return x;
}

} // namespace

double invert_energy(double rho, double rho_e, const EosParams& par,
                     double theta_hint) {
    if (!(rho > 0.0)) throw EosDomainError("invert_energy: rho must be > 0");
    if (!(rho_e > 0.0)) throw EosDomainError("invert_energy: rho_e must be > 0");

    const double Zt = par.Ztilde;
    const double a = par.a_eps;

    // rho*e and its theta derivative in one pass (shared Z and branch)
    auto eval = [&](double th) {
        const double t32 = pow32(th);
        const double Z = rho / t32;
        double P, Pp;
        if (Z <= Zt) {
            P = Z;
            Pp = 1.0;
        } else {
            const double r = Z / Zt;
            P = Zt * (0.6 * r * std::cbrt(r * r) + 0.4);
            Pp = std::cbrt(r * r);
        }
        const double t4 = (th * th) * (th * th);
        const double f = 1.5 * th * t32 * P + 3.0 * a * t4 - rho_e;
        const double df = 1.5 * (2.5 * t32 * P - 1.5 * rho * Pp) + 12.0 * a * t4 / th;
        return std::pair<double, double>(f, df);
    };

    // Junction temperature for this density and the branch-aware initial guess.
    const double theta_junction = pow23(rho / Zt);
    const double e_junction = eval(theta_junction).first + rho_e;

    double guess;
    if (rho_e >= e_junction) {
        // Boyle-Mariotte side: 1.5 rho theta + 3 a theta^4 = rho_e
        guess = rho_e / (1.5 * rho);
        if (a > 0.0) guess = std::min(guess, std::sqrt(std::sqrt(rho_e / (3.0 * a))));
    } else {
        // degenerate side: 0.9 rho^{5/3} Zt^{-2/3} + 0.6 Zt theta^{5/2} + 3 a theta^4 = rho_e
        const double floor_e = 0.9 * pow53(rho) / pow23(Zt);
        const double rem = rho_e - floor_e;
        if (!(rem > 0.0))
            throw std::runtime_error("invert_energy: rho_e below the structural minimum");
        guess = std::pow(rem / (0.6 * Zt), 0.4);
        if (a > 0.0) guess = std::min(guess, std::sqrt(std::sqrt(rem / (3.0 * a))));
    }
    if (theta_hint > 0.0) guess = theta_hint;

    const double lo = 1e-12;
    const double hi = 1e3 * rho_e / rho;

    // The closed-form guess is exact for a_eps = 0 and within O(a) otherwise,
    // so plain Newton converges in a couple of evaluations; the bracketed
    // solve (which pays two extra endpoint evaluations) is the fallback.
    double x = std::clamp(guess, lo, hi);
    for (int it = 0; it < 10; ++it) {
        const auto [f, df] = eval(x);
        if (!(df > 0.0)) break;
        const double dx = f / df;
        const double xn = x - dx;
        if (!(xn > lo) || !(xn > 0.25 * x) || !(xn < 4.0 * x) || !(xn < hi)) break;
        if (std::abs(dx) <= 1e-14 * xn) return xn;
        x = xn;
    }
    return monotone_solve(lo, hi, guess, eval, "invert_energy");
}

double invert_entropy(double rho, double rho_s, const EosParams& par,
                      double theta_hint) {
    if (!(rho > 0.0)) throw EosDomainError("invert_entropy: rho must be > 0");
    if (!(rho_s > 0.0)) throw EosDomainError("invert_entropy: rho_s must be > 0");

    // rho*s is increasing in theta with range (0, infinity); expand a bracket
    // multiplicatively around the hint (or the junction temperature).
    double x = theta_hint > 0.0 ? theta_hint : pow23(rho / par.Ztilde);
    auto value = [&](double th) {
        return entropy_density(ThermoState{rho, th}, par) - rho_s;
    };
    double lo = x, hi = x;
    for (int it = 0; value(lo) > 0.0; ++it) {
        lo *= 0.25;
        if (it > 400) throw std::runtime_error("invert_entropy: no lower bracket");
    }
    for (int it = 0; value(hi) < 0.0; ++it) {
        hi *= 4.0;
        if (it > 400) throw std::runtime_error("invert_entropy: no upper bracket");
    }
    auto eval = [&](double th) {
        const ThermoState q{rho, th};
        return std::pair<double, double>(entropy_density(q, par) - rho_s,
                                         entropy_density_dtheta(q, par));
    };
    return monotone_solve(lo, hi, std::clamp(x, lo, hi), eval, "invert_entropy");
}

double wave_speed_bound(const ThermoState& q, const EosParams& par) {
    return 1.2 * std::sqrt((5.0 / 3.0) * pressure(q, par) / q.rho);
}

PressureSpeed pressure_and_speed_bound(const ThermoState& q, const EosParams& par) {
    PressureSpeed ps;
    ps.p = pressure(q, par);
    ps.c_bound = 1.2 * std::sqrt((5.0 / 3.0) * ps.p / q.rho);
    return ps;
}

double viscosity_mu(double theta, const EosParams& par) {
    return par.mu_bar * (1.0 + theta);
}

double viscosity_eta(double theta, const EosParams& par) {
    return par.eta_bar * (1.0 + theta);
}

double conductivity_kappa(double theta, const EosParams& par) {
    if (par.beta == 6.5) {
        // default exponent 13/2: avoid pow on the face loop
        const double t3 = theta * theta * theta;
        return par.kappa_bar * (1.0 + t3 * t3 * std::sqrt(theta));
    }
    return par.kappa_bar * (1.0 + std::pow(theta, par.beta));
}

} // namespace rarewave
