#include "rarewave/eos_checks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

namespace rarewave {

namespace {

std::string state_str(double rho, double theta) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "(rho %.6g, theta %.6g)", rho, theta);
    return buf;
}

} // namespace

VerificationReport certify_eos(const EosParams& par, int samples,
                               std::uint64_t seed) {
    par.validate();
    const double Zt = par.Ztilde;

    VerificationReport rep;
    {
        char buf[96];
        std::snprintf(buf, sizeof buf, "eos certification, Ztilde = %g, a_eps = %g",
                      Zt, par.a_eps);
        rep.title = buf;
    }

    std::mt19937_64 rng(seed);
    auto log_uniform = [&](double lo, double hi) {
        std::uniform_real_distribution<double> d(std::log(lo), std::log(hi));
        return std::exp(d(rng));
    };

    // junction smoothness at delta = 1e-8 (relative to Ztilde)
    {
        const double d = 1e-8 * Zt;
        const double gap_P = std::abs(structural_pressure(Zt - d, par) -
                                      structural_pressure(Zt + d, par)) /
                             std::max(1.0, Zt);
        const double dP_gap =
            std::abs((structural_pressure(Zt, par) - structural_pressure(Zt - d, par)) / d -
                     (structural_pressure(Zt + d, par) - structural_pressure(Zt, par)) / d);
        const double gap_S = std::abs(structural_entropy(Zt - d, par) -
                                      structural_entropy(Zt + d, par));
        const double dS_gap =
            std::abs((structural_entropy(Zt, par) - structural_entropy(Zt - d, par)) / d -
                     (structural_entropy(Zt + d, par) - structural_entropy(Zt, par)) / d) *
            Zt;
        const double worst = std::max({gap_P, dP_gap, gap_S, dS_gap});
        rep.add({"C0/C1 junction gaps of P and S at delta = 1e-8 <= 1e-6",
                 worst <= 1e-6, true, worst, 1e-6, "", ""});
    }

    // monotone decay of P(Z)/Z^{5/3} to p_inf = (3/5) Ztilde^{-2/3}
    {
        const double p_inf = 0.6 * std::pow(Zt, -2.0 / 3.0);
        bool monotone = true;
        double witness_Z = 0.0;
        double prev = std::numeric_limits<double>::infinity();
        const int n = 601;
        for (int k = 0; k < n; ++k) {
            const double Z = Zt * std::pow(10.0, 6.0 * k / (n - 1));
            const double v = structural_pressure(Z, par) / std::pow(Z, 5.0 / 3.0);
            if (v > prev * (1.0 + 1e-14)) {
                monotone = false;
                witness_Z = Z;
            }
            prev = v;
        }
        const double tail =
            structural_pressure(1e6 * Zt, par) / std::pow(1e6 * Zt, 5.0 / 3.0);
        rep.add({"P(Z)/Z^{5/3} non-increasing on [Ztilde, 1e6 Ztilde]", monotone, true,
                 0.0, 0.0, monotone ? "" : state_str(witness_Z, 0.0), ""});
        rep.add({"P(Z)/Z^{5/3} within 1e-3 of p_inf at Z = 1e6 Ztilde",
                 std::abs(tail - p_inf) <= 1e-3, true, std::abs(tail - p_inf), 1e-3,
                 "", ""});
    }

    // entropy decay and sign
    {
        bool negative = true;
        double witness = 0.0;
        for (int k = 0; k < 200; ++k) {
            const double Z = Zt * log_uniform(1e-6, 1e6);
            if (!(structural_entropy_deriv(Z, par) < 0.0)) {
                negative = false;
                witness = Z;
            }
        }
        rep.add({"S'(Z) < 0 everywhere sampled", negative, true, 0.0, 0.0,
                 negative ? "" : state_str(witness, 0.0), ""});
        const double tail = structural_entropy(1e6 * Zt, par);
        rep.add({"S(1e6 Ztilde) = 1e-6", std::abs(tail - 1e-6) <= 1e-20, true, tail,
                 1e-6, "", ""});
    }

    // entropy dominated by energy: fitted constants over the sampling box
    {
        double C_fit = 0.0;
        double c_fit = std::numeric_limits<double>::infinity();
        for (int k = 0; k < samples; ++k) {
            const ThermoState q{log_uniform(1e-3, 1e3), log_uniform(1e-3, 1e3)};
            const double rs = entropy_density(q, par);
            const double re = internal_energy(q, par);
            const double den_s = par.a_eps * q.theta * q.theta * q.theta +
                                 q.rho * (1.0 + std::abs(std::log(q.rho))) +
                                 q.rho * std::max(std::log(q.theta), 0.0);
            const double den_e = par.a_eps * q.theta * q.theta * q.theta * q.theta +
                                 std::pow(q.rho, 5.0 / 3.0) + q.rho * q.theta;
            C_fit = std::max(C_fit, rs / den_s);
            c_fit = std::min(c_fit, re / den_e);
        }
        rep.add({"entropy dominated by energy: fitted C finite", std::isfinite(C_fit),
                 true, C_fit, 0.0, "", "rho s <= C (a theta^3 + rho(1+|log rho|) + rho log+ theta)"});
        rep.add({"energy coercivity: fitted c > 0", c_fit > 0.0, true, c_fit, 0.0, "",
                 "rho e >= c (a theta^4 + rho^{5/3} + rho theta)"});
    }

    // analytic pressure derivatives against central differences
    {
        double worst = 0.0;
        std::string witness;
        int tested = 0;
        while (tested < samples) {
            const ThermoState q{log_uniform(1e-2, 1e2), log_uniform(1e-2, 1e2)};
            if (std::abs(q.Z() / Zt - 1.0) < 1e-2) continue;  // stencil off the junction
            ++tested;
            const double hr = 1e-6 * q.rho;
            const double ht = 1e-6 * q.theta;
            const double p = pressure(q, par);
            const double fd_r = (pressure(ThermoState{q.rho + hr, q.theta}, par) -
                                 pressure(ThermoState{q.rho - hr, q.theta}, par)) / (2 * hr);
            const double fd_t = (pressure(ThermoState{q.rho, q.theta + ht}, par) -
                                 pressure(ThermoState{q.rho, q.theta - ht}, par)) / (2 * ht);
            const double err_r = std::abs(fd_r - dp_drho(q, par)) /
                                 (std::abs(dp_drho(q, par)) + 1e-9 * p / hr);
            const double err_t = std::abs(fd_t - dp_dtheta(q, par)) /
                                 (std::abs(dp_dtheta(q, par)) + 1e-9 * p / ht);
            if (std::max(err_r, err_t) > worst) {
                worst = std::max(err_r, err_t);
                witness = state_str(q.rho, q.theta);
            }
        }
        rep.add({"analytic dp/drho, dp/dtheta match central differences (rel 1e-6)",
                 worst <= 1e-6, true, worst, 1e-6, witness, ""});
    }

    // invert_energy round-trip on the well-conditioned box
    {
        double worst = 0.0;
        std::string witness;
        for (int k = 0; k < samples; ++k) {
            const double rho = log_uniform(1e-1, 1e1);
            const double theta = log_uniform(1e-1, 1e1);
            const double re = internal_energy(ThermoState{rho, theta}, par);
            const double back = invert_energy(rho, re, par);
            const double err = std::abs(back - theta) / theta;
            if (err > worst) {
                worst = err;
                witness = state_str(rho, theta);
            }
        }
        rep.add({"invert_energy round-trip <= 1e-10 relative", worst <= 1e-10, true,
                 worst, 1e-10, witness, ""});
    }

    // acoustic bound
    {
        bool ok = true;
        std::string witness;
        for (int k = 0; k < samples; ++k) {
            const ThermoState q{log_uniform(1e-3, 1e3), log_uniform(1e-3, 1e3)};
            const double floor = std::sqrt((5.0 / 3.0) * pressure(q, par) / q.rho);
            if (!(wave_speed_bound(q, par) >= floor)) {
                ok = false;
                witness = state_str(q.rho, q.theta);
            }
        }
        rep.add({"wave_speed_bound >= sqrt((5/3) p / rho)", ok, true, 0.0, 0.0,
                 witness, ""});
    }

    return rep;
}

} // namespace rarewave
