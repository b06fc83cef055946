#include "rarewave/rarefaction.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace rarewave {

double sound_speed(const FlowState& q) {
    return std::sqrt(5.0 * q.theta / 3.0);
}

double monatomic_entropy(const FlowState& q) {
    return 1.5 * std::log(q.theta) - std::log(q.rho);
}

RiemannEndStates connect_right_state(const FlowState& left, int family,
                                     double rho_right) {
    if (family != 1 && family != 3)
        throw WaveError("connect_right_state: family must be 1 or 3");
    if (!(left.rho > 0.0) || !(left.theta > 0.0))
        throw WaveError("connect_right_state: left state must have rho, theta > 0");
    if (!(rho_right > 0.0))
        throw WaveError("connect_right_state: rho_right must be > 0");
    if (family == 1 && rho_right > left.rho)
        throw WaveError("connect_right_state: family-1 rarefaction needs "
                        "rho_right <= rho_left (characteristic speed would decrease)");
    if (family == 3 && rho_right < left.rho)
        throw WaveError("connect_right_state: family-3 rarefaction needs "
                        "rho_right >= rho_left (characteristic speed would decrease)");

    const double s = monatomic_entropy(left);
    const double theta_right =
        std::cbrt(rho_right * rho_right) * std::exp(2.0 * s / 3.0);
    FlowState right{rho_right, theta_right, 0.0};
    const double cl = sound_speed(left);
    const double cr = sound_speed(right);
    right.u = (family == 1) ? left.u - 3.0 * (cr - cl)
                            : left.u + 3.0 * (cr - cl);
    return RiemannEndStates{left, right};
}

RarefactionWave make_rarefaction(const FlowState& left, int family,
                                 double rho_right) {
    RarefactionWave w;
    w.family = family;
    w.ends = connect_right_state(left, family, rho_right);
    w.s_const = monatomic_entropy(left);
    w.Ztilde = left.thermo().Z();

    const double cl = sound_speed(w.ends.left);
    const double cr = sound_speed(w.ends.right);
    if (family == 1) {
        w.xi_head = w.ends.left.u - cl;
        w.xi_tail = w.ends.right.u - cr;
    } else {
        w.xi_head = w.ends.left.u + cl;
        w.xi_tail = w.ends.right.u + cr;
    }
    return w;
}

FlowState evaluate(const RarefactionWave& wave, double t, double x1) {
    if (!(t > 0.0))
        throw WaveError("evaluate: t must be > 0 (the t = 0 profile is the "
                        "Riemann datum, use riemann_datum)");
    const double xi = x1 / t;
    if (xi <= wave.xi_head) return wave.ends.left;
    if (xi >= wave.xi_tail) return wave.ends.right;

    const double cl = sound_speed(wave.ends.left);
    double c, u;
    if (wave.family == 1) {
        c = (wave.ends.left.u + 3.0 * cl - xi) / 4.0;
        u = xi + c;
    } else {
        c = (xi - wave.ends.left.u + 3.0 * cl) / 4.0;
        u = xi - c;
    }
    const double theta = 3.0 * c * c / 5.0;
    const double rho = wave.Ztilde * theta * std::sqrt(theta);
    return FlowState{rho, theta, u};
}

FlowState riemann_datum(const RarefactionWave& wave, double x1) {
    return x1 < 0.0 ? wave.ends.left : wave.ends.right;
}

double domain_halfwidth(const RarefactionWave& wave, double t_final,
                        double margin) {
    if (!(t_final > 0.0)) throw WaveError("domain_halfwidth: t_final must be > 0");
    if (!(margin > 0.0)) throw WaveError("domain_halfwidth: margin must be > 0");
    const double cl = sound_speed(wave.ends.left);
    const double cr = sound_speed(wave.ends.right);
    const double v = std::max({std::abs(wave.xi_head), std::abs(wave.xi_tail),
                               std::abs(wave.ends.left.u) + cl,
                               std::abs(wave.ends.right.u) + cr});
    return (1.0 + margin) * v * t_final;
}

FlowState reflect(const FlowState& q) { return FlowState{q.rho, q.theta, -q.u}; }

RarefactionWave reflect(const RarefactionWave& wave) {
    RarefactionWave m = wave;
    m.family = (wave.family == 1) ? 3 : 1;
    m.ends.left = reflect(wave.ends.right);
    m.ends.right = reflect(wave.ends.left);
    m.xi_head = -wave.xi_tail;
    m.xi_tail = -wave.xi_head;
    return m;
}

namespace {

// Conserved triple of the Euler wave; the wave obeys the Boyle-Mariotte law so
// the EOS carries no radiative part here.
struct Conserved {
    double rho, mom, E;
};

Conserved conserved_at(const RarefactionWave& w, const EosParams& par,
                       double t, double x) {
    const FlowState q = evaluate(w, t, x);
    const double rho_e = internal_energy(q.thermo(), par);
    return Conserved{q.rho, q.rho * q.u, 0.5 * q.rho * q.u * q.u + rho_e};
}

} // namespace

EulerResidual euler_residual(const RarefactionWave& wave, double t, double h) {
    if (!(t > 0.0)) throw WaveError("euler_residual: t must be > 0");
    if (!(h > 0.0) || !(h < 0.25 * t))
        throw WaveError("euler_residual: need 0 < h < t/4");

    EosParams par;
    par.Ztilde = wave.Ztilde;
    par.a_eps = 0.0;
    par.eps = 1.0;

    // Sample xi so every point of the (t +- h, x +- h) stencil avoids the fan
    // edges.  The xi excursion of the stencil is bounded by
    // (|xi| + 1) * h / (t - h); a 4h guard band is comfortably enough here.
    const double guard =
        4.0 * h * (std::max(std::abs(wave.xi_head), std::abs(wave.xi_tail)) + 1.0) /
        (t - h);

    std::vector<double> samples;
    const double width = wave.xi_tail - wave.xi_head;
    if (width > 4.0 * guard) {
        for (int k = 0; k <= 40; ++k) {
            const double a = wave.xi_head + guard;
            const double b = wave.xi_tail - guard;
            samples.push_back(a + (b - a) * k / 40.0);
        }
    }
    samples.push_back(wave.xi_head - std::abs(wave.xi_head) - 1.0 - guard);
    samples.push_back(wave.xi_tail + std::abs(wave.xi_tail) + 1.0 + guard);

    EulerResidual r{0.0, 0.0, 0.0};
    for (double xi : samples) {
        const double x = xi * t;
        const Conserved ct0 = conserved_at(wave, par, t - h, x);
        const Conserved ct1 = conserved_at(wave, par, t + h, x);
        const FlowState ql = evaluate(wave, t, x - h);
        const FlowState qr = evaluate(wave, t, x + h);
        const double pl = pressure(ql.thermo(), par);
        const double pr = pressure(qr.thermo(), par);
        const double rel = internal_energy(ql.thermo(), par);
        const double rer = internal_energy(qr.thermo(), par);
        const double El = 0.5 * ql.rho * ql.u * ql.u + rel;
        const double Er = 0.5 * qr.rho * qr.u * qr.u + rer;

        const double d_mass = (ct1.rho - ct0.rho) / (2.0 * h) +
                              (qr.rho * qr.u - ql.rho * ql.u) / (2.0 * h);
        const double d_mom = (ct1.mom - ct0.mom) / (2.0 * h) +
                             ((qr.rho * qr.u * qr.u + pr) -
                              (ql.rho * ql.u * ql.u + pl)) / (2.0 * h);
        const double d_en = (ct1.E - ct0.E) / (2.0 * h) +
                            ((Er + pr) * qr.u - (El + pl) * ql.u) / (2.0 * h);

        r.mass = std::max(r.mass, std::abs(d_mass));
        r.momentum = std::max(r.momentum, std::abs(d_mom));
        r.energy = std::max(r.energy, std::abs(d_en));
    }
    return r;
}

} // namespace rarewave
