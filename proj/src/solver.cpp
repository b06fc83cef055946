#include "rarewave/solver.hpp"

#include "rarewave/relative_energy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rarewave {

void Grid::validate() const {
    if (N < 16) throw ConfigError("Grid: N must be >= 16");
    if (!(L > 0.0)) throw ConfigError("Grid: L must be > 0");
}

BoundaryData BoundaryData::from_wave(const RarefactionWave& w) {
    return BoundaryData{w.ends.left.rho, w.ends.left.theta, w.ends.left.u,
                        w.ends.right.theta, w.ends.right.u};
}

double SolverConfig::width() const {
    if (mollify_width > 0.0) return mollify_width;
    return std::max(4.0 * grid.h(), 0.01 * grid.L);
}

void SolverConfig::validate() const {
    grid.validate();
    eos.validate();
    if (!(cfl > 0.0) || cfl > 1.0) throw ConfigError("SolverConfig: cfl must be in (0, 1]");
    if (!(boundary.u_L > 0.0))
        throw ConfigError("SolverConfig: inflow sign condition violated (u_L must be "
                          "> 0; mirror the problem with reflect() for the u_R < 0 case)");
    if (order != 1 && order != 2) throw ConfigError("SolverConfig: order must be 1 or 2");
    if (!(t_final >= t_start)) throw ConfigError("SolverConfig: t_final must be >= t_start");
    if (init_mode == InitMode::ExactWaveAt) {
        if (!(t_start > 0.0) || !(t_start < t_final || t_final == t_start))
            throw ConfigError("SolverConfig: exact-wave-at needs t_start in (0, t_final]");
    } else {
        if (t_start != 0.0)
            throw ConfigError("SolverConfig: mollified-riemann starts at t = 0");
        if (!(width() > 0.0)) throw ConfigError("SolverConfig: mollify width must be > 0");
    }
    for (double tp : probe_times) {
        if (!(tp > t_start) || tp > t_final + 1e-12)
            throw ConfigError("SolverConfig: probe times must lie in (t_start, t_final]");
    }
}

PositivityError::PositivityError(double t_, int cell_, double rho_, double rho_e_)
    : std::runtime_error([&] {
          std::ostringstream os;
          os << "positivity failure at t = " << t_ << ", cell " << cell_
             << ": rho = " << rho_ << ", internal energy = " << rho_e_;
          return os.str();
      }()),
      t(t_), cell(cell_), rho(rho_), rho_e(rho_e_) {}

void FluidField::resize(int n_cells) {
    n = n_cells;
    rho.assign(n, 0.0);
    mom.assign(n, 0.0);
    E.assign(n, 0.0);
    u.assign(n, 0.0);
    theta.assign(n, 0.0);
}

void recover_primitives(FluidField& f, const EosParams& par, double t) {
    for (int i = 0; i < f.n; ++i) {
        const double rho = f.rho[i];
        if (!(rho > 0.0) || !std::isfinite(rho))
            throw PositivityError(t, i, rho, 0.0);
        const double ui = f.mom[i] / rho;
        const double rho_e = f.E[i] - 0.5 * rho * ui * ui;
        if (!(rho_e > 0.0) || !std::isfinite(rho_e))
            throw PositivityError(t, i, rho, rho_e);
        try {
            f.theta[i] = invert_energy(rho, rho_e, par,
                                       f.theta[i] > 0.0 ? f.theta[i] : 0.0);
        } catch (const std::runtime_error&) {
            throw PositivityError(t, i, rho, rho_e);
        }
        f.u[i] = ui;
    }
}

namespace {

inline double minmod(double a, double b) {
    if (a * b <= 0.0) return 0.0;
    return std::abs(a) < std::abs(b) ? a : b;
}

void fill_state(FlowState& q, double rho, double u, double theta) {
    q.rho = rho;
    q.u = u;
    q.theta = theta;
}

// conserved state, Euler flux, and signal bound of one interface state in a
// single EOS evaluation (theta^{5/2} P(Z) and theta^4 are shared between the
// pressure and the energy)
struct InterfaceState {
    std::array<double, 3> U;
    std::array<double, 3> F;
    double signal;
};

inline InterfaceState eval_interface(const FlowState& q, const EosParams& par) {
    const double t32 = q.theta * std::sqrt(q.theta);
    const double Z = q.rho / t32;
    const double Zt = par.Ztilde;
    double P;
    if (Z <= Zt) {
        P = Z;
    } else {
        const double r = Z / Zt;
        P = Zt * (0.6 * r * std::cbrt(r * r) + 0.4);
    }
    const double th52P = q.theta * t32 * P;
    const double t4 = (q.theta * q.theta) * (q.theta * q.theta);
    const double p = th52P + par.a_eps * t4;
    const double rho_e = 1.5 * th52P + 3.0 * par.a_eps * t4;
    InterfaceState s;
    s.U = {q.rho, q.rho * q.u, 0.5 * q.rho * q.u * q.u + rho_e};
    s.F = {s.U[1], s.U[1] * q.u + p, (s.U[2] + p) * q.u};
    s.signal = std::abs(q.u) + 1.2 * std::sqrt((5.0 / 3.0) * p / q.rho);
    return s;
}

} // namespace

std::array<double, 3> convective_flux(const FlowState& left, const FlowState& right,
                                      const EosParams& par) {
    const InterfaceState L = eval_interface(left, par);
    const InterfaceState R = eval_interface(right, par);
    const double lam = std::max(L.signal, R.signal);
    return {0.5 * (L.F[0] + R.F[0]) - 0.5 * lam * (R.U[0] - L.U[0]),
            0.5 * (L.F[1] + R.F[1]) - 0.5 * lam * (R.U[1] - L.U[1]),
            0.5 * (L.F[2] + R.F[2]) - 0.5 * lam * (R.U[2] - L.U[2])};
}

std::array<double, 3> dissipative_flux(const FlowState& left, const FlowState& right,
                                       double h, const EosParams& par) {
    const double th_f = 0.5 * (left.theta + right.theta);
    const double u_f = 0.5 * (left.u + right.u);
    const double du_dx = (right.u - left.u) / h;
    const double dth_dx = (right.theta - left.theta) / h;
    const double sigma = par.eps *
        ((4.0 / 3.0) * viscosity_mu(th_f, par) + viscosity_eta(th_f, par)) * du_dx;
    const double q_heat = -par.eps * conductivity_kappa(th_f, par) * dth_dx;
    return {0.0, -sigma, -sigma * u_f + q_heat};
}

GhostStates apply_boundary(const FluidField& f, const SolverConfig& config) {
    if (!(config.boundary.u_L > 0.0))
        throw ConfigError("apply_boundary: inflow sign condition violated (u_L <= 0)");
    GhostStates g;
    g.left = FlowState{config.boundary.rho_L, config.boundary.theta_L,
                       config.boundary.u_L};
    // outflow: density is not prescribed, take the interior trace
    g.right = FlowState{f.rho[f.n - 1], config.boundary.theta_R, config.boundary.u_R};
    return g;
}

double stable_dt(const FluidField& f, const SolverConfig& config) {
    const double h = config.grid.h();
    const EosParams& par = config.eos;
    double dt = std::numeric_limits<double>::infinity();
    for (int i = 0; i < f.n; ++i) {
        const ThermoState q{f.rho[i], f.theta[i]};
        const double adv = h / (std::abs(f.u[i]) + pressure_and_speed_bound(q, par).c_bound);
        dt = std::min(dt, adv);
        const double nu_mom =
            ((4.0 / 3.0) * viscosity_mu(f.theta[i], par) + viscosity_eta(f.theta[i], par)) /
            f.rho[i];
        const double nu_th =
            conductivity_kappa(f.theta[i], par) / internal_energy_dtheta(q, par);
        const double nu = par.eps * std::max(nu_mom, nu_th);
        if (nu > 0.0) dt = std::min(dt, h * h / (2.0 * nu));
    }
    return config.cfl * dt;
}

namespace {

// scratch buffers reused across steps; thread_local so concurrent runs
// (one worker per eps) stay independent
struct Workspace {
    std::vector<double> rho, u, th;      // padded primitives, size n + 4
    std::vector<double> sr, su, sth;     // minmod slopes
    std::vector<std::array<double, 3>> flux;  // faces, size n + 1
    std::vector<double> rho0, mom0, E0;  // stage backup
};

thread_local Workspace ws;

// one evaluation of the semi-discrete right-hand side; returns boundary fluxes
StepFluxes rhs_apply(FluidField& f, const SolverConfig& config, double dt_scale,
                     std::vector<double>& drho, std::vector<double>& dmom,
                     std::vector<double>& dE) {
    const int n = f.n;
    const double h = config.grid.h();
    const EosParams& par = config.eos;

    ws.rho.resize(n + 4);
    ws.u.resize(n + 4);
    ws.th.resize(n + 4);
    ws.sr.assign(n + 4, 0.0);
    ws.su.assign(n + 4, 0.0);
    ws.sth.assign(n + 4, 0.0);
    ws.flux.resize(n + 1);

    const GhostStates g = apply_boundary(f, config);
    for (int k = 0; k < 2; ++k) {
        ws.rho[k] = g.left.rho;
        ws.u[k] = g.left.u;
        ws.th[k] = g.left.theta;
        ws.rho[n + 2 + k] = g.right.rho;
        ws.u[n + 2 + k] = g.right.u;
        ws.th[n + 2 + k] = g.right.theta;
    }
    for (int i = 0; i < n; ++i) {
        ws.rho[i + 2] = f.rho[i];
        ws.u[i + 2] = f.u[i];
        ws.th[i + 2] = f.theta[i];
    }

    if (config.order == 2) {
        for (int k = 1; k < n + 3; ++k) {
            ws.sr[k] = minmod(ws.rho[k] - ws.rho[k - 1], ws.rho[k + 1] - ws.rho[k]);
            ws.su[k] = minmod(ws.u[k] - ws.u[k - 1], ws.u[k + 1] - ws.u[k]);
            ws.sth[k] = minmod(ws.th[k] - ws.th[k - 1], ws.th[k + 1] - ws.th[k]);
        }
    }

    FlowState ql, qr, cl, cr;
    for (int j = 0; j <= n; ++j) {
        const int a = j + 1;  // padded index left of face j
        const int b = j + 2;
        fill_state(ql, ws.rho[a] + 0.5 * ws.sr[a], ws.u[a] + 0.5 * ws.su[a],
                   ws.th[a] + 0.5 * ws.sth[a]);
        fill_state(qr, ws.rho[b] - 0.5 * ws.sr[b], ws.u[b] - 0.5 * ws.su[b],
                   ws.th[b] - 0.5 * ws.sth[b]);
        auto fx = convective_flux(ql, qr, par);
        fill_state(cl, ws.rho[a], ws.u[a], ws.th[a]);
        fill_state(cr, ws.rho[b], ws.u[b], ws.th[b]);
        const auto dx = dissipative_flux(cl, cr, h, par);
        fx[0] += dx[0];
        fx[1] += dx[1];
        fx[2] += dx[2];
        ws.flux[j] = fx;
    }

    for (int i = 0; i < n; ++i) {
        drho[i] = -dt_scale * (ws.flux[i + 1][0] - ws.flux[i][0]) / h;
        dmom[i] = -dt_scale * (ws.flux[i + 1][1] - ws.flux[i][1]) / h;
        dE[i] = -dt_scale * (ws.flux[i + 1][2] - ws.flux[i][2]) / h;
    }

    StepFluxes bf;
    for (int c = 0; c < 3; ++c) {
        bf.left[c] = dt_scale * ws.flux[0][c];
        bf.right[c] = dt_scale * ws.flux[n][c];
    }
    return bf;
}

} // namespace

StepFluxes step(FluidField& f, const SolverConfig& config, double t, double dt) {
    const int n = f.n;
    std::vector<double> drho(n), dmom(n), dE(n);

    if (config.order == 1) {
        const StepFluxes bf = rhs_apply(f, config, dt, drho, dmom, dE);
        for (int i = 0; i < n; ++i) {
            f.rho[i] += drho[i];
            f.mom[i] += dmom[i];
            f.E[i] += dE[i];
        }
        recover_primitives(f, config.eos, t + dt);
        return bf;
    }

    // two-stage Heun update: the effective interface flux is the average of
    // the stage fluxes, which keeps the boundary accounting telescoping
    ws.rho0 = f.rho;
    ws.mom0 = f.mom;
    ws.E0 = f.E;

    const StepFluxes bf1 = rhs_apply(f, config, dt, drho, dmom, dE);
    for (int i = 0; i < n; ++i) {
        f.rho[i] += drho[i];
        f.mom[i] += dmom[i];
        f.E[i] += dE[i];
    }
    recover_primitives(f, config.eos, t + dt);

    const StepFluxes bf2 = rhs_apply(f, config, dt, drho, dmom, dE);
    for (int i = 0; i < n; ++i) {
        f.rho[i] = 0.5 * (ws.rho0[i] + f.rho[i] + drho[i]);
        f.mom[i] = 0.5 * (ws.mom0[i] + f.mom[i] + dmom[i]);
        f.E[i] = 0.5 * (ws.E0[i] + f.E[i] + dE[i]);
    }
    recover_primitives(f, config.eos, t + dt);

    StepFluxes bf;
    for (int c = 0; c < 3; ++c) {
        bf.left[c] = 0.5 * (bf1.left[c] + bf2.left[c]);
        bf.right[c] = 0.5 * (bf1.right[c] + bf2.right[c]);
    }
    return bf;
}

FluidField initialize(const SolverConfig& config, const RarefactionWave& wave) {
    config.validate();

    const BoundaryData wb = BoundaryData::from_wave(wave);
    const auto close = [](double a, double b) { return std::abs(a - b) <= 1e-12; };
    if (!close(wb.rho_L, config.boundary.rho_L) ||
        !close(wb.theta_L, config.boundary.theta_L) ||
        !close(wb.u_L, config.boundary.u_L) ||
        !close(wb.theta_R, config.boundary.theta_R) ||
        !close(wb.u_R, config.boundary.u_R))
        throw ConfigError("initialize: wave incompatible with boundary data");

    // the fan must stay interior over the whole run (vacuous for the
    // degenerate zero-strength wave, whose solution is a single constant state)
    if (wave.xi_tail > wave.xi_head) {
        const double reach = std::max(std::abs(wave.xi_head), std::abs(wave.xi_tail)) *
                             config.t_final;
        if (reach >= config.grid.L)
            throw ConfigError("initialize: wave reaches the boundary before t_final "
                              "(enlarge L via domain_halfwidth)");
    }

    const Grid& grid = config.grid;
    FluidField f;
    f.resize(grid.N);

    const FlowState& ql = wave.ends.left;
    const FlowState& qr = wave.ends.right;
    for (int i = 0; i < grid.N; ++i) {
        const double x = grid.x_center(i);
        FlowState q;
        if (config.init_mode == InitMode::MollifiedRiemann) {
            const double w = config.width();
            double z = (x + 0.5 * w) / w;  // transition supported on [-w/2, w/2]
            z = std::clamp(z, 0.0, 1.0);
            const double b = z * z * (3.0 - 2.0 * z);
            q.rho = ql.rho + (qr.rho - ql.rho) * b;
            q.theta = ql.theta + (qr.theta - ql.theta) * b;
            q.u = ql.u + (qr.u - ql.u) * b;
        } else {
            q = evaluate(wave, config.t_start, x);
        }
        f.rho[i] = q.rho;
        f.mom[i] = q.rho * q.u;
        f.E[i] = 0.5 * q.rho * q.u * q.u + internal_energy(q.thermo(), config.eos);
        f.u[i] = q.u;
        f.theta[i] = q.theta;
    }

    // uniform bounds: initial data stay within the end-state range
    const double rho_lo = std::min(ql.rho, qr.rho) * (1.0 - 1e-12);
    const double rho_hi = std::max(ql.rho, qr.rho) * (1.0 + 1e-12);
    const double th_lo = std::min(ql.theta, qr.theta) * (1.0 - 1e-12);
    const double th_hi = std::max(ql.theta, qr.theta) * (1.0 + 1e-12);
    for (int i = 0; i < grid.N; ++i) {
        if (f.rho[i] < rho_lo || f.rho[i] > rho_hi || f.theta[i] < th_lo ||
            f.theta[i] > th_hi)
            throw std::logic_error("initialize: data violate the uniform bounds");
    }
    return f;
}

std::vector<EnergyReport> run(const SolverConfig& config, const RarefactionWave& wave,
                              EnergyProbes& probes) {
    FluidField f = initialize(config, wave);
    double t = config.t_start;

    std::vector<EnergyReport> reports;
    reports.push_back(probes.report(f, t));

    std::vector<double> stops = config.probe_times;
    std::sort(stops.begin(), stops.end());
    if (stops.empty() || stops.back() < config.t_final)
        stops.push_back(config.t_final);

    for (double stop : stops) {
        while (t < stop - 1e-13 * std::max(1.0, stop)) {
            double dt = std::min(stable_dt(f, config), stop - t);
            step(f, config, t, dt);
            probes.on_step(f, dt);
            t += dt;
        }
        t = stop;
        const bool is_probe =
            std::find_if(config.probe_times.begin(), config.probe_times.end(),
                         [&](double tp) { return std::abs(tp - stop) <= 1e-12; }) !=
            config.probe_times.end();
        if (is_probe) reports.push_back(probes.report(f, t));
    }
    return reports;
}

} // namespace rarewave
