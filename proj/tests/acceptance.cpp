// Acceptance suite: runs every stated criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion.  Exit code is the failure count.

#include "rarewave/config.hpp"
#include "rarewave/eos_checks.hpp"
#include "rarewave/inequality.hpp"
#include "rarewave/sweep.hpp"

#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

using namespace rarewave;

namespace {

int g_failures = 0;

void record(const std::string& name, bool pass, const std::string& detail = "") {
    std::printf("[%s] %s%s%s\n", pass ? "PASS" : "FAIL", name.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

double now_seconds() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

std::string fmt(const char* f, ...) {
    char buf[256];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

// ---------------------------------------------------------------------------
// 1. inequality certification for Ztilde in {0.1, 1, 10} within 30 s
// ---------------------------------------------------------------------------
void criterion_1() {
    const double t0 = now_seconds();
    bool all = true;
    std::string detail;
    for (double Zt : {0.1, 1.0, 10.0}) {
        const auto rep = ineq::certify(ineq::IneqGrid{}, Zt);
        if (!rep.all_pass()) {
            all = false;
            for (const auto& c : rep.checks)
                if (c.hard && !c.pass)
                    detail += fmt("Ztilde=%g: %s (value %.3e); ", Zt, c.name.c_str(),
                                  c.value);
        }
    }
    const double dt = now_seconds() - t0;
    const bool in_time = dt <= 30.0;
    record("criterion 1: inequality certification (Ztilde in {0.1, 1, 10}, "
           "2001^2 grid, <= 30 s)",
           all && in_time, detail + fmt("runtime %.2f s", dt));
}

// ---------------------------------------------------------------------------
// 2. exact stationary values of F and G
// ---------------------------------------------------------------------------
void criterion_2() {
    bool ok = true;
    std::string detail;
    for (double Zt : {0.1, 1.0, 10.0}) {
        const double f0 = ineq::F(1.0, Zt, Zt);
        const auto g0 = ineq::grad_F(1.0, Zt, Zt);
        if (!(std::abs(f0) <= 1e-12 && std::abs(g0.dy) <= 1e-12 &&
              std::abs(g0.dZ) <= 1e-12)) {
            ok = false;
            detail += fmt("F/grad at Ztilde=%g: %.2e, %.2e, %.2e; ", Zt, f0, g0.dy,
                          g0.dZ);
        }
    }
    const double G1 = ineq::G(1.0);
    const double Gpp1 = ineq::G_second(1.0);
    if (!(std::abs(G1) <= 1e-14 && std::abs(Gpp1 - (-0.2)) <= 1e-14)) {
        ok = false;
        detail += fmt("G(1)=%.2e, G''(1)+1/5=%.2e; ", G1, Gpp1 + 0.2);
    }
    const double G0 = ineq::G(1e-9);
    if (!(std::abs(G0 - (-0.240054)) <= 1e-5 + 1e-9)) {
        ok = false;
        detail += fmt("G(0+)=%.9f; ", G0);
    }
    record("criterion 2: exact stationary values (F, grad F, G(1), G''(1), G(0+))",
           ok, detail);
}

// ---------------------------------------------------------------------------
// 3. EOS structure: junction gaps, monotone decay, inversion round-trip
// ---------------------------------------------------------------------------
void criterion_3() {
    bool ok = true;
    std::string detail;
    for (double Zt : {0.1, 1.0, 10.0}) {
        EosParams par;
        par.Ztilde = Zt;
        par.eps = 0.1;
        par.a_eps = 0.01;
        const auto rep = certify_eos(par);
        if (!rep.all_pass()) {
            ok = false;
            for (const auto& c : rep.checks)
                if (c.hard && !c.pass)
                    detail +=
                        fmt("Ztilde=%g: %s (value %.3e); ", Zt, c.name.c_str(), c.value);
        }
    }
    record("criterion 3: EOS structure (junction C0/C1, P/Z^{5/3} decay, "
           "invert_energy round-trip on 10^3 states)",
           ok, detail);
}

// ---------------------------------------------------------------------------
// 4. rarefaction wave fidelity
// ---------------------------------------------------------------------------
void criterion_4() {
    const auto wave = make_rarefaction(FlowState{1.0, 1.0, 1.0}, 1, 0.5);
    bool ok = true;
    std::string detail;

    // entropy constancy across random admissible connections
    std::mt19937_64 rng(0x5eedacc4ULL);
    std::uniform_real_distribution<double> d(0.05, 1.0);
    double worst_s = 0.0;
    for (int k = 0; k < 100; ++k) {
        const auto ends = connect_right_state(FlowState{1.0, 1.0, 1.0}, 1, d(rng));
        worst_s = std::max(worst_s, std::abs(monatomic_entropy(ends.right) -
                                             monatomic_entropy(ends.left)));
    }
    if (!(worst_s <= 1e-12)) {
        ok = false;
        detail += fmt("entropy drift %.2e; ", worst_s);
    }

    // du/dx >= 0 on a fine grid
    for (double t : {0.1, 0.5}) {
        double prev = -1e300;
        for (int i = 0; i <= 4000; ++i) {
            const double x = (-2.0 + 4.0 * i / 4000.0) * t;
            const double u = evaluate(wave, t, x).u;
            if (u < prev - 1e-13) {
                ok = false;
                detail += fmt("u decreasing at t=%g x=%g; ", t, x);
                break;
            }
            prev = u;
        }
    }

    // slope identity (d theta / d u)^2 = (4/15) theta, relative 1e-8 in the fan
    {
        const double t = 1.0, h = 1e-6;
        double worst = 0.0;
        for (int k = 2; k < 39; ++k) {
            const double xi = wave.xi_head + (wave.xi_tail - wave.xi_head) * k / 40.0;
            const auto qm = evaluate(wave, t, xi * t - h);
            const auto qp = evaluate(wave, t, xi * t + h);
            const auto q = evaluate(wave, t, xi * t);
            const double r = (qp.theta - qm.theta) / (qp.u - qm.u);
            worst = std::max(worst, std::abs(r * r - (4.0 / 15.0) * q.theta) /
                                        ((4.0 / 15.0) * q.theta));
        }
        if (!(worst <= 1e-8)) {
            ok = false;
            detail += fmt("slope identity rel err %.2e; ", worst);
        }
    }

    // Euler residual drops at second order under h -> h/2
    {
        const auto r1 = euler_residual(wave, 1.0, 1e-3);
        const auto r2 = euler_residual(wave, 1.0, 5e-4);
        const double worst_ratio = std::min(
            {r1.mass / r2.mass, r1.momentum / r2.momentum, r1.energy / r2.energy});
        if (!(worst_ratio >= 3.5)) {
            ok = false;
            detail += fmt("residual ratio %.2f < 3.5; ", worst_ratio);
        }
    }

    record("criterion 4: rarefaction fidelity (entropy, monotone u, slope "
           "identity, 2nd-order Euler residual)",
           ok, detail);
}

// ---------------------------------------------------------------------------
// 5. Bregman property suite on 10^4 samples
// ---------------------------------------------------------------------------
void criterion_5() {
    EosParams par;
    par.Ztilde = 1.0;
    par.eps = 0.1;
    par.a_eps = 0.01;
    const auto rep = bregman_properties_check(par, 10000);
    const bool ok = rep.all_ok();
    record("criterion 5: Bregman suite on 10^4 samples (non-negativity, "
           "indiscernibility, midpoint convexity)",
           ok,
           fmt("min E = %.2e, worst indiscernible dist = %.2e over %lld pairs, "
               "max midpoint excess = %.2e, skipped %lld",
               rep.min_energy, rep.max_indiscernible_dist,
               (long long)rep.indiscernible_pairs, rep.max_midpoint_excess,
               (long long)rep.skipped));
}

// ---------------------------------------------------------------------------
// 6. solver conservation and consistency
// ---------------------------------------------------------------------------
void criterion_6() {
    bool ok = true;
    std::string detail;

    auto wave = make_rarefaction(FlowState{1.0, 1.0, 1.0}, 1, 0.5);
    wave.T = 0.5;
    wave.L = domain_halfwidth(wave, wave.T, 0.2);

    // per-step mass accounting closed to 1e-10 relative
    {
        SolverConfig c;
        c.grid = Grid{wave.L, 400};
        c.eos = EosParams::for_eps(0.05, wave.Ztilde);
        c.boundary = BoundaryData::from_wave(wave);
        c.cfl = 0.4;
        c.t_final = 0.5;
        auto f = initialize(c, wave);
        double t = 0.0, worst = 0.0;
        auto mass = [&] {
            double m = 0.0;
            for (int i = 0; i < f.n; ++i) m += f.rho[i] * c.grid.h();
            return m;
        };
        const double m0 = mass();
        double in = 0.0, out = 0.0;
        for (int k = 0; k < 500; ++k) {
            const double dt = stable_dt(f, c);
            const double before = mass();
            const auto bf = step(f, c, t, dt);
            worst = std::max(worst, std::abs(mass() - before -
                                             (bf.left[0] - bf.right[0])) /
                                        std::max(1.0, before));
            in += bf.left[0];
            out += bf.right[0];
            t += dt;
        }
        const double closure = std::abs(mass() + out - m0 - in) / std::max(1.0, m0);
        if (!(worst <= 1e-10 && closure <= 1e-10)) {
            ok = false;
            detail += fmt("mass accounting %.2e / closure %.2e; ", worst, closure);
        }
    }

    // steady uniform state preserved to round-off over 10^3 steps
    {
        auto w0 = make_rarefaction(FlowState{1.0, 1.0, 1.0}, 1, 1.0);
        w0.T = 0.5;
        w0.L = 1.0;
        SolverConfig c;
        c.grid = Grid{w0.L, 64};
        c.eos = EosParams::for_eps(0.1, w0.Ztilde);
        c.boundary = BoundaryData::from_wave(w0);
        c.cfl = 0.4;
        c.t_final = 1e9;  // bound by steps, not time
        auto f = initialize(c, w0);
        double t = 0.0;
        for (int k = 0; k < 1000; ++k) {
            const double dt = stable_dt(f, c);
            step(f, c, t, dt);
            t += dt;
        }
        double worst = 0.0;
        for (int i = 0; i < f.n; ++i) {
            worst = std::max({worst, std::abs(f.rho[i] - 1.0), std::abs(f.u[i] - 1.0),
                              std::abs(f.theta[i] - 1.0)});
        }
        if (!(worst <= 1e-12)) {
            ok = false;
            detail += fmt("steady-state drift %.2e; ", worst);
        }
    }

    // L1(rho) refinement slope >= 0.8 (exact wave at t0 = 0.1, eps = 0, T = 0.5)
    {
        std::vector<double> errs;
        for (int N : {200, 400, 800}) {
            SolverConfig c;
            c.grid = Grid{wave.L, N};
            c.eos = EosParams::for_eps(1e-300, wave.Ztilde);
            c.eos.a_eps = 0.0;
            c.boundary = BoundaryData::from_wave(wave);
            c.cfl = 0.4;
            c.t_final = 0.5;
            c.init_mode = InitMode::ExactWaveAt;
            c.t_start = 0.1;
            auto f = initialize(c, wave);
            double t = c.t_start;
            while (t < c.t_final - 1e-13) {
                const double dt = std::min(stable_dt(f, c), c.t_final - t);
                step(f, c, t, dt);
                t += dt;
            }
            errs.push_back(l1_distances(f, c.grid, wave, c.t_final).rho);
        }
        const double s1 = std::log2(errs[0] / errs[1]);
        const double s2 = std::log2(errs[1] / errs[2]);
        if (!(s1 >= 0.8 && s2 >= 0.8)) {
            ok = false;
            detail += fmt("refinement slopes %.2f, %.2f; ", s1, s2);
        } else {
            detail += fmt("refinement slopes %.2f, %.2f; ", s1, s2);
        }
    }

    record("criterion 6: solver conservation and consistency", ok, detail);
}

// ---------------------------------------------------------------------------
// 7 + 8. vanishing-dissipation sweep and the uniform-bound probe
// ---------------------------------------------------------------------------
void criteria_7_and_8() {
    SweepConfig cfg;  // defaults are exactly the stated experiment
    cfg.out_dir = "acceptance_out";
    cfg.validate();

    const double t0 = now_seconds();
    const auto result = sweep(cfg);
    const double elapsed = now_seconds() - t0;

    bool ok = true;
    std::string detail;
    for (const auto& run : result.runs) {
        if (run.aborted) {
            ok = false;
            detail += fmt("eps=%g aborted: %s; ", run.eps, run.abort_reason.c_str());
        }
    }

    // monotone in eps at every probe time, for all four metrics
    const auto agg = result.aggregate();
    for (double tp : cfg.probes()) {
        const char* names[4] = {"E_rel_total", "L1_rho", "L1_theta", "L1_m"};
        for (int m = 0; m < 4; ++m) {
            double prev = -1.0;
            for (const auto& r : agg) {  // rows ordered by decreasing eps
                if (std::abs(r.t - tp) > 1e-12) continue;
                const double v = m == 0   ? r.E_rel_total
                                 : m == 1 ? r.L1_rho
                                 : m == 2 ? r.L1_theta
                                          : r.L1_m;
                if (prev >= 0.0 && v > prev) {
                    ok = false;
                    detail += fmt("%s not monotone at t=%g; ", names[m], tp);
                    break;
                }
                prev = v;
            }
        }
    }

    // strictly positive E_rel_total slope at every probe time
    for (const auto& f : estimate_rates(agg)) {
        if (f.metric == "E_rel_total" && !(f.slope > 0.0)) {
            ok = false;
            detail += fmt("E_rel slope %.3f at t=%g; ", f.slope, f.t);
        }
    }

    const bool in_time = elapsed <= 600.0;
    if (!in_time) detail += fmt("runtime %.0f s > 600 s; ", elapsed);
    record("criterion 7: vanishing-dissipation convergence (monotone metrics, "
           "positive E_rel rate, sweep <= 10 min)",
           ok && in_time, detail + fmt("runtime %.0f s", elapsed));

    // criterion 8 on the same sweep
    std::vector<std::pair<double, std::vector<EnergyReport>>> tr;
    for (const auto& run : result.runs)
        if (!run.aborted) tr.emplace_back(run.eps, run.trajectory);
    const auto verdict = uniform_bound_probe(tr);
    record("criterion 8: uniform-bound constant eps-stable within 10%",
           verdict.eps_stable,
           verdict.detail + (verdict.ablation_agrees
                                 ? "; ablation agrees"
                                 : "; ablation disagrees (informational)"));
}

} // namespace

int main() {
    std::printf("== acceptance suite ==\n");
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criteria_7_and_8();
    std::printf("== %s (%d failure%s) ==\n", g_failures == 0 ? "ALL PASS" : "FAILED",
                g_failures, g_failures == 1 ? "" : "s");
    return g_failures;
}
