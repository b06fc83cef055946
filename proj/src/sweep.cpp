#include "rarewave/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

namespace rarewave {

PreparedProblem prepare_problem(const SweepConfig& cfg) {
    cfg.validate();
    PreparedProblem prob;
    prob.wave = make_rarefaction(
        FlowState{cfg.wave.rho_left, cfg.wave.theta_left, cfg.wave.u_left},
        cfg.wave.family, cfg.wave.rho_right);
    if (!(prob.wave.ends.left.u > 0.0)) {
        if (prob.wave.ends.right.u < 0.0) {
            prob.wave = reflect(prob.wave);
            prob.reflected = true;
        } else {
            throw ConfigError(
                "wave satisfies neither boundary classification (u_L > 0 or u_R < 0)");
        }
    }
    prob.wave.T = cfg.t_final;
    prob.wave.L = domain_halfwidth(prob.wave, cfg.t_final, cfg.margin);
    return prob;
}

SolverConfig solver_config_for(const SweepConfig& cfg, const PreparedProblem& prob,
                               double eps) {
    SolverConfig sc;
    sc.grid = Grid{prob.wave.L, cfg.n_cells};
    sc.eos = EosParams::for_eps(eps, prob.wave.Ztilde);
    if (cfg.a_rule == "cube") sc.eos.a_eps = eps * eps * eps;
    sc.boundary = BoundaryData::from_wave(prob.wave);
    sc.cfl = cfg.cfl;
    sc.t_final = cfg.t_final;
    sc.order = cfg.order;
    sc.init_mode = cfg.init_mode == "exact-wave-at" ? InitMode::ExactWaveAt
                                                    : InitMode::MollifiedRiemann;
    sc.mollify_width = cfg.mollify_width;
    sc.t_start = sc.init_mode == InitMode::ExactWaveAt ? cfg.t_start : 0.0;
    sc.probe_times = cfg.probes();
    sc.validate();
    return sc;
}

std::vector<EnergyReport> SweepResult::aggregate() const {
    std::vector<EnergyReport> rows;
    for (const auto& run : runs) {
        for (std::size_t k = 1; k < run.trajectory.size(); ++k)
            rows.push_back(run.trajectory[k]);
    }
    return rows;
}

SweepResult sweep(const SweepConfig& cfg) {
    SweepResult result;
    result.problem = prepare_problem(cfg);

    const std::size_t n = cfg.eps_list.size();
    result.runs.resize(n);

    auto run_one = [&](std::size_t k) {
        RunRecord& rec = result.runs[k];
        rec.eps = cfg.eps_list[k];
        try {
            const SolverConfig sc = solver_config_for(cfg, result.problem, rec.eps);
            EnergyProbes probes(result.problem.wave, sc.grid, sc.eos,
                                BallisticData::build(result.problem.wave, sc.grid,
                                                     sc.t_final));
            rec.trajectory = run(sc, result.problem.wave, probes);
        } catch (const PositivityError& e) {
            rec.aborted = true;
            rec.abort_reason = e.what();
        }
    };

    // independent runs, one worker per eps
    const unsigned workers =
        std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()),
                           static_cast<unsigned>(n));
    if (workers <= 1 || n <= 1) {
        for (std::size_t k = 0; k < n; ++k) run_one(k);
    } else {
        std::vector<std::thread> pool;
        std::atomic<std::size_t> next{0};
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t k = next.fetch_add(1); k < n; k = next.fetch_add(1))
                    run_one(k);
            });
        }
        for (auto& th : pool) th.join();
    }
    return result;
}

namespace {

const char* const kMetricNames[4] = {"E_rel_total", "L1_rho", "L1_theta", "L1_m"};

double metric_value(const EnergyReport& r, int m) {
    switch (m) {
        case 0: return r.E_rel_total;
        case 1: return r.L1_rho;
        case 2: return r.L1_theta;
        default: return r.L1_m;
    }
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

std::vector<RateFit> estimate_rates(const std::vector<EnergyReport>& table) {
    // group rows by probe time
    std::map<double, std::vector<const EnergyReport*>> by_time;
    for (const auto& r : table) by_time[r.t].push_back(&r);

    std::vector<RateFit> fits;
    for (const auto& [t, rows] : by_time) {
        for (int m = 0; m < 4; ++m) {
            RateFit f;
            f.t = t;
            f.metric = kMetricNames[m];
            std::vector<double> lx, ly;
            bool degenerate = false;
            for (const auto* r : rows) {
                const double v = metric_value(*r, m);
                if (!(v > 0.0)) {
                    degenerate = true;
                    continue;
                }
                lx.push_back(std::log(r->eps));
                ly.push_back(std::log(v));
            }
            f.points = static_cast<int>(lx.size());
            if (degenerate) f.note = "degenerate (zero) values excluded";
            if (f.points < 3) {
                if (f.note.empty()) f.note = "fewer than 3 usable points";
                fits.push_back(f);
                continue;
            }
            const int np = f.points;
            double mx = 0.0, my = 0.0;
            for (int i = 0; i < np; ++i) {
                mx += lx[i];
                my += ly[i];
            }
            mx /= np;
            my /= np;
            double sxx = 0.0, sxy = 0.0;
            for (int i = 0; i < np; ++i) {
                sxx += (lx[i] - mx) * (lx[i] - mx);
                sxy += (lx[i] - mx) * (ly[i] - my);
            }
            f.slope = sxy / sxx;
            double ss = 0.0;
            for (int i = 0; i < np; ++i) {
                const double pred = my + f.slope * (lx[i] - mx);
                ss += (ly[i] - pred) * (ly[i] - pred);
            }
            f.residual = std::sqrt(ss / np);
            fits.push_back(f);
        }
    }
    return fits;
}

void write_energy_csv(std::ostream& os, const std::vector<EnergyReport>& rows) {
    os << "eps,t,E_rel_total,L1_rho,L1_theta,L1_m,ballistic_total,dissipation_accum\n";
    for (const auto& r : rows) {
        os << num(r.eps) << ',' << num(r.t) << ',' << num(r.E_rel_total) << ','
           << num(r.L1_rho) << ',' << num(r.L1_theta) << ',' << num(r.L1_m) << ','
           << num(r.ballistic_total) << ',' << num(r.dissipation_accum) << '\n';
    }
}

std::vector<EnergyReport> read_energy_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line))
        throw ConfigError("energy CSV: missing header");
    if (line.rfind("eps,t,E_rel_total", 0) != 0)
        throw ConfigError("energy CSV: unexpected header '" + line + "'");
    std::vector<EnergyReport> rows;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string cell;
        double v[8];
        for (int c = 0; c < 8; ++c) {
            if (!std::getline(ls, cell, c == 7 ? '\n' : ','))
                throw ConfigError("energy CSV: short row '" + line + "'");
            v[c] = std::stod(cell);
        }
        EnergyReport r;
        r.eps = v[0];
        r.t = v[1];
        r.E_rel_total = v[2];
        r.L1_rho = v[3];
        r.L1_theta = v[4];
        r.L1_m = v[5];
        r.ballistic_total = v[6];
        r.dissipation_accum = v[7];
        rows.push_back(r);
    }
    return rows;
}

namespace {

std::string eps_tag(double eps) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", eps);
    return buf;
}

const char* const kReportReadme = R"(# Sweep report files

- `run_eps_<eps>.csv` — one file per eps: the run trajectory. The first row is
  the initialization report (t = start time), the remaining rows are the probe
  times. Columns: `eps,t,E_rel_total,L1_rho,L1_theta,L1_m,ballistic_total,dissipation_accum`.
- `aggregate.csv` — probe-time rows of all completed runs (initialization rows
  excluded), same columns, ordered by the eps list then by time.
- `rates.csv` — least-squares slopes of log(metric) vs log(eps) per probe time
  and metric. Columns: `t,metric,slope,residual,points,note`.
- `long.csv` — plot-ready long format of aggregate.csv.
  Columns: `eps,t,metric,value`.
- `aborts.csv` — positivity-aborted runs, if any. Columns: `eps,reason`.

All numbers use round-trip (`%.17g`) formatting; identical configurations
produce bit-identical files.
)";

} // namespace

void write_reports(const SweepResult& result, const std::vector<RateFit>& rates,
                   const std::string& dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec && !fs::is_directory(dir))
        throw ConfigError("cannot create output directory '" + dir + "'");

    auto open = [&](const std::string& name) {
        std::ofstream os(fs::path(dir) / name);
        if (!os) throw ConfigError("cannot write '" + name + "' under '" + dir + "'");
        return os;
    };

    for (const auto& run : result.runs) {
        if (run.aborted) continue;
        auto os = open("run_eps_" + eps_tag(run.eps) + ".csv");
        write_energy_csv(os, run.trajectory);
    }
    {
        auto os = open("aggregate.csv");
        write_energy_csv(os, result.aggregate());
    }
    {
        auto os = open("rates.csv");
        os << "t,metric,slope,residual,points,note\n";
        for (const auto& f : rates) {
            os << num(f.t) << ',' << f.metric << ',' << num(f.slope) << ','
               << num(f.residual) << ',' << f.points << ',' << f.note << '\n';
        }
    }
    {
        auto os = open("long.csv");
        os << "eps,t,metric,value\n";
        for (const auto& r : result.aggregate()) {
            for (int m = 0; m < 4; ++m) {
                os << num(r.eps) << ',' << num(r.t) << ',' << kMetricNames[m] << ','
                   << num(metric_value(r, m)) << '\n';
            }
            os << num(r.eps) << ',' << num(r.t) << ",ballistic_total,"
               << num(r.ballistic_total) << '\n';
            os << num(r.eps) << ',' << num(r.t) << ",dissipation_accum,"
               << num(r.dissipation_accum) << '\n';
        }
    }
    if (std::any_of(result.runs.begin(), result.runs.end(),
                    [](const RunRecord& r) { return r.aborted; })) {
        auto os = open("aborts.csv");
        os << "eps,reason\n";
        for (const auto& r : result.runs)
            if (r.aborted) os << num(r.eps) << ",\"" << r.abort_reason << "\"\n";
    }
    {
        auto os = open("README.md");
        os << kReportReadme;
    }
}

std::vector<RunRecord> read_report_runs(const std::string& dir) {
    namespace fs = std::filesystem;
    std::vector<RunRecord> runs;
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        const std::string name = entry.path().filename().string();
        if (name.rfind("run_eps_", 0) == 0 && entry.path().extension() == ".csv")
            files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& p : files) {
        std::ifstream is(p);
        if (!is) throw ConfigError("cannot read '" + p.string() + "'");
        RunRecord rec;
        rec.trajectory = read_energy_csv(is);
        if (!rec.trajectory.empty()) rec.eps = rec.trajectory.front().eps;
        runs.push_back(std::move(rec));
    }
    // decreasing eps, matching sweep order
    std::sort(runs.begin(), runs.end(),
              [](const RunRecord& a, const RunRecord& b) { return a.eps > b.eps; });
    if (runs.empty())
        throw ConfigError("no run_eps_*.csv files under '" + dir + "'");
    return runs;
}

} // namespace rarewave
