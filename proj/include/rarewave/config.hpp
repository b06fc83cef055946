#pragma once

#include "rarewave/solver.hpp"

#include <string>
#include <vector>

namespace rarewave {

struct WaveSpec {
    double rho_left = 1.0;
    double theta_left = 1.0;
    double u_left = 1.0;
    double rho_right = 0.5;
    int family = 1;
};

/// Configuration of the eps-sweep experiment; INI sections [wave], [grid],
/// [sweep], [output].
struct SweepConfig {
    WaveSpec wave;

    // [grid]
    int n_cells = 1600;
    double cfl = 0.8;  ///< diffusion-limited runs sit at 0.8 of the explicit
                       ///< stability bound (stable_dt already carries the 1/2)
    double t_final = 0.5;
    double margin = 0.2;
    int order = 2;

    // [sweep]
    std::vector<double> eps_list{0.2, 0.1, 0.05, 0.025};
    std::string a_rule = "square";  ///< a(eps): square | cube
    std::vector<double> probe_times;  ///< empty = default {0.2, 0.4, 0.6, 0.8} * T
    std::string init_mode = "mollified-riemann";  ///< or exact-wave-at
    double mollify_width = 0.0;  ///< 0 = auto max(4h, 0.01 L)
    double t_start = 0.1;        ///< exact-wave-at initial time

    // [output]
    std::string out_dir = "out";

    double a_of(double eps) const;
    std::vector<double> probes() const;  ///< defaults resolved
    void validate() const;               ///< throws ConfigError naming the key
    std::vector<std::string> warnings() const;  ///< soft advisories (h vs eps)
};

/// Parses the INI file; errors name the file, line, key, and the violated
/// constraint.
SweepConfig parse_config(const std::string& path);
SweepConfig parse_config_text(const std::string& text, const std::string& name);

/// Canonical emission: re-parsing the returned text reproduces the config
/// (bit-exactly at the default precision 17; 6 reads better in help text).
std::string canonical_config(const SweepConfig& c, int precision = 17);

} // namespace rarewave
