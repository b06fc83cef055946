#include "rarewave/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace rarewave {

double SweepConfig::a_of(double eps) const {
    if (a_rule == "square") return eps * eps;
    if (a_rule == "cube") return eps * eps * eps;
    throw ConfigError("a_rule must be 'square' or 'cube', got '" + a_rule + "'");
}

std::vector<double> SweepConfig::probes() const {
    if (!probe_times.empty()) return probe_times;
    return {0.2 * t_final, 0.4 * t_final, 0.6 * t_final, 0.8 * t_final};
}

void SweepConfig::validate() const {
    auto fail = [](const std::string& msg) { throw ConfigError("config: " + msg); };

    if (!(wave.rho_left > 0.0)) fail("[wave] rho_left must be > 0");
    if (!(wave.theta_left > 0.0)) fail("[wave] theta_left must be > 0");
    if (!(wave.rho_right > 0.0)) fail("[wave] rho_right must be > 0");
    if (wave.family != 1 && wave.family != 3) fail("[wave] family must be 1 or 3");
    if (wave.family == 1 && wave.rho_right > wave.rho_left)
        fail("[wave] family-1 rarefaction needs rho_right <= rho_left");
    if (wave.family == 3 && wave.rho_right < wave.rho_left)
        fail("[wave] family-3 rarefaction needs rho_right >= rho_left");

    if (n_cells < 16) fail("[grid] n_cells must be >= 16");
    if (!(cfl > 0.0) || cfl > 1.0) fail("[grid] cfl must be in (0, 1]");
    if (!(t_final > 0.0)) fail("[grid] t_final must be > 0");
    if (!(margin > 0.0)) fail("[grid] margin must be > 0");
    if (order != 1 && order != 2) fail("[grid] order must be 1 or 2");

    if (eps_list.empty()) fail("[sweep] eps_list must not be empty");
    for (std::size_t i = 0; i < eps_list.size(); ++i) {
        if (!(eps_list[i] > 0.0)) fail("[sweep] eps_list entries must be > 0");
        if (i > 0 && !(eps_list[i] < eps_list[i - 1])) {
            char buf[160];
            std::snprintf(buf, sizeof buf,
                          "[sweep] eps_list must be strictly decreasing "
                          "(eps_list[%zu] = %g >= eps_list[%zu] = %g)",
                          i, eps_list[i], i - 1, eps_list[i - 1]);
            fail(buf);
        }
    }
    // the radiation coefficient must vanish faster than eps along the list
    for (std::size_t i = 1; i < eps_list.size(); ++i) {
        if (!(a_of(eps_list[i]) / eps_list[i] < a_of(eps_list[i - 1]) / eps_list[i - 1]))
            fail("[sweep] a(eps)/eps must decrease along the eps list");
    }
    (void)a_of(eps_list.front());

    if (init_mode != "mollified-riemann" && init_mode != "exact-wave-at")
        fail("[sweep] init_mode must be 'mollified-riemann' or 'exact-wave-at'");
    const double start = (init_mode == "exact-wave-at") ? t_start : 0.0;
    if (init_mode == "exact-wave-at" && !(t_start > 0.0 && t_start < t_final))
        fail("[sweep] exact-wave-at needs t_start in (0, t_final)");
    if (mollify_width < 0.0) fail("[sweep] mollify_width must be >= 0 (0 = auto)");
    for (double tp : probes()) {
        if (!(tp > start) || tp > t_final + 1e-12) {
            char buf[128];
            std::snprintf(buf, sizeof buf,
                          "[sweep] probe time %g must lie in (%g, t_final = %g]", tp,
                          start, t_final);
            fail(buf);
        }
    }
    if (out_dir.empty()) fail("[output] dir must not be empty");
}

std::vector<std::string> SweepConfig::warnings() const {
    std::vector<std::string> w;
    // resolving the dissipation layer wants h <= min(eps)/4 on a fixed grid
    const auto wv = make_rarefaction(
        FlowState{wave.rho_left, wave.theta_left, wave.u_left}, wave.family,
        wave.rho_right);
    const double L = domain_halfwidth(wv, t_final, margin);
    const double h = 2.0 * L / n_cells;
    const double min_eps = eps_list.back();
    if (h > min_eps / 4.0) {
        char buf[192];
        std::snprintf(buf, sizeof buf,
                      "grid spacing h = %.3g exceeds min(eps)/4 = %.3g; the smallest "
                      "dissipation layers are under-resolved at n_cells = %d",
                      h, min_eps / 4.0, n_cells);
        w.push_back(buf);
    }
    return w;
}

namespace {

struct KeyValue {
    std::string section;
    std::string key;
    std::string value;
    int line;
};

[[noreturn]] void parse_fail(const std::string& name, int line, const std::string& msg) {
    std::ostringstream os;
    os << name << ":" << line << ": " << msg;
    throw ConfigError(os.str());
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double to_double(const KeyValue& kv, const std::string& name) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(kv.value, &pos);
        if (pos != kv.value.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        parse_fail(name, kv.line,
                   "[" + kv.section + "] " + kv.key + ": expected a number, got '" +
                       kv.value + "'");
    }
}

int to_int(const KeyValue& kv, const std::string& name) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(kv.value, &pos);
        if (pos != kv.value.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        parse_fail(name, kv.line,
                   "[" + kv.section + "] " + kv.key + ": expected an integer, got '" +
                       kv.value + "'");
    }
}

std::vector<double> to_list(const KeyValue& kv, const std::string& name) {
    std::vector<double> out;
    std::string item;
    std::istringstream is(kv.value);
    while (is >> item) {
        if (!item.empty() && item.back() == ',') item.pop_back();
        if (item.empty()) continue;
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(item, &pos));
            if (pos != item.size()) throw std::invalid_argument("");
        } catch (...) {
            parse_fail(name, kv.line,
                       "[" + kv.section + "] " + kv.key + ": expected numbers, got '" +
                           item + "'");
        }
    }
    if (out.empty())
        parse_fail(name, kv.line, "[" + kv.section + "] " + kv.key + ": empty list");
    return out;
}

} // namespace

SweepConfig parse_config_text(const std::string& text, const std::string& name) {
    SweepConfig cfg;
    std::istringstream is(text);
    std::string raw;
    std::string section;
    int line = 0;

    while (std::getline(is, raw)) {
        ++line;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string s = trim(raw);
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']') parse_fail(name, line, "unterminated section header");
            section = trim(s.substr(1, s.size() - 2));
            if (section != "wave" && section != "grid" && section != "sweep" &&
                section != "output")
                parse_fail(name, line, "unknown section [" + section + "]");
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            parse_fail(name, line, "expected 'key = value', got '" + s + "'");
        if (section.empty()) parse_fail(name, line, "key outside any section");
        KeyValue kv{section, trim(s.substr(0, eq)), trim(s.substr(eq + 1)), line};
        if (kv.key.empty()) parse_fail(name, line, "empty key");

        if (section == "wave") {
            if (kv.key == "rho_left") cfg.wave.rho_left = to_double(kv, name);
            else if (kv.key == "theta_left") cfg.wave.theta_left = to_double(kv, name);
            else if (kv.key == "u_left") cfg.wave.u_left = to_double(kv, name);
            else if (kv.key == "rho_right") cfg.wave.rho_right = to_double(kv, name);
            else if (kv.key == "family") cfg.wave.family = to_int(kv, name);
            else parse_fail(name, line, "unknown key '" + kv.key + "' in [wave]");
        } else if (section == "grid") {
            if (kv.key == "n_cells") cfg.n_cells = to_int(kv, name);
            else if (kv.key == "cfl") cfg.cfl = to_double(kv, name);
            else if (kv.key == "t_final") cfg.t_final = to_double(kv, name);
            else if (kv.key == "margin") cfg.margin = to_double(kv, name);
            else if (kv.key == "order") cfg.order = to_int(kv, name);
            else parse_fail(name, line, "unknown key '" + kv.key + "' in [grid]");
        } else if (section == "sweep") {
            if (kv.key == "eps_list") cfg.eps_list = to_list(kv, name);
            else if (kv.key == "a_rule") cfg.a_rule = kv.value;
            else if (kv.key == "probe_times") cfg.probe_times = to_list(kv, name);
            else if (kv.key == "init_mode") cfg.init_mode = kv.value;
            else if (kv.key == "mollify_width") cfg.mollify_width = to_double(kv, name);
            else if (kv.key == "t_start") cfg.t_start = to_double(kv, name);
            else parse_fail(name, line, "unknown key '" + kv.key + "' in [sweep]");
        } else {  // output
            if (kv.key == "dir") cfg.out_dir = kv.value;
            else parse_fail(name, line, "unknown key '" + kv.key + "' in [output]");
        }
    }
    cfg.validate();
    return cfg;
}

SweepConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

std::string canonical_config(const SweepConfig& c, int precision) {
    auto num = [&](double v) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.*g", precision, v);
        return std::string(buf);
    };
    std::ostringstream os;
    os << "[wave]\n";
    os << "rho_left = " << num(c.wave.rho_left) << "\n";
    os << "theta_left = " << num(c.wave.theta_left) << "\n";
    os << "u_left = " << num(c.wave.u_left) << "\n";
    os << "rho_right = " << num(c.wave.rho_right) << "\n";
    os << "family = " << c.wave.family << "\n\n";
    os << "[grid]\n";
    os << "n_cells = " << c.n_cells << "\n";
    os << "cfl = " << num(c.cfl) << "\n";
    os << "t_final = " << num(c.t_final) << "\n";
    os << "margin = " << num(c.margin) << "\n";
    os << "order = " << c.order << "\n\n";
    os << "[sweep]\n";
    os << "eps_list =";
    for (double e : c.eps_list) os << ' ' << num(e);
    os << "\n";
    os << "a_rule = " << c.a_rule << "\n";
    os << "probe_times =";
    for (double t : c.probes()) os << ' ' << num(t);
    os << "\n";
    os << "init_mode = " << c.init_mode << "\n";
    os << "mollify_width = " << num(c.mollify_width) << "\n";
    os << "t_start = " << num(c.t_start) << "\n\n";
    os << "[output]\n";
    os << "dir = " << c.out_dir << "\n";
    return os.str();
}

} // namespace rarewave
