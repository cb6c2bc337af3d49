#include "dimerfl/params.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dimerfl/errors.hpp"

namespace dimerfl {

CouplingRates coupling_from_distance(double kr12, double gamma1, double gamma2,
                                     double mu_dot_r, CouplingMode mode) {
    if (!(kr12 > 0.0))
        throw DomainError("coupling_from_distance: kr12 must be > 0 (near-field limit is singular)");
    if (!(gamma1 > 0.0) || !(gamma2 > 0.0))
        throw DomainError("coupling_from_distance: decay rates must be > 0");
    if (std::abs(mu_dot_r) > 1.0)
        throw DomainError("coupling_from_distance: |mu.r| must be <= 1");

    const double root = std::sqrt(gamma1 * gamma2);
    const double perp = 1.0 - mu_dot_r * mu_dot_r;        // transverse dipole weight
    const double axial = 1.0 - 3.0 * mu_dot_r * mu_dot_r;

    switch (mode) {
        case CouplingMode::NearField:
            return {0.75 * root * axial / (kr12 * kr12 * kr12), root};
        case CouplingMode::Exact: {
            const double x = kr12;
            const double c = std::cos(x), s = std::sin(x);
            const double j = 0.75 * root * (-perp * c / x + axial * (s / (x * x) + c / (x * x * x)));
            const double g = 1.5 * root * (perp * s / x + axial * (c / (x * x) - s / (x * x * x)));
            return {j, g};
        }
        case CouplingMode::Direct:
            break;
    }
    throw DomainError("coupling_from_distance: mode must be nearfield or exact");
}

double mixing_angle(double delta_emit, double j_coupling) {
    if (delta_emit == 0.0 && j_coupling == 0.0)
        throw DegenerateGeometryError(
            "mixing_angle: delta_emit = j_coupling = 0 leaves R = 0 and beta undefined");
    return std::atan2(delta_emit, j_coupling);
}

JDelta params_from_beta(double big_r, double beta) {
    if (!(big_r > 0.0)) throw DomainError("params_from_beta: big_r must be > 0");
    if (beta < 0.0 || beta > M_PI / 2)
        throw DomainError("params_from_beta: beta must lie in [0, pi/2]");
    return {big_r * std::cos(beta), big_r * std::sin(beta)};
}

SystemParams SystemParams::from_j_delta(double j_coupling, double delta_emit) {
    SystemParams p;
    p.j_coupling = j_coupling;
    p.delta_emit = delta_emit;
    p.big_r = std::hypot(j_coupling, delta_emit);
    p.beta = mixing_angle(delta_emit, j_coupling);
    p.mode = CouplingMode::Direct;
    return p;
}

SystemParams SystemParams::from_kr12(double kr12, double delta_emit, CouplingMode mode,
                                     double mu_dot_r) {
    SystemParams p;
    const auto c = coupling_from_distance(kr12, 1.0, 1.0, mu_dot_r, mode);  // gamma = 1 units
    p.j_coupling = c.j_coupling;
    p.gamma12 = c.gamma12;
    p.delta_emit = delta_emit;
    p.kr12 = kr12;
    p.mu_dot_r = mu_dot_r;
    p.mode = mode;
    p.big_r = std::hypot(p.j_coupling, delta_emit);
    p.beta = mixing_angle(delta_emit, p.j_coupling);
    return p;
}

SystemParams SystemParams::from_beta(double big_r, double beta) {
    SystemParams p;
    const auto jd = params_from_beta(big_r, beta);
    p.j_coupling = jd.j_coupling;
    p.delta_emit = jd.delta_emit;
    p.big_r = big_r;
    p.beta = beta;
    p.mode = CouplingMode::Direct;
    return p;
}

SystemParams& SystemParams::with_drive(double omega, double delta) {
    omega_drive = omega;
    delta_laser = delta;
    return *this;
}

SystemParams& SystemParams::with_rates(double g, double g12) {
    gamma = g;
    gamma12 = g12;
    return *this;
}

SystemParams& SystemParams::with_detector(double linewidth) {
    det_linewidth = linewidth;
    return *this;
}

SystemParams SystemParams::at_kr12(double new_kr12) const {
    if (mode == CouplingMode::Direct)
        throw ConfigError("at_kr12: parameters are not distance-based (no kr12 -> J rule)");
    SystemParams p = *this;
    // Only the kr12 -> J -> (R, beta) chain is re-evaluated; gamma12 keeps its
    // configured value (the near-field gamma12 is kr12-independent anyway).
    const auto c = coupling_from_distance(new_kr12, gamma, gamma, mu_dot_r, mode);
    p.j_coupling = c.j_coupling;
    p.kr12 = new_kr12;
    p.big_r = std::hypot(p.j_coupling, delta_emit);
    p.beta = mixing_angle(delta_emit, p.j_coupling);
    return p;
}

void SystemParams::validate() const {
    if (!(gamma > 0.0)) throw DomainError("SystemParams: gamma must be > 0");
    if (std::abs(gamma12) > gamma)
        throw DomainError("SystemParams: |gamma12| <= gamma is required (Cauchy-Schwarz)");
    if (std::abs(mu_dot_r) > 1.0) throw DomainError("SystemParams: |mu_dot_r| must be <= 1");
    if (det_linewidth < 0.0) throw DomainError("SystemParams: det_linewidth must be >= 0");
    if (delta_emit == 0.0 && j_coupling == 0.0)
        throw DegenerateGeometryError("SystemParams: delta_emit = j_coupling = 0 (R = 0)");
}

std::vector<std::string> SystemParams::validity_warnings() const {
    std::vector<std::string> w;
    if (big_r > 0.0 && omega_drive / big_r > 0.3)
        w.push_back("omega/R > 0.3: perturbative closed forms degrade at strong drive");
    if (big_r > 0.0 && gamma / big_r > 0.1)
        w.push_back("gamma/R > 0.1: one-photon resonances are not well resolved");
    return w;
}

std::map<std::string, std::string> parse_config_text(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r\n");
            if (b == std::string::npos) return std::string();
            const auto e = s.find_last_not_of(" \t\r\n");
            return s.substr(b, e - b + 1);
        };
        if (trim(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ConfigError("config line " + std::to_string(lineno) + ": empty key or value");
        if (kv.count(key))
            throw ConfigError("config: duplicate key '" + key + "'");
        kv[key] = val;
    }
    return kv;
}

namespace {

double to_double(const std::string& key, const std::string& val) {
    try {
        size_t n = 0;
        const double x = std::stod(val, &n);
        if (n != val.size()) throw std::invalid_argument(val);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' has non-numeric value '" + val + "'");
    }
}

}  // namespace

SystemParams params_from_config(const std::map<std::string, std::string>& kv) {
    auto get = [&](const char* key) -> std::optional<double> {
        const auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        return to_double(key, it->second);
    };

    for (const auto& [key, val] : kv) {
        static const char* known[] = {"gamma",   "gamma12",    "delta_emit", "kr12",
                                      "beta",    "big_r",      "j_coupling", "omega",
                                      "delta_laser", "det_linewidth", "geometry_mode", "mu_dot_r"};
        if (std::find_if(std::begin(known), std::end(known),
                         [&](const char* k) { return key == k; }) == std::end(known))
            throw ConfigError("config: unknown key '" + key + "'");
    }

    CouplingMode mode = CouplingMode::NearField;
    if (auto it = kv.find("geometry_mode"); it != kv.end()) {
        if (it->second == "exact")
            mode = CouplingMode::Exact;
        else if (it->second == "nearfield")
            mode = CouplingMode::NearField;
        else
            throw ConfigError("config: geometry_mode must be 'exact' or 'nearfield'");
    }

    const auto j = get("j_coupling");
    const auto de = get("delta_emit");
    const auto kr = get("kr12");
    const auto rr = get("big_r");
    const auto be = get("beta");

    const bool t_j = j.has_value();
    const bool t_kr = kr.has_value();
    const bool t_rb = rr.has_value() || be.has_value();
    if (int(t_j) + int(t_kr) + int(t_rb) > 1)
        throw ConfigError("config: supply exactly one of (j_coupling, delta_emit), "
                          "(kr12, delta_emit) or (big_r, beta)");

    const double gamma = get("gamma").value_or(1.0);  // the rate unit; all rates scale with it
    SystemParams p;
    const double mu = get("mu_dot_r").value_or(0.0);
    if (t_j) {
        p = SystemParams::from_j_delta(*j, de.value_or(0.0));
    } else if (t_kr) {
        const auto c = coupling_from_distance(*kr, gamma, gamma, mu, mode);
        p = SystemParams::from_j_delta(c.j_coupling, de.value_or(0.0));
        p.gamma12 = c.gamma12;
        p.kr12 = *kr;
        p.mode = mode;
    } else if (t_rb) {
        if (!be) throw ConfigError("config: big_r given without beta");
        // A bare mixing angle defaults to the reference splitting R = 1000 gamma.
        p = SystemParams::from_beta(rr.value_or(1000.0 * gamma), *be);
        if (de) throw ConfigError("config: delta_emit conflicts with the (big_r, beta) pair");
    } else {
        throw ConfigError("config: no parameter pair given; supply (j_coupling, delta_emit), "
                          "(kr12 [, delta_emit]) or (big_r, beta)");
    }
    p.mu_dot_r = mu;

    p.gamma = gamma;
    if (auto g12 = get("gamma12")) {
        p.gamma12 = *g12;
    } else if (!t_kr) {
        p.gamma12 = 0.999 * gamma;  // slightly below gamma so no state is perfectly dark
    }
    p.omega_drive = get("omega").value_or(0.0);
    p.delta_laser = get("delta_laser").value_or(0.0);
    p.det_linewidth = get("det_linewidth").value_or(0.0);
    p.validate();
    return p;
}

}  // namespace dimerfl
