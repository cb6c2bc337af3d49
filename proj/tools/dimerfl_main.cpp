#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "dimerfl/errors.hpp"
#include "dimerfl/estimation.hpp"
#include "dimerfl/io.hpp"
#include "dimerfl/lindblad.hpp"
#include "dimerfl/observables.hpp"
#include "dimerfl/spectrum.hpp"
#include "dimerfl/sweep.hpp"
#include "reproduce.hpp"
#include "svg_plot.hpp"

namespace {

using namespace dimerfl;

/// Rate values accept an 'R' suffix meaning "units of the Rabi splitting",
/// e.g. --omega 1.0R. Plain numbers are in units of gamma.
double parse_rate(const std::string& text, double big_r, const std::string& what) {
    std::string t = text;
    double scale = 1.0;
    if (!t.empty() && (t.back() == 'R' || t.back() == 'r')) {
        t.pop_back();
        scale = big_r;
    }
    try {
        std::size_t n = 0;
        const double v = std::stod(t, &n);
        if (n != t.size()) throw std::invalid_argument(t);
        return v * scale;
    } catch (const std::exception&) {
        throw ConfigError("cannot parse " + what + " value '" + text + "'");
    }
}

struct GridSpec {
    double lo = 0.0, hi = 0.0;
    std::size_t n = 0;
    bool set = false;
};

GridSpec parse_grid(const std::string& text, double big_r) {
    GridSpec g;
    if (text.empty()) return g;
    std::istringstream in(text);
    std::string a, b, c;
    if (!std::getline(in, a, ':') || !std::getline(in, b, ':') || !std::getline(in, c))
        throw ConfigError("--grid expects min:max:n");
    g.lo = parse_rate(a, big_r, "grid min");
    g.hi = parse_rate(b, big_r, "grid max");
    const long n = std::stol(c);
    if (n < 2) throw ConfigError("--grid needs n >= 2");
    g.n = std::size_t(n);
    g.set = true;
    return g;
}

/// Flag values (possibly R-suffixed) merged over an optional config file,
/// resolved into SystemParams. The parameter pair itself must be plain
/// numbers since it defines R.
struct ParamCli {
    std::map<std::string, std::string> kv;

    void add(CLI::App* cmd) {
        auto opt = [&](const char* flag, const char* key, const char* help) {
            cmd->add_option_function<std::string>(
                flag, [this, key](const std::string& v) { kv[key] = v; }, help);
        };
        opt("--gamma", "gamma", "local decay rate (the rate unit; default 1)");
        opt("--gamma12", "gamma12", "collective decay rate [gamma units]");
        opt("--delta-emit", "delta_emit", "half emitter splitting");
        opt("--kr12", "kr12", "normalized emitter separation");
        opt("--beta", "beta", "mixing angle in [0, pi/2]");
        opt("--big-r", "big_r", "Rabi splitting R");
        opt("--j-coupling", "j_coupling", "coherent coupling J");
        opt("--omega", "omega", "drive amplitude (accepts R suffix)");
        opt("--delta", "delta_laser", "laser detuning (accepts R suffix)");
        opt("--det-linewidth", "det_linewidth", "sensor linewidth Gamma (accepts R suffix)");
        opt("--mu-dot-r", "mu_dot_r", "dipole-separation alignment in [-1, 1]");
        opt("--geometry-mode", "geometry_mode", "kr12 coupling rule: nearfield|exact");
        cmd->add_option("--config", config_path, "key=value parameter file");
    }

    SystemParams resolve() const {
        std::map<std::string, std::string> merged;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw ConfigError("cannot read config file '" + config_path + "'");
            std::stringstream ss;
            ss << in.rdbuf();
            merged = parse_config_text(ss.str());
        }
        for (const auto& [k, v] : kv) merged[k] = v;  // flags win over the file

        // First pass: the parameter pair and gamma fix the scale R.
        std::map<std::string, std::string> head;
        for (const char* k : {"gamma", "gamma12", "delta_emit", "kr12", "beta", "big_r",
                              "j_coupling", "geometry_mode", "mu_dot_r"})
            if (auto it = merged.find(k); it != merged.end()) head[k] = it->second;
        SystemParams p = params_from_config(head);

        // Second pass: R-suffixed drive/detuning/linewidth values.
        if (auto it = merged.find("omega"); it != merged.end())
            p.omega_drive = parse_rate(it->second, p.big_r, "omega");
        if (auto it = merged.find("delta_laser"); it != merged.end())
            p.delta_laser = parse_rate(it->second, p.big_r, "delta_laser");
        if (auto it = merged.find("det_linewidth"); it != merged.end())
            p.det_linewidth = parse_rate(it->second, p.big_r, "det_linewidth");
        p.validate();
        return p;
    }

    std::string config_path;
};

std::ostream& open_out(std::ofstream& file, const std::string& path) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file) throw ConfigError("cannot write output file '" + path + "'");
    return file;
}

void print_warnings(const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

void emit_plot(const std::string& out, const std::string& svg) {
    namespace fs = std::filesystem;
    if (out.empty() || out == "-") return;
    fs::path p(out);
    p.replace_extension(".svg");
    std::ofstream os(p);
    os << svg;
    std::cerr << "wrote " << p.string() << "\n";
}

int run(int argc, char** argv) {
    CLI::App app{"coupled-emitter fluorescence: steady states, spectra and "
                 "distance estimation"};
    app.require_subcommand(1);

    std::string out, format = "csv", gridtext, sweep_axis = "delta", panel, figure;
    unsigned jobs = 1;
    bool plot = false;

    auto add_common = [&](CLI::App* cmd, ParamCli& pc) {
        pc.add(cmd);
        cmd->add_option("--out", out, "output path (default stdout)");
        cmd->add_option("--format", format, "csv|json")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--jobs", jobs, "worker threads for sweeps")->check(CLI::Range(1, 256));
        cmd->add_flag("--plot", plot, "also render a static SVG next to --out");
    };

    ParamCli pc_steady, pc_obs, pc_spec, pc_lad, pc_fish;

    auto* c_steady = app.add_subcommand("steady", "exact steady state of the master equation");
    add_common(c_steady, pc_steady);
    bool collective = false;
    c_steady->add_flag("--collective", collective, "print in the collective basis");

    auto* c_obs = app.add_subcommand("observables",
                                     "intensity, g2(0) and two-photon visibility sweeps");
    add_common(c_obs, pc_obs);
    c_obs->add_option("--grid", gridtext, "sweep grid min:max:n (R suffix allowed)");
    c_obs->add_option("--sweep", sweep_axis, "sweep axis: delta|omega")
        ->check(CLI::IsMember({"delta", "omega"}));

    auto* c_spec = app.add_subcommand("spectrum", "resonance-fluorescence spectrum components");
    add_common(c_spec, pc_spec);
    c_spec->add_option("--grid", gridtext, "frequency grid min:max:n (R suffix allowed)");

    auto* c_lad = app.add_subcommand("ladder",
                                     "dressed-state energies and sideband frequencies");
    add_common(c_lad, pc_lad);
    bool strong = false;
    c_lad->add_flag("--strong", strong, "include the numerically exact eigensystem");

    auto* c_fish = app.add_subcommand("fisher",
                                      "Fisher information of spectral photon counting for kr12");
    add_common(c_fish, pc_fish);
    c_fish->add_option("--grid", gridtext, "frequency grid min:max:n (R suffix allowed)");
    std::string map1, map2;
    c_fish->add_option("--map1", map1, "map axis 1: omega|delta|kr12:lo:hi:n[:log]");
    c_fish->add_option("--map2", map2, "map axis 2: same syntax");
    double fd_step_rel = 1e-4;
    c_fish->add_option("--fd-step-rel", fd_step_rel, "finite-difference step / kr12");

    auto* c_rep = app.add_subcommand("reproduce", "emit a bundled reference figure dataset");
    c_rep->add_option("figure", figure, "fig3|fig4|fig5|fig6|fig7")->required();
    c_rep->add_option("--panel", panel, "panel tag (default: all panels)");
    c_rep->add_option("--out", out, "output directory (default .)");
    c_rep->add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1, 256));
    c_rep->add_flag("--plot", plot, "also render SVG plots");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // bad usage is a config error
    }

    std::ofstream file;
    if (c_steady->parsed()) {
        auto p = pc_steady.resolve();
        print_warnings(p.validity_warnings());
        auto rho = steady_state(build_liouvillian(p));
        if (collective) rho = to_collective_basis(rho, p.beta);
        auto& os = open_out(file, out);
        const char* names[2][4] = {{"gg", "ge", "eg", "ee"}, {"gg", "A", "S", "ee"}};
        const auto& nm = names[collective ? 1 : 0];
        if (format == "json") {
            std::ostringstream js;
            js << "{\n";
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c)
                    js << "  \"" << nm[r] << "," << nm[c] << "\": ["
                       << format_number(rho.m(r, c).real()) << ", "
                       << format_number(rho.m(r, c).imag()) << "]"
                       << ((r == 3 && c == 3) ? "\n" : ",\n");
            js << "}\n";
            os << js.str();
        } else {
            os << kCsvHeader << "\nrow,col,re,im\n";
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c)
                    os << nm[r] << ',' << nm[c] << ',' << format_number(rho.m(r, c).real())
                       << ',' << format_number(rho.m(r, c).imag()) << '\n';
        }
        return 0;
    }

    if (c_obs->parsed()) {
        auto p = pc_obs.resolve();
        print_warnings(p.validity_warnings());
        auto grid = parse_grid(gridtext, p.big_r);
        // default sweeps: linear in detuning, geometric in drive amplitude;
        // an explicit --grid is always linear
        bool log_spaced = false;
        if (!grid.set) {
            if (sweep_axis == "delta") {
                grid = {-1.5 * p.big_r, 1.5 * p.big_r, 301, true};
            } else {
                grid = {0.01 * p.gamma, 0.3 * p.big_r, 121, true};
                log_spaced = true;
            }
        }
        const auto xs = log_spaced
                            ? AxisSpec{SweepAxis::Omega, grid.lo, grid.hi, grid.n, true}.values()
                            : linear_grid(grid.lo, grid.hi, grid.n);
        std::vector<std::vector<double>> rows(xs.size());
        parallel_for(xs.size(), jobs, [&](std::size_t i) {
            auto q = p;
            (sweep_axis == "delta" ? q.delta_laser : q.omega_drive) = xs[i];
            const auto o = emission_observables(q);
            rows[i] = {q.delta_laser, q.omega_drive, o.intensity, o.i_first, o.i_second, o.g2,
                       o.visibility};
        });
        auto& os = open_out(file, out);
        write_csv(os, {"delta", "omega", "I", "I1", "I2", "g2", "V2p"}, rows);
        if (plot) {
            plot::Line li{"I", xs, {}};
            for (auto& r : rows) li.y.push_back(r[2]);
            emit_plot(out, plot::render_lines({li}, "intensity", sweep_axis, "I",
                                              sweep_axis == "omega", sweep_axis == "omega"));
        }
        return 0;
    }

    if (c_spec->parsed()) {
        auto p = pc_spec.resolve();
        print_warnings(p.validity_warnings());
        auto grid = parse_grid(gridtext, p.big_r);
        if (!grid.set) grid = {-2.5 * p.big_r, 2.5 * p.big_r, 4001, true};
        const auto omegas = linear_grid(grid.lo, grid.hi, grid.n);
        const auto s = rf_spectrum(p, omegas);
        auto& os = open_out(file, out);
        write_spectrum_csv(os, s);
        if (plot) {
            emit_plot(out, plot::render_lines({{"total", omegas, s.total}},
                                              "resonance fluorescence", "omega [gamma]", "S"));
        }
        return 0;
    }

    if (c_lad->parsed()) {
        auto p = pc_lad.resolve();
        const auto lad = dressed_ladder(p);
        print_warnings(lad.warnings);
        auto& os = open_out(file, out);
        auto j = nlohmann::ordered_json::parse(ladder_json(lad));
        if (strong) {
            const auto sys = strong_driving_eigensystem(p);
            j["strong_driving_energies"] = sys.energies;
        }
        os << j.dump(2) << "\n";
        return 0;
    }

    if (c_fish->parsed()) {
        auto p = pc_fish.resolve();
        if (!(p.kr12 > 0.0))
            throw ConfigError("fisher requires kr12-based parameters (--kr12, --delta-emit)");
        if (!(p.det_linewidth > 0.0))
            throw ConfigError("fisher requires --det-linewidth > 0");
        print_warnings(p.validity_warnings());
        auto grid = parse_grid(gridtext, p.big_r);
        if (!grid.set) grid = {-3.0 * p.big_r, 3.0 * p.big_r, 2001, true};
        const auto omegas = linear_grid(grid.lo, grid.hi, grid.n);
        FisherOptions opt;
        opt.step_rel = fd_step_rel;
        auto parse_axis = [&](const std::string& text) {
            std::istringstream in(text);
            std::string name, lo, hi, n, log;
            std::getline(in, name, ':');
            std::getline(in, lo, ':');
            std::getline(in, hi, ':');
            std::getline(in, n, ':');
            std::getline(in, log);
            SweepAxis ax;
            if (name == "omega")
                ax = SweepAxis::Omega;
            else if (name == "delta")
                ax = SweepAxis::DeltaLaser;
            else if (name == "kr12")
                ax = SweepAxis::Kr12;
            else
                throw ConfigError("map axis must be omega|delta|kr12");
            return AxisSpec{ax, parse_rate(lo, p.big_r, "axis lo"),
                            parse_rate(hi, p.big_r, "axis hi"), std::stoul(n), log == "log"};
        };
        auto& os = open_out(file, out);
        if (!map1.empty() != !map2.empty())
            throw ConfigError("fisher map needs both --map1 and --map2");
        if (!map1.empty()) {
            opt.richardson_check = false;
            const auto map = fisher_map(p, parse_axis(map1), parse_axis(map2), omegas, jobs, opt);
            write_fisher_map_csv(os, map);
        } else {
            const auto rep = fisher_information(p, p.kr12, omegas, opt);
            os << fisher_report_json(rep) << "\n";
        }
        return 0;
    }

    if (c_rep->parsed()) {
        cli::run_reproduce(figure, panel, out.empty() ? "." : out, plot, jobs);
        return 0;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const dimerfl::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const dimerfl::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
