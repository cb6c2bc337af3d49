#include "reproduce.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>

#include "dimerfl/errors.hpp"
#include "dimerfl/estimation.hpp"
#include "dimerfl/io.hpp"
#include "dimerfl/observables.hpp"
#include "dimerfl/spectrum.hpp"
#include "dimerfl/sweep.hpp"
#include "svg_plot.hpp"

namespace dimerfl::cli {

namespace {

namespace fs = std::filesystem;
constexpr double kPi = std::numbers::pi;

struct Sink {
    fs::path dir;
    bool plot;
    int written = 0;

    void csv(const std::string& name, const std::vector<std::string>& cols,
             const std::vector<std::vector<double>>& rows) {
        std::ofstream os(dir / (name + ".csv"));
        if (!os) throw ConfigError("cannot write " + (dir / (name + ".csv")).string());
        write_csv(os, cols, rows);
        ++written;
        std::cerr << "wrote " << (dir / (name + ".csv")).string() << "\n";
    }
    void svg(const std::string& name, const std::string& content) {
        if (!plot) return;
        std::ofstream os(dir / (name + ".svg"));
        os << content;
        ++written;
    }
};

bool want(const std::string& panel, const char* tag) { return panel.empty() || panel == tag; }

// ---- fig3: steady-state intensity and g2 vs detuning ----

void fig3(Sink& sink, const std::string& panel, unsigned jobs) {
    const double R = 1000.0, gamma = 1.0;  // gamma/R = 1e-3
    auto base = [&](double beta) {
        auto p = SystemParams::from_beta(R, beta);
        p.with_rates(gamma, 0.999 * gamma).with_drive(0.1 * R, 0.0);
        return p;
    };

    auto line_sweep = [&](double beta, double lo, double hi, std::size_t n) {
        auto deltas = linear_grid(lo, hi, n);
        std::vector<std::vector<double>> rows(deltas.size());
        parallel_for(deltas.size(), jobs, [&](std::size_t i) {
            auto p = base(beta);
            p.delta_laser = deltas[i];
            const auto o = emission_observables(p);
            const auto s = combined_steady(p);
            const double g2eff = 4.0 * s.combined_ee / (o.i_eff * o.i_eff);
            rows[i] = {deltas[i], o.intensity, o.i_eff, o.i_first, o.i_second, o.g2, g2eff};
        });
        return std::pair{deltas, rows};
    };
    const std::vector<std::string> cols = {"delta", "i_exact", "i_eff", "i1", "i2",
                                           "g2_exact", "g2_eff"};

    if (want(panel, "a") || want(panel, "c")) {
        auto [deltas, rows] = line_sweep(kPi / 4, -1.5 * R, 1.5 * R, 601);
        if (want(panel, "a")) {
            sink.csv("fig3a", cols, rows);
            plot::Line li{"exact", deltas, {}}, le{"analytic", deltas, {}};
            for (auto& r : rows) {
                li.y.push_back(r[1]);
                le.y.push_back(r[2]);
            }
            sink.svg("fig3a", plot::render_lines({li, le}, "intensity vs detuning",
                                                 "delta [gamma]", "I", false, true));
        }
        if (want(panel, "c")) {
            sink.csv("fig3c", cols, rows);
            plot::Line li{"exact", deltas, {}}, le{"analytic", deltas, {}};
            for (auto& r : rows) {
                li.y.push_back(r[5]);
                le.y.push_back(r[6]);
            }
            sink.svg("fig3c", plot::render_lines({li, le}, "g2(0) vs detuning",
                                                 "delta [gamma]", "g2(0)", false, true));
        }
    }
    for (const char* tag : {"e", "f"}) {
        if (!want(panel, tag)) continue;
        auto [deltas, rows] = line_sweep(kPi / 4, -0.05 * R, 0.05 * R, 41);
        const bool g2panel = std::string(tag) == "f";
        sink.csv(std::string("fig3") + tag, cols, rows);
        plot::Line li{"exact", deltas, {}}, le{"analytic", deltas, {}};
        for (auto& r : rows) {
            li.y.push_back(g2panel ? r[5] : r[1]);
            le.y.push_back(g2panel ? r[6] : r[2]);
        }
        sink.svg(std::string("fig3") + tag,
                 plot::render_lines({li, le}, g2panel ? "g2(0), two-photon resonance zoom"
                                                      : "intensity, two-photon resonance zoom",
                                    "delta [gamma]", g2panel ? "g2(0)" : "I"));
    }
    for (const char* tag : {"b", "d"}) {
        if (!want(panel, tag)) continue;
        const auto betas = linear_grid(0.0, kPi / 2, 41);
        const auto deltas = linear_grid(-1.5 * R, 1.5 * R, 201);
        std::vector<std::vector<double>> rows(betas.size() * deltas.size());
        const bool g2panel = std::string(tag) == "d";
        parallel_for(rows.size(), jobs, [&](std::size_t k) {
            const std::size_t i = k / deltas.size(), j = k % deltas.size();
            auto p = base(betas[i]);
            p.delta_laser = deltas[j];
            const auto o = emission_observables(p);
            rows[k] = {betas[i], deltas[j], g2panel ? o.g2 : o.intensity};
        });
        sink.csv(std::string("fig3") + tag, {"beta", "delta", g2panel ? "g2" : "i_exact"}, rows);
    }
}

// ---- fig4: two-photon visibility crossover ----

void fig4(Sink& sink, const std::string& panel, unsigned jobs) {
    const double beta = kPi / 4;
    if (want(panel, "a")) {
        const double R = 1.0, gamma = 1e-2;  // rates in units of R
        const auto oms = AxisSpec{SweepAxis::Omega, 1e-4 * R, 0.3 * R, 121, true}.values();
        std::vector<std::vector<double>> rows(oms.size());
        parallel_for(oms.size(), jobs, [&](std::size_t i) {
            auto p = SystemParams::from_beta(R, beta);
            p.with_rates(gamma, 0.999 * gamma).with_drive(oms[i], 0.0);
            const auto o = emission_observables(p);
            rows[i] = {oms[i], o.intensity, o.i_first, o.i_second, o.omega_v};
        });
        sink.csv("fig4a", {"omega", "i_exact", "i1", "i2", "omega_v"}, rows);
        plot::Line li{"exact", oms, {}}, l1{"I1", oms, {}}, l2{"I2", oms, {}};
        for (auto& r : rows) {
            li.y.push_back(r[1]);
            l1.y.push_back(r[2]);
            l2.y.push_back(r[3]);
        }
        sink.svg("fig4a", plot::render_lines({li, l1, l2}, "intensity vs drive (Delta = 0)",
                                             "omega [R]", "I", true, true));
    }
    if (want(panel, "b")) {
        const double R = 1.0;
        const auto gammas = AxisSpec{SweepAxis::Omega, 1e-4, 1e-1, 41, true}.values();
        const auto oms = AxisSpec{SweepAxis::Omega, 1e-4, 0.3, 41, true}.values();
        std::vector<std::vector<double>> rows(gammas.size() * oms.size());
        parallel_for(rows.size(), jobs, [&](std::size_t k) {
            const std::size_t i = k / oms.size(), j = k % oms.size();
            auto p = SystemParams::from_beta(R, beta);
            p.with_rates(gammas[i], 0.999 * gammas[i]).with_drive(oms[j], 0.0);
            const auto v = visibility_crossover(p);
            rows[k] = {gammas[i], oms[j], v.v2p, v.omega_v};
        });
        sink.csv("fig4b", {"gamma", "omega", "v2p", "omega_v"}, rows);
    }
}

// ---- fig5: resonance-fluorescence spectra at the two-photon resonance ----

void fig5(Sink& sink, const std::string& panel, unsigned jobs) {
    const struct {
        const char* tag;
        double beta;
    } panels[] = {{"a", 0.0}, {"b", kPi / 4}, {"c", kPi / 2}};
    const double R = 1.0;
    for (const auto& pa : panels) {
        if (!want(panel, pa.tag)) continue;
        {
            // spectrum and its components at Omega = R (gamma/R = 0.1)
            const double gamma = 0.1 * R;
            auto p = SystemParams::from_beta(R, pa.beta);
            p.with_rates(gamma, 0.999 * gamma).with_drive(R, 0.0);
            const auto grid = linear_grid(-4.8 * R, 4.8 * R, 4801);
            const auto s = rf_spectrum(p, grid);
            std::ofstream os(sink.dir / (std::string("fig5") + pa.tag + "_components.csv"));
            write_spectrum_csv(os, s);
            ++sink.written;
            plot::Line lt{"total", grid, s.total}, l1{"s1", grid, s.s1},
                l12{"s12+s21", grid, {}};
            for (std::size_t i = 0; i < grid.size(); ++i)
                l12.y.push_back(s.s12[i] + s.s21[i]);
            sink.svg(std::string("fig5") + pa.tag + "_components",
                     plot::render_lines({lt, l1, l12}, "spectrum decomposition", "omega [R]",
                                        "S(omega)"));
        }
        {
            // emergence of two-photon sidebands with drive (gamma/R = 1e-3)
            const double gamma = 1e-3 * R;
            const auto oms = linear_grid(0.08 * R, 2.0 * R, 25);
            const auto grid = linear_grid(-4.8 * R, 4.8 * R, 12001);
            std::vector<std::vector<std::vector<double>>> chunks(oms.size());
            parallel_for(oms.size(), jobs, [&](std::size_t i) {
                auto p = SystemParams::from_beta(R, pa.beta);
                p.with_rates(gamma, 0.999 * gamma).with_drive(oms[i], 0.0);
                const auto s = rf_spectrum(p, grid);
                auto& rows = chunks[i];
                rows.reserve(grid.size());
                for (std::size_t k = 0; k < grid.size(); ++k)
                    rows.push_back({oms[i], grid[k], s.total[k]});
            });
            std::vector<std::vector<double>> rows;
            rows.reserve(oms.size() * grid.size());
            for (auto& c : chunks)
                for (auto& r : c) rows.push_back(std::move(r));
            sink.csv(std::string("fig5") + pa.tag + "_vs_omega",
                     {"omega_drive", "omega", "total"}, rows);
        }
    }
}

// ---- fig6: spectra vs beta and vs detuning at strong drive ----

void fig6(Sink& sink, const std::string& panel, unsigned jobs) {
    const double R = 1.0, gamma = 1e-2 * R;
    const auto grid = linear_grid(-4.8 * R, 4.8 * R, 2401);
    const struct {
        const char* tag;
        double delta;
    } upper[] = {{"a", -R}, {"b", 0.0}, {"c", R}};
    for (const auto& pa : upper) {
        if (!want(panel, pa.tag)) continue;
        const auto betas = linear_grid(0.0, kPi / 2, 41);
        std::vector<std::vector<std::vector<double>>> chunks(betas.size());
        parallel_for(betas.size(), jobs, [&](std::size_t i) {
            auto p = SystemParams::from_beta(R, betas[i]);
            p.with_rates(gamma, 0.999 * gamma).with_drive(R, pa.delta);
            const auto s = rf_spectrum(p, grid);
            auto& rows = chunks[i];
            for (std::size_t k = 0; k < grid.size(); ++k)
                rows.push_back({betas[i], grid[k], s.total[k]});
        });
        std::vector<std::vector<double>> rows;
        for (auto& c : chunks)
            for (auto& r : c) rows.push_back(std::move(r));
        sink.csv(std::string("fig6") + pa.tag, {"beta", "omega", "total"}, rows);
    }
    const struct {
        const char* tag;
        double beta;
    } lower[] = {{"d", 0.0}, {"e", kPi / 4}, {"f", kPi / 2}};
    for (const auto& pa : lower) {
        if (!want(panel, pa.tag)) continue;
        const auto deltas = linear_grid(-1.2 * R, 1.2 * R, 41);
        std::vector<std::vector<std::vector<double>>> chunks(deltas.size());
        parallel_for(deltas.size(), jobs, [&](std::size_t i) {
            auto p = SystemParams::from_beta(R, pa.beta);
            p.with_rates(gamma, 0.999 * gamma).with_drive(R, deltas[i]);
            const auto s = rf_spectrum(p, grid);
            auto& rows = chunks[i];
            for (std::size_t k = 0; k < grid.size(); ++k)
                rows.push_back({deltas[i], grid[k], s.total[k]});
        });
        std::vector<std::vector<double>> rows;
        for (auto& c : chunks)
            for (auto& r : c) rows.push_back(std::move(r));
        sink.csv(std::string("fig6") + pa.tag, {"delta", "omega", "total"}, rows);
    }
}

// ---- fig7: Fisher information of spectral photon counting ----

void fig7(Sink& sink, const std::string& panel, unsigned jobs) {
    const double gamma = 1.0, de = 50.0 * gamma;
    auto base = [&](double kr) {
        auto p = SystemParams::from_kr12(kr, de, CouplingMode::NearField);
        p.with_rates(gamma, 0.999 * gamma).with_detector(gamma);
        return p;
    };
    FisherOptions opt;
    opt.richardson_check = false;  // sweep-scale maps; the single-point command checks steps

    if (want(panel, "a")) {
        const double kr = 0.17;
        auto p = base(kr);
        const double R = p.big_r;
        const auto omegas = linear_grid(-3.0 * R, 3.0 * R, 2001);
        const AxisSpec ax1{SweepAxis::Omega, 1.0, 30.0, 13, true};
        const AxisSpec ax2{SweepAxis::DeltaLaser, -1.2 * R, 1.2 * R, 49, false};
        const auto map = fisher_map(p, ax1, ax2, omegas, jobs, opt);
        std::ofstream os(sink.dir / "fig7a.csv");
        write_fisher_map_csv(os, map);
        ++sink.written;
        // zooms around the three resonances
        const double eps = 0.02 * R;
        const struct {
            const char* tag;
            double c;
        } zooms[] = {{"a_zoom_m", -R}, {"a_zoom_0", 0.0}, {"a_zoom_p", R}};
        for (const auto& z : zooms) {
            const AxisSpec axz{SweepAxis::DeltaLaser, z.c - eps, z.c + eps, 21, false};
            const auto zm = fisher_map(p, ax1, axz, omegas, jobs, opt);
            std::ofstream zs(sink.dir / (std::string("fig7") + z.tag + ".csv"));
            write_fisher_map_csv(zs, zm);
            ++sink.written;
        }
        if (sink.plot) {
            const auto o1 = ax1.values();
            const auto d2 = ax2.values();
            std::vector<std::vector<double>> vals(o1.size(), std::vector<double>(d2.size()));
            for (std::size_t i = 0; i < o1.size(); ++i)
                for (std::size_t j = 0; j < d2.size(); ++j) vals[i][j] = map.cells[i][j].fisher;
            sink.svg("fig7a", plot::render_heatmap(d2, o1, vals, "Fisher information",
                                                   "delta [gamma]", "omega [gamma]", true));
        }
    }
    if (want(panel, "b")) {
        const auto krs = linear_grid(0.12, 0.25, 14);
        const auto oms = AxisSpec{SweepAxis::Omega, 1.0, 30.0, 13, true}.values();
        std::vector<std::vector<double>> rows(krs.size() * oms.size());
        parallel_for(rows.size(), jobs, [&](std::size_t k) {
            const std::size_t i = k / oms.size(), j = k % oms.size();
            auto p = base(krs[i]);
            p.omega_drive = oms[j];
            const double R = p.big_r;
            const auto omegas = linear_grid(-3.0 * R, 3.0 * R, 2001);
            const auto rep = fisher_information(p, krs[i], omegas, opt);
            const double o2ps = 0.5 * std::sqrt(R * gamma / std::cos(p.beta));
            rows[k] = {krs[i], oms[j], rep.fisher, o2ps};
        });
        sink.csv("fig7b", {"kr12", "omega", "fisher", "omega_2ps"}, rows);
    }
}

}  // namespace

int run_reproduce(const std::string& figure, const std::string& panel,
                  const std::string& outdir, bool plot, unsigned jobs) {
    Sink sink{fs::path(outdir), plot};
    fs::create_directories(sink.dir);
    if (figure == "fig3")
        fig3(sink, panel, jobs);
    else if (figure == "fig4")
        fig4(sink, panel, jobs);
    else if (figure == "fig5")
        fig5(sink, panel, jobs);
    else if (figure == "fig6")
        fig6(sink, panel, jobs);
    else if (figure == "fig7")
        fig7(sink, panel, jobs);
    else
        throw ConfigError("unknown figure tag '" + figure +
                          "' (expected fig3, fig4, fig5, fig6 or fig7)");
    if (sink.written == 0)
        throw ConfigError("figure '" + figure + "' has no panel '" + panel + "'");
    return sink.written;
}

}  // namespace dimerfl::cli
