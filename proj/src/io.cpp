#include "dimerfl/io.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "dimerfl/errors.hpp"

namespace dimerfl {

std::string format_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.15g", x);
    return buf;
}

void write_csv(std::ostream& os, const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows) {
    os << kCsvHeader << '\n';
    for (std::size_t c = 0; c < columns.size(); ++c)
        os << columns[c] << (c + 1 < columns.size() ? "," : "");
    os << '\n';
    for (const auto& row : rows) {
        if (row.size() != columns.size())
            throw NumericalError("write_csv: row width does not match the column set");
        for (std::size_t c = 0; c < row.size(); ++c)
            os << format_number(row[c]) << (c + 1 < row.size() ? "," : "");
        os << '\n';
    }
}

void write_spectrum_csv(std::ostream& os, const SpectralSeries& s) {
    std::vector<std::vector<double>> rows;
    rows.reserve(s.omegas.size());
    for (std::size_t i = 0; i < s.omegas.size(); ++i)
        rows.push_back({s.omegas[i], s.total[i], s.s1[i], s.s2[i], s.s12[i], s.s21[i]});
    write_csv(os, {"omega", "total", "s1", "s2", "s12", "s21"}, rows);
}

std::string fisher_report_json(const FisherReport& rep) {
    nlohmann::ordered_json j;
    j["kr12"] = rep.kr12;
    j["delta_laser"] = rep.delta_laser;
    j["omega_drive"] = rep.omega_drive;
    j["fisher"] = rep.fisher;
    j["crlb"] = rep.crlb;
    j["n_points_used"] = rep.n_points_used;
    j["n_points_excluded"] = rep.n_points_excluded;
    j["fd_step"] = rep.fd_step;
    j["eta"] = rep.eta;
    j["grid"] = {{"lo", rep.grid.lo}, {"hi", rep.grid.hi}, {"n", rep.grid.n}};
    return j.dump(2);
}

void write_fisher_map_csv(std::ostream& os, const FisherMap& map) {
    auto axis_name = [](SweepAxis a) {
        switch (a) {
            case SweepAxis::Omega: return "omega";
            case SweepAxis::DeltaLaser: return "delta_laser";
            case SweepAxis::Kr12: return "kr12";
        }
        return "axis";
    };
    const auto v1 = map.axis1.values();
    const auto v2 = map.axis2.values();
    std::vector<std::vector<double>> rows;
    rows.reserve(v1.size() * v2.size());
    for (std::size_t i = 0; i < v1.size(); ++i)
        for (std::size_t j = 0; j < v2.size(); ++j) {
            const auto& c = map.cells[i][j];
            rows.push_back({v1[i], v2[j], c.fisher, c.crlb, double(c.n_points_used)});
        }
    write_csv(os, {axis_name(map.axis1.axis), axis_name(map.axis2.axis), "fisher", "crlb",
                   "n_points_used"},
              rows);
}

std::string ladder_json(const DressedLadder& lad) {
    nlohmann::ordered_json j;
    j["energies"] = lad.energies;
    nlohmann::ordered_json trans = nlohmann::ordered_json::array();
    for (const auto& t : lad.transitions)
        trans.push_back({{"from", t.from}, {"to", t.to}, {"omega", t.omega}});
    j["transitions"] = trans;
    if (std::isfinite(lad.omega_2ps))
        j["omega_2ps"] = lad.omega_2ps;
    else
        j["omega_2ps"] = "infinity";
    if (!lad.warnings.empty()) j["warnings"] = lad.warnings;
    return j.dump(2);
}

}  // namespace dimerfl
