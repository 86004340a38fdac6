#include "chemoflow/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "chemoflow/errors.hpp"

namespace chemoflow {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::vector<std::string> diagnostics_columns(const std::vector<double>& k_list) {
    std::vector<std::string> cols{"t", "dt", "mass"};
    for (double k : k_list) cols.push_back("Lk_" + format_number(k));
    cols.insert(cols.end(), {"linf", "nonlocal_integral", "clipped_mass_cum"});
    for (double k : k_list) {
        cols.push_back("gradsq_" + format_number(k));
        cols.push_back("energy_resid_" + format_number(k));
    }
    return cols;
}

void write_diagnostics_csv(const DiagnosticSeries& series, std::ostream& out) {
    const auto cols = diagnostics_columns(series.k_list);
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << '\n';
    for (const auto& r : series.rows) {
        out << format_number(r.t) << ',' << format_number(r.dt) << ',' << format_number(r.mass);
        for (double v : r.lk) out << ',' << format_number(v);
        out << ',' << format_number(r.linf) << ',' << format_number(r.nonlocal_integral) << ','
            << format_number(r.clipped_mass_cum);
        for (std::size_t i = 0; i < series.k_list.size(); ++i) {
            out << ',' << format_number(r.gradsq[i]) << ',' << format_number(r.energy_resid[i]);
        }
        out << '\n';
    }
}

void write_diagnostics_csv(const DiagnosticSeries& series, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    write_diagnostics_csv(series, out);
}

}  // namespace chemoflow
