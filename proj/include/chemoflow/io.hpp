#pragma once

// CSV emission for diagnostic series and regime maps. Numbers are written in
// shortest round-trip form so identical runs give byte-identical files.

#include <ostream>
#include <string>
#include <vector>

#include "chemoflow/diagnostics.hpp"

namespace chemoflow {

std::string format_number(double v);

// t, dt, mass, Lk_<k>..., linf, nonlocal_integral, clipped_mass_cum,
// then gradsq_<k>, energy_resid_<k> for each k in order.
std::vector<std::string> diagnostics_columns(const std::vector<double>& k_list);

void write_diagnostics_csv(const DiagnosticSeries& series, std::ostream& out);
void write_diagnostics_csv(const DiagnosticSeries& series, const std::string& path);

}  // namespace chemoflow
