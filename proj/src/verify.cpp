#include "chemoflow/verify.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "chemoflow/errors.hpp"
#include "chemoflow/io.hpp"
#include "chemoflow/parallel.hpp"

namespace chemoflow {

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

std::uint64_t case_seed(std::uint64_t base, std::uint64_t index) {
    // splitmix64 finalizer over the pair.
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

IterationCase random_iteration_case(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    IterationCase c;
    c.a_bar = uniform(rng, 1.1, 10.0);
    c.b = 2.0;
    c.r0 = uniform(rng, 0.0, 3.0);
    // gamma1 in (0, 2], gamma2 in (0, gamma1); redraw the measure-zero endpoints.
    do {
        c.gamma1 = 2.0 - uniform(rng, 0.0, 2.0);
    } while (!(c.gamma1 > 0.0));
    do {
        c.gamma2 = uniform(rng, 0.0, c.gamma1);
    } while (!(c.gamma2 > 0.0 && c.gamma2 < c.gamma1));
    c.K = uniform(rng, 1.0, 5.0);
    c.k_max = 6;
    if (rng() & 1) {
        c.y0.kind = Y0Profile::Kind::Constant;
        c.y0.level = uniform(rng, 0.0, c.K);
    } else {
        c.y0.kind = Y0Profile::Kind::Decaying;
        c.y0.level = uniform(rng, 0.0, c.K);
        c.y0.rate = uniform(rng, 0.1, 5.0);
        c.y0.floor = uniform(rng, 0.0, 1.0);
    }
    return c;
}

double max_required_over_scales(const InterpolationCase& c, const Field& v, const std::vector<double>& scales) {
    double m = 0.0;
    for (double s : scales) {
        Field w = v;
        for (double& x : w.values()) x *= s;
        m = std::max(m, check_interpolation(c, w).required_Cn);
    }
    return m;
}

double LemmaReport::max_iteration_ratio() const {
    double m = 0.0;
    for (const auto& r : iteration) m = std::max(m, r.max_ratio);
    return m;
}

double LemmaReport::max_required_coarse() const {
    double m = 0.0;
    for (const auto& r : interpolation) m = std::max(m, r.required_coarse);
    return m;
}

double LemmaReport::max_required_fine() const {
    double m = 0.0;
    for (const auto& r : interpolation) m = std::max(m, r.required_fine);
    return m;
}

bool LemmaReport::iteration_passed() const {
    return std::all_of(iteration.begin(), iteration.end(), [&](const IterationRow& r) {
        return std::isfinite(r.max_ratio) && r.max_ratio <= 1.0 + options.ratio_tolerance;
    });
}

bool LemmaReport::interpolation_stable() const {
    for (const auto& r : interpolation) {
        if (!std::isfinite(r.required_coarse) || !std::isfinite(r.required_fine)) return false;
    }
    const double coarse = max_required_coarse();
    const double fine = max_required_fine();
    if (coarse == 0.0 && fine == 0.0) return true;
    return std::abs(fine - coarse) <= 0.25 * coarse;
}

LemmaReport verify_lemmas(const LemmaOptions& options) {
    LemmaReport report;
    report.options = options;

    report.iteration.resize(static_cast<std::size_t>(std::max(options.cases, 0)));
    parallel_for(report.iteration.size(), options.workers, [&](std::size_t i) {
        IterationRow& row = report.iteration[i];
        row.seed = case_seed(options.seed, i);
        row.c = random_iteration_case(row.seed);
        row.max_ratio = check_iteration_bound(row.c, options.t_end).max_ratio;
    });

    if (options.fields > 0) {
        options.interpolation.validate();
        const Grid coarse = Grid::unit(options.interpolation.n, options.coarse_cells);
        const Grid fine = Grid::unit(options.interpolation.n, options.fine_cells);
        report.interpolation.resize(static_cast<std::size_t>(options.fields));
        parallel_for(report.interpolation.size(), options.workers, [&](std::size_t i) {
            InterpolationRow& row = report.interpolation[i];
            row.seed = case_seed(options.seed ^ 0x5eedULL, i);
            row.required_coarse = max_required_over_scales(
                options.interpolation, band_limited_field(coarse, row.seed, options.max_mode), options.scales);
            row.required_fine = max_required_over_scales(
                options.interpolation, band_limited_field(fine, row.seed, options.max_mode), options.scales);
        });
    }
    return report;
}

std::string lemma_summary(const LemmaReport& report) {
    const auto& o = report.options;
    std::ostringstream s;
    s << "iteration bound: " << report.iteration.size() << " extremal cases, max trajectory/bound ratio "
      << format_number(report.max_iteration_ratio()) << " (tolerance 1 + " << format_number(o.ratio_tolerance)
      << "): " << (report.iteration_passed() ? "PASS" : "FAIL") << '\n';
    const auto& ic = o.interpolation;
    s << "interpolation: n=" << ic.n << " r=" << format_number(ic.r) << " q=" << format_number(ic.q)
      << " C0=" << format_number(ic.C0) << " C1=" << format_number(ic.C1) << " lambda="
      << format_number(ic.lambda()) << " gamma=" << format_number(ic.gamma()) << " scales=";
    for (std::size_t i = 0; i < o.scales.size(); ++i) s << (i ? "," : "") << format_number(o.scales[i]);
    s << '\n';
    s << "  " << report.interpolation.size() << " band-limited fields, max required C(n): "
      << format_number(report.max_required_coarse()) << " at " << o.coarse_cells << "^" << ic.n << ", "
      << format_number(report.max_required_fine()) << " at " << o.fine_cells << "^" << ic.n << ": "
      << (report.interpolation_stable() ? "stable" : "UNSTABLE") << " under refinement\n";
    s << "  C(n) is not known in closed form; the values above are the smallest constants\n"
         "  for which the inequality holds on the sampled fields.\n";
    return s.str();
}

void write_lemma_report(const LemmaReport& report, const std::string& directory) {
    std::filesystem::create_directories(directory);
    const std::filesystem::path dir(directory);
    {
        std::ofstream out(dir / "lemma_iteration.csv", std::ios::trunc);
        if (!out) throw Error("cannot write lemma_iteration.csv");
        out << "case,seed,a_bar,r0,b,gamma1,gamma2,K,y0_kind,y0_level,k_max,max_ratio,pass\n";
        for (std::size_t i = 0; i < report.iteration.size(); ++i) {
            const auto& r = report.iteration[i];
            const auto& c = r.c;
            out << i << ',' << r.seed << ',' << format_number(c.a_bar) << ',' << format_number(c.r0) << ','
                << format_number(c.b) << ',' << format_number(c.gamma1) << ',' << format_number(c.gamma2) << ','
                << format_number(c.K) << ',' << (c.y0.kind == Y0Profile::Kind::Constant ? "constant" : "decaying")
                << ',' << format_number(c.y0.level) << ',' << c.k_max << ',' << format_number(r.max_ratio) << ','
                << (r.max_ratio <= 1.0 + report.options.ratio_tolerance ? "true" : "false") << '\n';
        }
    }
    {
        std::ofstream out(dir / "lemma_interpolation.csv", std::ios::trunc);
        if (!out) throw Error("cannot write lemma_interpolation.csv");
        out << "field,seed,required_Cn_coarse,required_Cn_fine\n";
        for (std::size_t i = 0; i < report.interpolation.size(); ++i) {
            const auto& r = report.interpolation[i];
            out << i << ',' << r.seed << ',' << format_number(r.required_coarse) << ','
                << format_number(r.required_fine) << '\n';
        }
    }
    std::ofstream summary(dir / "summary.txt", std::ios::trunc);
    if (!summary) throw Error("cannot write summary.txt");
    summary << lemma_summary(report);
}

}  // namespace chemoflow
