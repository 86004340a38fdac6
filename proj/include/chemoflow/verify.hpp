#pragma once

// Batch verification of the interpolation and iteration lemmas, written as
// CSV files plus a plain-text summary.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "chemoflow/lemmas.hpp"

namespace chemoflow {

// a_bar in [1.1, 10], b = 2, r0 in [0, 3], 0 < gamma2 < gamma1 <= 2,
// K in [1, 5], y0 constant or decaying with y0(0) <= K, k_max = 6.
IterationCase random_iteration_case(std::uint64_t seed);

struct LemmaOptions {
    int cases = 50;
    std::uint64_t seed = 1;
    int fields = 100;
    std::size_t coarse_cells = 32;
    std::size_t fine_cells = 64;
    int max_mode = 3;
    InterpolationCase interpolation{3, 2.0, 3.0, 1.0, 1.0};
    // The inequality is not scale invariant, so each field is checked at every scale.
    std::vector<double> scales{0.1, 1.0, 10.0, 100.0, 1000.0};
    double t_end = 20.0;
    double ratio_tolerance = 1e-6;
    int workers = 1;
};

struct IterationRow {
    IterationCase c;
    std::uint64_t seed = 0;
    double max_ratio = 0.0;
};

// required_* are maxima over the sampled scales.
struct InterpolationRow {
    std::uint64_t seed = 0;
    double required_coarse = 0.0;
    double required_fine = 0.0;
};

// max over s in scales of required_Cn(s v).
double max_required_over_scales(const InterpolationCase& c, const Field& v, const std::vector<double>& scales);

struct LemmaReport {
    LemmaOptions options;
    std::vector<IterationRow> iteration;
    std::vector<InterpolationRow> interpolation;

    double max_iteration_ratio() const;
    double max_required_coarse() const;
    double max_required_fine() const;
    bool iteration_passed() const;
    // Finite constants at both resolutions and fine/coarse maxima within 25%.
    bool interpolation_stable() const;
};

// Per-case seeds are derived from options.seed, so the report does not depend
// on the worker count.
std::uint64_t case_seed(std::uint64_t base, std::uint64_t index);

LemmaReport verify_lemmas(const LemmaOptions& options);

void write_lemma_report(const LemmaReport& report, const std::string& directory);

std::string lemma_summary(const LemmaReport& report);

}  // namespace chemoflow
