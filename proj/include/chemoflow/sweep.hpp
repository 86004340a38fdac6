#pragma once

// Parameter sweeps over the (alpha, beta) plane. Each job is an independent
// run of the base configuration with the nonlocal exponents replaced; rows
// are gathered and emitted sorted by alpha then beta.

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "chemoflow/config.hpp"
#include "chemoflow/stepper.hpp"

namespace chemoflow {

enum class Observed { Bounded, Blowup, Inconclusive, Error };

std::string_view to_string(Observed o);

struct SweepRow {
    double alpha = 0.0;
    double beta = 0.0;
    std::string verdict;
    bool beta_gt_n_over_2 = false;
    Observed observed = Observed::Inconclusive;
    double sup_linf = 0.0;
    double t_stop = 0.0;
};

// Largest linf over rows with t in [t0, t1], if any.
std::optional<double> sup_linf_between(const DiagnosticSeries& series, double t0, double t1);

// blowup: BlowupDetected. bounded: Finished and the sup over the last quarter
// of [0, t_end] is at most 1.05 times the sup over the middle half.
// Anything else is inconclusive; StepFailure maps to error.
Observed classify_observed(const RunResult& result, double t_end);

SweepRow run_sweep_job(const RunConfig& base, double alpha, double beta);

std::vector<SweepRow> run_sweep(const SweepConfig& sweep);

inline constexpr const char* kRegimeMapHeader = "alpha,beta,verdict,beta_gt_n_over_2,observed,sup_linf,t_stop";

void write_regime_csv(const std::vector<SweepRow>& rows, std::ostream& out);

}  // namespace chemoflow
