#include "chemoflow/sweep.hpp"

#include <algorithm>

#include "chemoflow/io.hpp"
#include "chemoflow/parallel.hpp"
#include "chemoflow/reaction.hpp"

namespace chemoflow {

std::string_view to_string(Observed o) {
    switch (o) {
        case Observed::Bounded: return "bounded";
        case Observed::Blowup: return "blowup";
        case Observed::Inconclusive: return "inconclusive";
        case Observed::Error: return "error";
    }
    return "?";
}

std::optional<double> sup_linf_between(const DiagnosticSeries& series, double t0, double t1) {
    std::optional<double> sup;
    for (const auto& row : series.rows) {
        if (row.t >= t0 && row.t <= t1) sup = std::max(sup.value_or(row.linf), row.linf);
    }
    return sup;
}

Observed classify_observed(const RunResult& result, double t_end) {
    switch (result.state.status) {
        case RunStatus::BlowupDetected: return Observed::Blowup;
        case RunStatus::StepFailure: return Observed::Error;
        case RunStatus::Running: return Observed::Inconclusive;
        case RunStatus::Finished: break;
    }
    const auto middle = sup_linf_between(result.series, 0.25 * t_end, 0.75 * t_end);
    const auto last = sup_linf_between(result.series, 0.75 * t_end, t_end);
    if (!middle || !last) return Observed::Inconclusive;
    return *last <= 1.05 * *middle ? Observed::Bounded : Observed::Inconclusive;
}

SweepRow run_sweep_job(const RunConfig& base, double alpha, double beta) {
    SweepRow row;
    row.alpha = alpha;
    row.beta = beta;
    const int n = base.model.theory_n;
    try {
        row.verdict = std::string(to_string(classify_regime(n, alpha, beta).verdict));
        row.beta_gt_n_over_2 = collapse_threshold_hint(n, beta);
    } catch (const std::exception&) {
        row.verdict = "invalid";
    }
    try {
        RunConfig cfg = base;
        cfg.model.reaction.variant = ReactionVariant::NonlocalLogistic;
        cfg.model.reaction.alpha = alpha;
        cfg.model.reaction.beta = beta;
        const Grid grid = cfg.grid();
        RunResult result = run(make_initial_field(grid, cfg.initial), cfg.model, cfg.time, cfg.diagnostics());
        row.observed = classify_observed(result, cfg.time.t_end);
        if (!result.error.empty()) row.observed = Observed::Error;
        double sup = 0.0;
        for (const auto& r : result.series.rows) sup = std::max(sup, r.linf);
        row.sup_linf = sup;
        row.t_stop = result.state.t;
    } catch (const std::exception&) {
        row.observed = Observed::Error;
    }
    return row;
}

std::vector<SweepRow> run_sweep(const SweepConfig& sweep) {
    struct Job {
        double alpha;
        double beta;
    };
    std::vector<Job> jobs;
    for (int i = 0; i < sweep.alpha_range.count; ++i) {
        for (int j = 0; j < sweep.beta_range.count; ++j) {
            jobs.push_back({sweep.alpha_range.at(i), sweep.beta_range.at(j)});
        }
    }
    std::vector<SweepRow> rows(jobs.size());
    parallel_for(jobs.size(), sweep.worker_count,
                 [&](std::size_t i) { rows[i] = run_sweep_job(sweep.base, jobs[i].alpha, jobs[i].beta); });
    std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
        return a.alpha != b.alpha ? a.alpha < b.alpha : a.beta < b.beta;
    });
    return rows;
}

void write_regime_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
    out << kRegimeMapHeader << '\n';
    for (const auto& r : rows) {
        out << format_number(r.alpha) << ',' << format_number(r.beta) << ',' << r.verdict << ','
            << (r.beta_gt_n_over_2 ? "true" : "false") << ',' << to_string(r.observed) << ','
            << format_number(r.sup_linf) << ',' << format_number(r.t_stop) << '\n';
    }
}

}  // namespace chemoflow
