#include "chemoflow/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "chemoflow/errors.hpp"
#include "chemoflow/lemmas.hpp"
#include "chemoflow/snapshot.hpp"

namespace chemoflow {

namespace {

struct StepLimits {
    double advective = std::numeric_limits<double>::infinity();
    double reactive = std::numeric_limits<double>::infinity();
};

StepLimits step_limits(const RunState& s, const ModelParams& params, const StepControls& controls,
                       double nonlocal_integral) {
    StepLimits lim;
    const Grid& g = s.u.grid();
    if (params.chi > 0.0) {
        // Sum over axes of max |face velocity| / h bounds the upwind outflow rate.
        double rate = 0.0;
        for (int a = 0; a < g.dim(); ++a) {
            const std::size_t stride = g.stride(a);
            const double inv_h = 1.0 / g.spacing(a);
            double vmax = 0.0;
            for (std::size_t idx = 0; idx < s.c.size(); ++idx) {
                if (g.multi_index(idx)[a] + 1 == g.cells(a)) continue;
                vmax = std::max(vmax, std::abs(s.c[idx + stride] - s.c[idx]) * inv_h);
            }
            rate += vmax * inv_h;
        }
        const double umax = s.u.max_abs();
        const double density_factor =
            params.sigma == 1.0 ? 1.0 : params.sigma * std::pow(umax, params.sigma - 1.0);
        rate *= params.chi * density_factor;
        if (rate > 0.0) lim.advective = controls.cfl_advect / rate;
    }
    const double rrate = reaction_rate_bound(s.u, params.reaction, nonlocal_integral);
    if (rrate > 0.0) lim.reactive = controls.cfl_react / rrate;
    return lim;
}

}  // namespace

std::string_view to_string(InitialKind k) {
    switch (k) {
        case InitialKind::Constant: return "constant";
        case InitialKind::Gaussian: return "gaussian";
        case InitialKind::ConstantPlusNoise: return "constant_plus_noise";
        case InitialKind::FromSnapshot: return "from_snapshot";
    }
    return "?";
}

InitialKind initial_kind_from_string(std::string_view s) {
    if (s == "constant") return InitialKind::Constant;
    if (s == "gaussian") return InitialKind::Gaussian;
    if (s == "constant_plus_noise") return InitialKind::ConstantPlusNoise;
    if (s == "from_snapshot") return InitialKind::FromSnapshot;
    throw ParameterError("unknown initial condition kind '" + std::string(s) + "'");
}

Field smooth_random_field(const Grid& grid, std::uint64_t seed, int max_mode) {
    Field f = band_limited_field(grid, seed, max_mode);
    // Drop the constant mode; the remaining cosines have zero discrete mean.
    const double mean = integrate(f) / grid.measure();
    for (double& v : f.values()) v -= mean;
    const double peak = f.max_abs();
    if (peak > 0.0) {
        for (double& v : f.values()) v /= peak;
    }
    return f;
}

Field make_initial_field(const Grid& grid, const InitialCondition& ic) {
    switch (ic.kind) {
        case InitialKind::Constant:
            return Field(grid, std::max(ic.amplitude, 0.0));
        case InitialKind::Gaussian: {
            const double inv = 1.0 / (2.0 * ic.width * ic.width);
            return Field::from_function(grid, [&](const Point& p) {
                double r2 = 0.0;
                for (int a = 0; a < grid.dim(); ++a) r2 += (p[a] - ic.center[a]) * (p[a] - ic.center[a]);
                return std::max(0.0, ic.background + ic.amplitude * std::exp(-r2 * inv));
            });
        }
        case InitialKind::ConstantPlusNoise: {
            Field f = smooth_random_field(grid, ic.seed);
            for (double& v : f.values()) v = std::max(0.0, ic.amplitude * (1.0 + ic.noise * v));
            return f;
        }
        case InitialKind::FromSnapshot: {
            Snapshot snap = read_snapshot(ic.snapshot);
            if (!(snap.field.grid() == grid)) {
                throw ConfigError("initial snapshot grid does not match the configured grid");
            }
            return std::move(snap.field);
        }
    }
    throw ParameterError("unknown initial condition kind");
}

RunState make_initial_state(const ScreenedPoissonSolver& solver, Field u0, const ModelParams& params) {
    if (!u0.all_finite()) throw InputError("initial density has non-finite values");
    if (u0.min() < 0.0) throw InputError("initial density must be nonnegative");
    RunState s;
    s.c = solve_chemical(solver, u0, params.xi);
    s.u = std::move(u0);
    return s;
}

RunState step(const RunState& state, const ModelParams& params, const StepControls& controls,
              const ScreenedPoissonSolver& solver) {
    if (state.status != RunStatus::Running) {
        throw Error("step: run is not in the running state");
    }
    RunState next = state;
    const Grid& g = state.u.grid();

    const double nonlocal = params.reaction.variant == ReactionVariant::NonlocalLogistic
                                ? integrate(pointwise_pow(state.u, params.reaction.beta))
                                : 0.0;
    if (!std::isfinite(nonlocal)) {
        next.status = RunStatus::StepFailure;
        return next;
    }

    const StepLimits lim = step_limits(state, params, controls, nonlocal);
    double dt = std::min({controls.dt_max, lim.advective, lim.reactive});
    if (state.step_index == 0) dt = std::min(dt, controls.dt_init);
    if (!(dt >= controls.dt_min)) {
        // Step-size collapse is the numerical signature of L^inf blow-up.
        next.status = RunStatus::BlowupDetected;
        return next;
    }
    const double remaining = controls.t_end - state.t;
    const bool last = dt >= remaining;
    if (last) dt = remaining;

    // Explicit advection and reaction.
    Field work = state.u;
    if (params.chi != 0.0) {
        const Field aggregated = params.sigma == 1.0 ? state.u : pointwise_pow(state.u, params.sigma);
        const Field div = advective_divergence(aggregated, state.c);
        for (std::size_t i = 0; i < work.size(); ++i) work[i] -= dt * params.chi * div[i];
    }
    if (params.reaction.variant != ReactionVariant::Off) {
        const Field f = eval_reaction(state.u, params.reaction, nonlocal);
        for (std::size_t i = 0; i < work.size(); ++i) work[i] += dt * f[i];
    }
    if (!work.all_finite()) {
        next.status = RunStatus::StepFailure;
        return next;
    }

    // Implicit diffusion.
    next.u = solver.solve(1.0, dt, work);

    double clipped = 0.0;
    for (double& v : next.u.values()) {
        if (v < 0.0) {
            clipped -= v;
            v = 0.0;
        }
    }
    next.clipped_mass_cum += clipped * g.cell_volume();
    next.t = last ? controls.t_end : state.t + dt;
    next.dt = dt;
    next.step_index = state.step_index + 1;

    if (!next.u.all_finite()) {
        next.status = RunStatus::StepFailure;
        return next;
    }
    next.c = solve_chemical(solver, next.u, params.xi);

    if (next.u.max_abs() > controls.u_blowup) {
        next.status = RunStatus::BlowupDetected;
    } else if (last) {
        next.status = RunStatus::Finished;
    }
    return next;
}

RunState step(const RunState& state, const ModelParams& params, const StepControls& controls) {
    ScreenedPoissonSolver solver(state.u.grid());
    return step(state, params, controls, solver);
}

RunResult run(Field u0, const ModelParams& params, const StepControls& controls,
              const DiagnosticSpec& diag, const StepObserver& observer) {
    params.validate();
    controls.validate();
    if (diag.cadence_steps < 1) throw ParameterError("diagnostic cadence must be >= 1 step");

    RunResult result;
    result.series.k_list = diag.k_list.empty() ? default_k_list(params.reaction) : diag.k_list;
    const auto& k_list = result.series.k_list;

    const ScreenedPoissonSolver solver(u0.grid());
    RunState state = make_initial_state(solver, std::move(u0), params);
    if (observer) observer(state);

    try {
        while (state.status == RunStatus::Running) {
            const bool due = state.step_index % diag.cadence_steps == 0;
            std::optional<DiagnosticRow> row;
            if (due) row = make_row(state, params, k_list);

            RunState next = step(state, params, controls, solver);

            if (row) {
                const double dt = next.t - state.t;
                if (dt > 0.0 && next.status != RunStatus::StepFailure) {
                    for (std::size_t i = 0; i < k_list.size(); ++i) {
                        row->energy_resid[i] =
                            energy_budget_residual(state.u, next.u, state.c, dt, k_list[i], params);
                    }
                }
                result.series.rows.push_back(std::move(*row));
            }
            const bool advanced = next.t > state.t;
            state = std::move(next);
            if (observer && advanced) observer(state);
        }
    } catch (const std::exception& e) {
        state.status = RunStatus::StepFailure;
        result.error = e.what();
    }

    if (state.u.all_finite() &&
        (result.series.rows.empty() || result.series.rows.back().t < state.t)) {
        result.series.rows.push_back(make_row(state, params, k_list));
    }
    result.state = std::move(state);
    return result;
}

}  // namespace chemoflow
