#pragma once

// Time integration of the parabolic-elliptic system by operator splitting:
// explicit upwind advection and reaction, then an implicit diffusion solve
// (I - dt Lap_h) u' = u*. The chemical is re-solved after every step.

#include <array>
#include <cstdint>
#include <functional>
#include <string>

#include "chemoflow/diagnostics.hpp"
#include "chemoflow/model.hpp"
#include "chemoflow/spectral.hpp"

namespace chemoflow {

enum class InitialKind { Constant, Gaussian, ConstantPlusNoise, FromSnapshot };

std::string_view to_string(InitialKind k);
InitialKind initial_kind_from_string(std::string_view s);

// constant:            u0 = amplitude
// gaussian:            u0 = background + amplitude exp(-|x - center|^2 / (2 width^2))
// constant_plus_noise: u0 = max(0, amplitude (1 + noise * n(x))), n a smooth
//                      seeded random cosine series with max |n| = 1
// from_snapshot:       u0 read from `snapshot`
struct InitialCondition {
    InitialKind kind = InitialKind::Gaussian;
    double amplitude = 1.0;
    double background = 0.0;
    std::array<double, 3> center{0.5, 0.5, 0.5};
    double width = 0.1;
    double noise = 0.1;
    std::uint64_t seed = 1;
    std::string snapshot;

    friend bool operator==(const InitialCondition&, const InitialCondition&) = default;
};

Field make_initial_field(const Grid& grid, const InitialCondition& ic);

// Zero-mean smooth random field: seeded cosine modes up to max_mode per axis
// (each with zero normal derivative at the walls), scaled to max |n| = 1.
Field smooth_random_field(const Grid& grid, std::uint64_t seed, int max_mode = 3);

// Initial state: t = 0, c solved from u0. Throws InputError for negative or
// non-finite u0.
RunState make_initial_state(const ScreenedPoissonSolver& solver, Field u0, const ModelParams& params);

// One accepted step of the splitting scheme. The step size is the smallest of
// dt_max, dt_init (first step only), the advective and reactive CFL limits
// and the time left to t_end. A CFL limit below dt_min or a sup norm above
// u_blowup yields BlowupDetected; non-finite data yields StepFailure.
RunState step(const RunState& state, const ModelParams& params, const StepControls& controls,
              const ScreenedPoissonSolver& solver);
RunState step(const RunState& state, const ModelParams& params, const StepControls& controls);

struct DiagnosticSpec {
    std::int64_t cadence_steps = 10;
    std::vector<double> k_list;  // empty: default_k_list(reaction)
};

struct RunResult {
    RunState state;
    DiagnosticSeries series;
    std::string error;  // set when the run stopped on an exception
};

using StepObserver = std::function<void(const RunState&)>;

// Steps until t_end or a non-running status. A row is emitted at t = 0, every
// cadence_steps steps and at the final state; each row carries the energy
// residual of the step leaving it (NaN for the final row).
RunResult run(Field u0, const ModelParams& params, const StepControls& controls,
              const DiagnosticSpec& diag, const StepObserver& observer = {});

}  // namespace chemoflow
