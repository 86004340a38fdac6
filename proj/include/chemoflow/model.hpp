#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "chemoflow/grid.hpp"
#include "chemoflow/reaction.hpp"

namespace chemoflow {

// u_t = Lap u - chi div(u^sigma grad c) + f(u),  -Lap c + c = u^xi.
// The defaults chi = sigma = xi = 1 give the model studied for boundedness.
struct ModelParams {
    double chi = 1.0;
    double sigma = 1.0;
    double xi = 1.0;
    ReactionSpec reaction;
    // Dimension fed to the regime classifier; independent of the grid.
    int theory_n = 3;

    void validate() const;

    friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

struct StepControls {
    double dt_init = 1e-4;
    double dt_min = 1e-10;
    double dt_max = 1e-2;
    double cfl_advect = 0.5;
    double cfl_react = 0.5;
    double u_blowup = 1e6;
    double t_end = 1.0;

    void validate() const;

    friend bool operator==(const StepControls&, const StepControls&) = default;
};

enum class RunStatus { Running, Finished, BlowupDetected, StepFailure };

std::string_view to_string(RunStatus s);

struct RunState {
    double t = 0.0;
    double dt = 0.0;  // last step size taken
    Field u;
    Field c;  // solves the chemical equation for the current u
    std::int64_t step_index = 0;
    double clipped_mass_cum = 0.0;
    RunStatus status = RunStatus::Running;
};

}  // namespace chemoflow
