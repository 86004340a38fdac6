#include "chemoflow/model.hpp"

#include <cmath>
#include <string>

#include "chemoflow/errors.hpp"

namespace chemoflow {

void ModelParams::validate() const {
    if (!(chi >= 0.0) || !std::isfinite(chi)) throw ParameterError("chi must be >= 0");
    if (!(sigma >= 1.0) || !std::isfinite(sigma)) throw ParameterError("sigma must be >= 1");
    if (!(xi > 0.0 && xi <= 1.0)) throw ParameterError("xi must lie in (0, 1]");
    if (theory_n < 3) throw HypothesisError("theory_n must be >= 3");
    reaction.validate();
}

void StepControls::validate() const {
    if (!(dt_min > 0.0)) throw ParameterError("dt_min must be > 0");
    if (!(dt_min <= dt_init && dt_init <= dt_max)) {
        throw ParameterError("step controls need 0 < dt_min <= dt_init <= dt_max");
    }
    if (!(cfl_advect > 0.0 && cfl_advect <= 1.0)) throw ParameterError("cfl_advect must lie in (0, 1]");
    if (!(cfl_react > 0.0)) throw ParameterError("cfl_react must be > 0");
    if (!(u_blowup > 0.0)) throw ParameterError("u_blowup must be > 0");
    if (!(t_end > 0.0) || !std::isfinite(t_end)) throw ParameterError("t_end must be > 0");
}

std::string_view to_string(RunStatus s) {
    switch (s) {
        case RunStatus::Running: return "running";
        case RunStatus::Finished: return "finished";
        case RunStatus::BlowupDetected: return "blowup";
        case RunStatus::StepFailure: return "step_failure";
    }
    return "?";
}

}  // namespace chemoflow
