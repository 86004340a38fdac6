#include <gtest/gtest.h>

#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <filesystem>

#include "chemoflow/errors.hpp"
#include "chemoflow/snapshot.hpp"
#include "chemoflow/stepper.hpp"

using namespace chemoflow;

namespace {

ModelParams nonlocal(double alpha, double beta, double chi = 1.0) {
    ModelParams p;
    p.chi = chi;
    p.reaction = {ReactionVariant::NonlocalLogistic, alpha, beta, 1.0};
    return p;
}

ModelParams heat() {
    ModelParams p;
    p.chi = 0.0;
    p.reaction.variant = ReactionVariant::Off;
    return p;
}

StepControls fixed_dt(double dt, double t_end) {
    StepControls c;
    c.dt_init = dt;
    c.dt_max = dt;
    c.dt_min = std::min(1e-10, dt);
    c.t_end = t_end;
    return c;
}

Field gaussian(const Grid& g, double amplitude, double width, double background = 0.0) {
    InitialCondition ic;
    ic.kind = InitialKind::Gaussian;
    ic.amplitude = amplitude;
    ic.width = width;
    ic.background = background;
    return make_initial_field(g, ic);
}

// Oracle: m' = m (1 - m^2), m(0) = 2, by Runge-Kutta-Fehlberg 7(8).
double homogeneous_oracle(double t_end) {
    namespace odeint = boost::numeric::odeint;
    std::vector<double> m{2.0};
    auto rhs = [](const std::vector<double>& x, std::vector<double>& dx, double) { dx[0] = x[0] * (1 - x[0] * x[0]); };
    odeint::integrate_adaptive(odeint::make_controlled(1e-14, 1e-14, odeint::runge_kutta_fehlberg78<std::vector<double>>()),
                               rhs, m, 0.0, t_end, 1e-4);
    return m[0];
}

}  // namespace

TEST(InitialCondition, KindsAndNonnegativity) {
    const Grid g = Grid::unit(2, 16);
    InitialCondition ic;
    ic.kind = InitialKind::Constant;
    ic.amplitude = 3.0;
    EXPECT_EQ(make_initial_field(g, ic), Field(g, 3.0));

    ic.kind = InitialKind::ConstantPlusNoise;
    ic.amplitude = 1.0;
    ic.noise = 5.0;
    const Field noisy = make_initial_field(g, ic);
    EXPECT_GE(noisy.min(), 0.0);
    EXPECT_GT(noisy.max(), 1.0);
    EXPECT_EQ(noisy, make_initial_field(g, ic));
    ic.seed = 2;
    EXPECT_NE(noisy, make_initial_field(g, ic));

    const Field gauss = gaussian(g, 2.0, 0.1, 1.0);
    EXPECT_NEAR(gauss.max(), 1.0 + 2.0 * std::exp(-2 * 0.03125 * 0.03125 / 0.02), 1e-12);
}

TEST(InitialCondition, SmoothRandomFieldIsZeroMeanUnitPeak) {
    const Field n = smooth_random_field(Grid::unit(3, 8), 5);
    EXPECT_NEAR(integrate(n), 0.0, 1e-14);
    EXPECT_NEAR(n.max_abs(), 1.0, 1e-15);
}

TEST(InitialCondition, SnapshotGridMustMatch) {
    const auto path = (std::filesystem::temp_directory_path() / "chemoflow_ic.chfs").string();
    write_snapshot(Field(Grid::unit(1, 8), 0.5), 0.0, path);
    InitialCondition ic;
    ic.kind = InitialKind::FromSnapshot;
    ic.snapshot = path;
    EXPECT_EQ(make_initial_field(Grid::unit(1, 8), ic), Field(Grid::unit(1, 8), 0.5));
    EXPECT_THROW(make_initial_field(Grid::unit(1, 16), ic), ConfigError);
    std::filesystem::remove(path);
}

TEST(InitialCondition, KindNames) {
    for (auto k : {InitialKind::Constant, InitialKind::Gaussian, InitialKind::ConstantPlusNoise, InitialKind::FromSnapshot}) {
        EXPECT_EQ(initial_kind_from_string(to_string(k)), k);
    }
    EXPECT_THROW(initial_kind_from_string("bump"), ParameterError);
}

TEST(Step, HomogeneousSteadyStateIsFixed) {
    const Grid g = Grid::unit(2, 16);
    const ModelParams p = nonlocal(2.0, 2.0);
    const ScreenedPoissonSolver solver(g);
    RunState s = make_initial_state(solver, Field(g, 1.0), p);
    StepControls c;
    c.t_end = 10.0;
    for (int i = 0; i < 100; ++i) {
        const RunState next = step(s, p, c, solver);
        double diff = 0.0;
        for (std::size_t j = 0; j < g.size(); ++j) diff = std::max(diff, std::abs(next.u[j] - s.u[j]));
        EXPECT_LE(diff, 1e-12);
        s = next;
    }
}

TEST(Step, HeatEquationConservesMassPerStep) {
    const Grid g = Grid::unit(2, 32);
    const ScreenedPoissonSolver solver(g);
    RunState s = make_initial_state(solver, gaussian(g, 3.0, 0.1, 0.2), heat());
    const double m0 = integrate(s.u);
    const StepControls c = fixed_dt(1e-3, 1.0);
    for (int i = 0; i < 200; ++i) {
        const RunState next = step(s, heat(), c, solver);
        EXPECT_LE(std::abs(integrate(next.u) - integrate(s.u)), 1e-13 * m0);
        s = next;
    }
}

TEST(Step, HomogeneousReductionMatchesOde) {
    const Grid g = Grid::unit(1, 4);
    const ModelParams p = nonlocal(1.0, 2.0, 0.0);
    const StepControls c = fixed_dt(2e-7, 1.0);
    const RunResult r = run(Field(g, 2.0), p, c, {1 << 30, {}});
    ASSERT_EQ(r.state.status, RunStatus::Finished);
    const double m1 = homogeneous_oracle(1.0);
    for (double v : r.state.u.values()) EXPECT_NEAR(v, m1, 1e-6);
}

TEST(Step, RejectsNonRunningState) {
    RunState s;
    s.status = RunStatus::Finished;
    EXPECT_THROW(step(s, ModelParams{}, StepControls{}), Error);
}

TEST(Step, ClampsToEndTime) {
    const Grid g = Grid::unit(1, 8);
    const ScreenedPoissonSolver solver(g);
    RunState s = make_initial_state(solver, Field(g, 1.0), heat());
    StepControls c = fixed_dt(0.3, 0.5);
    s = step(s, heat(), c, solver);
    EXPECT_EQ(s.status, RunStatus::Running);
    s = step(s, heat(), c, solver);
    EXPECT_EQ(s.status, RunStatus::Finished);
    EXPECT_EQ(s.t, 0.5);
    EXPECT_NEAR(s.dt, 0.2, 1e-15);
}

TEST(Step, LinfThresholdTriggersBlowup) {
    const Grid g = Grid::unit(1, 8);
    StepControls c;
    c.u_blowup = 0.5;
    const RunResult r = run(Field(g, 1.0), heat(), c, {});
    EXPECT_EQ(r.state.status, RunStatus::BlowupDetected);
    EXPECT_EQ(r.state.step_index, 1);
}

TEST(Step, StepCollapseTriggersBlowup) {
    const Grid g = Grid::unit(2, 32);
    StepControls c;
    c.dt_min = 1e-3;
    c.dt_init = 1e-3;
    const RunResult r = run(gaussian(g, 1e4, 0.05), nonlocal(2.0, 2.0), c, {});
    EXPECT_EQ(r.state.status, RunStatus::BlowupDetected);
    EXPECT_EQ(r.state.step_index, 0);
}

TEST(Run, ZeroStaysZero) {
    const Grid g = Grid::unit(2, 8);
    StepControls c;
    c.t_end = 0.5;
    const RunResult r = run(Field(g), nonlocal(2.0, 3.0), c, {});
    EXPECT_EQ(r.state.status, RunStatus::Finished);
    EXPECT_EQ(r.state.u.max_abs(), 0.0);
}

TEST(Run, RejectsNegativeInitialData) {
    Field u(Grid::unit(1, 8), 1.0);
    u[0] = -1.0;
    EXPECT_THROW(run(u, heat(), StepControls{}, {}), InputError);
}

TEST(Run, RowsAtCadenceAndFinalRow) {
    const Grid g = Grid::unit(1, 8);
    const StepControls c = fixed_dt(0.01, 0.255);
    const RunResult r = run(Field(g, 1.0), heat(), c, {10, {}});
    EXPECT_EQ(r.state.step_index, 26);
    ASSERT_EQ(r.series.rows.size(), 4u);  // steps 0, 10, 20 and the final state
    EXPECT_EQ(r.series.rows[0].t, 0.0);
    EXPECT_EQ(r.series.rows.back().t, 0.255);
    EXPECT_TRUE(std::isnan(r.series.rows.back().energy_resid[0]));
    for (std::size_t i = 1; i < r.series.rows.size(); ++i) EXPECT_GT(r.series.rows[i].t, r.series.rows[i - 1].t);
}

TEST(Run, CoveredSmokeRunKeepsPositivityWithoutClipping) {
    const Grid g = Grid::unit(2, 32);
    StepControls c;
    c.t_end = 1.0;
    const ModelParams p = nonlocal(2.0, 2.0);
    RunState prev;
    bool have_prev = false;
    const RunResult r = run(gaussian(g, 20.0, 0.1, 0.5), p, c, {}, [&](const RunState& s) {
        EXPECT_GE(s.u.min(), 0.0);
        if (have_prev) EXPECT_LE(s.clipped_mass_cum - prev.clipped_mass_cum, 1e-8 * integrate(s.u));
        prev = s;
        have_prev = true;
    });
    EXPECT_EQ(r.state.status, RunStatus::Finished);
}

TEST(Run, Deterministic) {
    const Grid g = Grid::unit(2, 16);
    InitialCondition ic;
    ic.kind = InitialKind::ConstantPlusNoise;
    ic.noise = 0.5;
    ic.seed = 17;
    StepControls c;
    c.t_end = 0.3;
    const RunResult a = run(make_initial_field(g, ic), nonlocal(2.0, 2.0), c, {3, {}});
    const RunResult b = run(make_initial_field(g, ic), nonlocal(2.0, 2.0), c, {3, {}});
    ASSERT_EQ(a.series.rows.size(), b.series.rows.size());
    for (std::size_t i = 0; i < a.series.rows.size(); ++i) {
        const auto& x = a.series.rows[i];
        const auto& y = b.series.rows[i];
        EXPECT_EQ(x.t, y.t);
        EXPECT_EQ(x.lk, y.lk);
        EXPECT_EQ(x.linf, y.linf);
        for (std::size_t k = 0; k < x.energy_resid.size(); ++k) {
            EXPECT_TRUE(x.energy_resid[k] == y.energy_resid[k] ||
                        (std::isnan(x.energy_resid[k]) && std::isnan(y.energy_resid[k])));
        }
    }
    EXPECT_EQ(a.state.u, b.state.u);
}

TEST(Run, FirstOrderInTime) {
    const Grid g = Grid::unit(2, 16);
    const ModelParams p = nonlocal(2.0, 2.0);
    const Field u0 = gaussian(g, 2.0, 0.15, 0.5);
    std::vector<double> l2;
    for (double dt : {4e-3, 2e-3, 1e-3, 5e-4}) {
        const RunResult r = run(u0, p, fixed_dt(dt, 0.4), {1 << 30, {}});
        ASSERT_EQ(r.state.status, RunStatus::Finished);
        l2.push_back(lk_norm(r.state.u, 2.0));
    }
    for (std::size_t i = 0; i + 2 < l2.size(); ++i) {
        const double slope = std::log2(std::abs(l2[i] - l2[i + 1]) / std::abs(l2[i + 1] - l2[i + 2]));
        EXPECT_GE(slope, 0.9) << i;
    }
}
