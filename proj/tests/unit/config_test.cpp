#include <gtest/gtest.h>

#include <random>

#include "chemoflow/config.hpp"
#include "chemoflow/errors.hpp"

using namespace chemoflow;

namespace {

std::string error_of(const std::string& text) {
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

RunConfig random_config(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    RunConfig c;
    c.dimension = 1 + static_cast<int>(rng() % 3);
    for (int a = 0; a < 3; ++a) {
        c.cells[a] = a < c.dimension ? 4 + rng() % 60 : 1;
        c.lengths[a] = a < c.dimension ? 0.1 + 3 * u(rng) : 1.0;
    }
    c.model.chi = 2 * u(rng);
    c.model.sigma = 1 + u(rng);
    c.model.xi = 0.05 + 0.95 * u(rng);
    c.model.theory_n = 3 + static_cast<int>(rng() % 4);
    const auto variant = static_cast<ReactionVariant>(rng() % 3);
    c.model.reaction = {variant, 1 + 3 * u(rng), 1.0001 + 4 * u(rng), 0.1 + u(rng)};
    c.initial.kind = static_cast<InitialKind>(rng() % 3);
    c.initial.amplitude = 10 * u(rng);
    c.initial.background = u(rng);
    for (int a = 0; a < 3; ++a) c.initial.center[a] = a < c.dimension ? u(rng) : 0.5;
    c.initial.width = 0.01 + u(rng);
    c.initial.noise = u(rng);
    c.initial.seed = rng() >> 12;
    c.time.dt_min = 1e-12 * (1 + u(rng));
    c.time.dt_init = 1e-5 * (1 + u(rng));
    c.time.dt_max = 1e-3 * (1 + u(rng));
    c.time.cfl_advect = 0.1 + 0.9 * u(rng);
    c.time.cfl_react = 0.1 + u(rng);
    c.time.u_blowup = 1e3 + 1e7 * u(rng);
    c.time.t_end = 0.1 + 10 * u(rng);
    c.output.cadence_steps = 1 + static_cast<std::int64_t>(rng() % 100);
    c.output.snapshot_every = static_cast<std::int64_t>(rng() % 5);
    if (rng() & 1) c.output.norm_k_list = {1.0, 1 + u(rng), 7.25};
    return c;
}

}  // namespace

TEST(ParseConfig, MinimalFillsDefaults) {
    const RunConfig c = parse_config(R"({"dimension": 2, "grid": {"cells": 64},
                                         "model": {"reaction": {"variant": "off"}}})");
    EXPECT_EQ(c.dimension, 2);
    EXPECT_EQ(c.cells, (std::array<std::size_t, 3>{64, 64, 1}));
    EXPECT_EQ(c.model.chi, 1.0);
    EXPECT_EQ(c.model.sigma, 1.0);
    EXPECT_EQ(c.model.xi, 1.0);
    EXPECT_EQ(c.model.reaction.variant, ReactionVariant::Off);
    EXPECT_EQ(c.time, StepControls{});
    EXPECT_EQ(c.grid().measure(), 1.0);
}

TEST(ParseConfig, BetaHypothesisNamesKeyPath) {
    const std::string msg = error_of(R"({"dimension": 3, "model": {"reaction": {"variant": "nonlocal", "beta": 1.0}}})");
    EXPECT_NE(msg.find("reaction.beta"), std::string::npos) << msg;
}

TEST(ParseConfig, UnknownKeyRejectedWithPath) {
    const std::string msg = error_of(R"({"dimension": 3, "model": {"reaction": {"alpah": 2}}})");
    EXPECT_NE(msg.find("model.reaction.alpah"), std::string::npos) << msg;
}

TEST(ParseConfig, MissingDimensionAndTypeMismatch) {
    EXPECT_NE(error_of(R"({"grid": {"cells": 8}})").find("dimension"), std::string::npos);
    const std::string msg = error_of(R"({"dimension": 2, "time": {"t_end": "long"}})");
    EXPECT_NE(msg.find("time.t_end"), std::string::npos) << msg;
    EXPECT_NE(error_of("{not json").size(), 0u);
    EXPECT_NE(error_of(R"({"dimension": 2, "grid": {"cells": [8, 8, 8]}})").find("grid.cells"), std::string::npos);
    EXPECT_NE(error_of(R"({"dimension": 2, "time": {"dt_min": 1, "dt_init": 0.1}})").size(), 0u);
}

TEST(ParseConfig, RoundTripRandomConfigs) {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 200; ++i) {
        const RunConfig c = random_config(rng);
        const std::string text = serialize_config(c);
        const RunConfig back = parse_config(text);
        EXPECT_EQ(back, c) << text;
        EXPECT_EQ(serialize_config(back), text);
    }
}

TEST(ParseSweepConfig, RoundTripAndRequirements) {
    SweepConfig s;
    s.alpha_range = {2.0, 2.2, 3};
    s.beta_range = {2.0, 4.0, 5};
    s.worker_count = 8;
    s.base.dimension = 3;
    s.base.cells = {8, 8, 8};
    EXPECT_EQ(parse_sweep_config(serialize_sweep_config(s)), s);

    s.base.model.reaction.variant = ReactionVariant::Off;
    EXPECT_THROW(parse_sweep_config(serialize_sweep_config(s)), ConfigError);
    EXPECT_THROW(parse_sweep_config(R"({"alpha_range": {"min": 2}, "beta_range": {"min": 2, "count": 0},
                                        "base": {"dimension": 2}})"),
                 ConfigError);
}

TEST(Range, Endpoints) {
    const Range r{2.0, 2.2, 3};
    EXPECT_EQ(r.at(0), 2.0);
    EXPECT_EQ(r.at(2), 2.2);
    EXPECT_NEAR(r.at(1), 2.1, 1e-15);
    EXPECT_EQ((Range{1.5, 9.0, 1}).at(0), 1.5);
}
