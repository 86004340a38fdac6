#pragma once

// JSON run and sweep configuration. Parsing is strict: unknown keys and type
// mismatches are rejected with the offending key path in the message.

#include <array>
#include <string>

#include "chemoflow/model.hpp"
#include "chemoflow/stepper.hpp"

namespace chemoflow {

struct OutputSpec {
    std::int64_t cadence_steps = 10;
    std::vector<double> norm_k_list;  // empty: {1, 2, beta+alpha, 2(beta+alpha)}
    std::int64_t snapshot_every = 0;  // 0 disables periodic snapshots

    friend bool operator==(const OutputSpec&, const OutputSpec&) = default;
};

struct RunConfig {
    int dimension = 2;
    std::array<std::size_t, 3> cells{64, 64, 1};
    std::array<double, 3> lengths{1.0, 1.0, 1.0};
    ModelParams model;
    InitialCondition initial;
    StepControls time;
    OutputSpec output;

    Grid grid() const { return Grid(dimension, cells, lengths); }
    DiagnosticSpec diagnostics() const { return {output.cadence_steps, output.norm_k_list}; }

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

struct Range {
    double min = 0.0;
    double max = 0.0;
    int count = 1;

    double at(int i) const;

    friend bool operator==(const Range&, const Range&) = default;
};

struct SweepConfig {
    Range alpha_range;
    Range beta_range;
    RunConfig base;
    int worker_count = 1;

    friend bool operator==(const SweepConfig&, const SweepConfig&) = default;
};

RunConfig parse_config(const std::string& text);
std::string serialize_config(const RunConfig& config);

SweepConfig parse_sweep_config(const std::string& text);
std::string serialize_sweep_config(const SweepConfig& config);

std::string read_text_file(const std::string& path);

}  // namespace chemoflow
