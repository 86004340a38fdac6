// Command-line front end: single runs, (alpha, beta) sweeps, the regime
// classifier and the lemma verification report.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "chemoflow/config.hpp"
#include "chemoflow/errors.hpp"
#include "chemoflow/io.hpp"
#include "chemoflow/snapshot.hpp"
#include "chemoflow/stepper.hpp"
#include "chemoflow/sweep.hpp"
#include "chemoflow/verify.hpp"

namespace fs = std::filesystem;
using namespace chemoflow;

namespace {

constexpr const char* kVersion = "chemoflow 0.1.0";

enum Exit { kOk = 0, kUsage = 1, kNumerical = 2, kBlowup = 3 };

std::string snapshot_name(std::int64_t step) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "snapshot_%08lld.chfs", static_cast<long long>(step));
    return buf;
}

std::string describe_regime(const ModelParams& m) {
    if (m.reaction.variant != ReactionVariant::NonlocalLogistic) {
        return "not applicable (reaction " + std::string(to_string(m.reaction.variant)) + ")";
    }
    const RegimeVerdict v = classify_regime(m.theory_n, m.reaction.alpha, m.reaction.beta);
    return std::string(to_string(v.verdict)) + " (n=" + std::to_string(m.theory_n) + ")";
}

int cmd_run(const std::string& config_path, const std::string& out_dir) {
    RunConfig cfg;
    try {
        cfg = parse_config(read_text_file(config_path));
    } catch (const Error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kUsage;
    }
    fs::create_directories(out_dir);
    const fs::path out(out_dir);

    const std::string regime = describe_regime(cfg.model);
    std::cout << "regime: " << regime << '\n';
    if (cfg.dimension != cfg.model.theory_n) {
        std::cerr << "warning: grid dimension " << cfg.dimension << " differs from model.theory_n "
                  << cfg.model.theory_n << "; the regime verdict refers to theory_n\n";
    }

    Field u0;
    try {
        u0 = make_initial_field(cfg.grid(), cfg.initial);
    } catch (const Error& e) {
        std::cerr << "initial condition error: " << e.what() << '\n';
        return kUsage;
    }

    const std::int64_t every = cfg.output.snapshot_every;
    StepObserver observer;
    if (every > 0) {
        observer = [&](const RunState& s) {
            if (s.step_index % every == 0) write_snapshot(s.u, s.t, (out / snapshot_name(s.step_index)).string());
        };
    }

    const RunResult result = run(std::move(u0), cfg.model, cfg.time, cfg.diagnostics(), observer);
    write_diagnostics_csv(result.series, (out / "diagnostics.csv").string());
    if (result.state.u.all_finite()) {
        write_snapshot(result.state.u, result.state.t, (out / "final.chfs").string());
    }

    std::ofstream summary(out / "summary.txt", std::ios::trunc);
    summary << "status: " << to_string(result.state.status) << '\n'
            << "t_stop: " << format_number(result.state.t) << '\n'
            << "steps: " << result.state.step_index << '\n'
            << "regime: " << regime << '\n';
    if (!result.error.empty()) summary << "error: " << result.error << '\n';

    std::cout << "status: " << to_string(result.state.status) << " at t = " << format_number(result.state.t)
              << " after " << result.state.step_index << " steps\n";
    if (!result.error.empty()) std::cerr << "error: " << result.error << '\n';

    switch (result.state.status) {
        case RunStatus::Finished: return kOk;
        case RunStatus::BlowupDetected: return kBlowup;
        default: return kNumerical;
    }
}

int cmd_sweep(const std::string& config_path, const std::string& out_dir) {
    SweepConfig cfg;
    try {
        cfg = parse_sweep_config(read_text_file(config_path));
    } catch (const Error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kUsage;
    }
    const auto rows = run_sweep(cfg);
    fs::create_directories(out_dir);
    std::ofstream out(fs::path(out_dir) / "regime_map.csv", std::ios::trunc | std::ios::binary);
    write_regime_csv(rows, out);
    std::cout << rows.size() << " jobs written to " << (fs::path(out_dir) / "regime_map.csv").string() << '\n';
    return kOk;
}

int cmd_classify(int n, double alpha, double beta, std::optional<double> xi) {
    try {
        const RegimeVerdict v = classify_regime(n, alpha, beta);
        std::cout << to_string(v.verdict) << '\n';
        std::cout << "lhs = " << format_number(v.lhs) << ", rhs = " << format_number(v.rhs) << '\n';
        std::cout << "beta > n/2: " << (collapse_threshold_hint(n, beta) ? "yes" : "no") << '\n';
        if (xi) {
            std::cout << "sublinear production (xi = " << format_number(*xi)
                      << "): " << (classify_sublinear(n, *xi, beta) ? "covered" : "not covered") << '\n';
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kOk;
}

int cmd_verify(int cases, std::uint64_t seed, int workers, const std::string& out_dir) {
    LemmaOptions opt;
    opt.cases = cases;
    opt.seed = seed;
    opt.workers = workers;
    const LemmaReport report = verify_lemmas(opt);
    write_lemma_report(report, out_dir);
    std::cout << lemma_summary(report);
    return report.iteration_passed() && report.interpolation_stable() ? kOk : kNumerical;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Parabolic-elliptic chemotaxis solver with nonlocal logistic reaction"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    std::string config, out;
    auto* run_cmd = app.add_subcommand("run", "Run one simulation");
    run_cmd->add_option("--config", config, "JSON run configuration")->required()->check(CLI::ExistingFile);
    run_cmd->add_option("--out", out, "Output directory")->required();

    auto* sweep_cmd = app.add_subcommand("sweep", "Sweep the (alpha, beta) plane");
    sweep_cmd->add_option("--config", config, "JSON sweep configuration")->required()->check(CLI::ExistingFile);
    sweep_cmd->add_option("--out", out, "Output directory")->required();

    int n = 3;
    double alpha = 0.0, beta = 0.0;
    std::optional<double> xi;
    auto* classify_cmd = app.add_subcommand("classify", "Classify (n, alpha, beta) against the boundedness conditions");
    classify_cmd->add_option("--n", n, "Space dimension")->required();
    classify_cmd->add_option("--alpha", alpha)->required();
    classify_cmd->add_option("--beta", beta)->required();
    classify_cmd->add_option("--xi", xi, "Sublinear production exponent");

    int cases = 50;
    std::uint64_t seed = 1;
    int workers = 1;
    auto* verify_cmd = app.add_subcommand("verify-lemmas", "Numerical checks of the interpolation and iteration lemmas");
    verify_cmd->add_option("--cases", cases, "Random iteration cases")->check(CLI::NonNegativeNumber);
    verify_cmd->add_option("--seed", seed);
    verify_cmd->add_option("--workers", workers)->check(CLI::PositiveNumber);
    verify_cmd->add_option("--out", out, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*run_cmd) return cmd_run(config, out);
        if (*sweep_cmd) return cmd_sweep(config, out);
        if (*classify_cmd) return cmd_classify(n, alpha, beta, xi);
        if (*verify_cmd) return cmd_verify(cases, seed, workers, out);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumerical;
    }
    return kUsage;
}
