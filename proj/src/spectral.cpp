#include "chemoflow/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

#include "chemoflow/errors.hpp"

namespace chemoflow {

namespace {

// The FFTW planner is not reentrant; execution of existing plans is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

struct ScreenedPoissonSolver::Plans {
    Grid grid;
    fftw_plan forward = nullptr;   // REDFT10 on every axis
    fftw_plan backward = nullptr;  // REDFT01 on every axis
    std::array<std::vector<double>, 3> eigen;
    double normalization = 1.0;

    explicit Plans(const Grid& g) : grid(g) {
        const int rank = g.dim();
        // FFTW is row-major (last index fastest); our first axis is fastest.
        std::array<int, 3> n{};
        std::array<fftw_r2r_kind, 3> fwd{};
        std::array<fftw_r2r_kind, 3> bwd{};
        for (int r = 0; r < rank; ++r) {
            n[r] = static_cast<int>(g.cells(rank - 1 - r));
            fwd[r] = FFTW_REDFT10;
            bwd[r] = FFTW_REDFT01;
        }
        for (int a = 0; a < 3; ++a) {
            const std::size_t cells = g.cells(a);
            eigen[a].resize(cells, 0.0);
            if (a >= rank) continue;
            const double h = g.spacing(a);
            for (std::size_t j = 0; j < cells; ++j) {
                eigen[a][j] = (2.0 / (h * h)) *
                              (1.0 - std::cos(std::numbers::pi * static_cast<double>(j) /
                                              static_cast<double>(cells)));
            }
            normalization *= 2.0 * static_cast<double>(cells);
        }

        std::vector<double> scratch(g.size());
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        std::lock_guard lock(planner_mutex());
        forward = fftw_plan_r2r(rank, n.data(), scratch.data(), scratch.data(), fwd.data(), flags);
        backward = fftw_plan_r2r(rank, n.data(), scratch.data(), scratch.data(), bwd.data(), flags);
        if (forward == nullptr || backward == nullptr) {
            throw Error("cosine transform planning failed");
        }
    }

    ~Plans() {
        std::lock_guard lock(planner_mutex());
        if (forward != nullptr) fftw_destroy_plan(forward);
        if (backward != nullptr) fftw_destroy_plan(backward);
    }

    Plans(const Plans&) = delete;
    Plans& operator=(const Plans&) = delete;
};

ScreenedPoissonSolver::ScreenedPoissonSolver(const Grid& grid)
    : plans_(std::make_unique<Plans>(grid)) {}

ScreenedPoissonSolver::~ScreenedPoissonSolver() = default;
ScreenedPoissonSolver::ScreenedPoissonSolver(ScreenedPoissonSolver&&) noexcept = default;
ScreenedPoissonSolver& ScreenedPoissonSolver::operator=(ScreenedPoissonSolver&&) noexcept = default;

const Grid& ScreenedPoissonSolver::grid() const { return plans_->grid; }

double ScreenedPoissonSolver::axis_eigenvalue(int axis, std::size_t j) const {
    return plans_->eigen.at(axis).at(j);
}

Field ScreenedPoissonSolver::solve(double a, double b, const Field& rhs) const {
    if (!(a > 0.0) || !std::isfinite(a)) {
        throw ParameterError("screened Poisson: a must be > 0, got " + std::to_string(a));
    }
    if (!(b >= 0.0) || !std::isfinite(b)) {
        throw ParameterError("screened Poisson: b must be >= 0, got " + std::to_string(b));
    }
    if (!(rhs.grid() == plans_->grid)) {
        throw GridMismatchError("screened Poisson: rhs grid differs from solver grid");
    }
    if (!rhs.all_finite()) {
        throw InputError("screened Poisson: non-finite value in rhs");
    }
    if (b == 0.0) {
        Field x = rhs;
        for (double& v : x.values()) v /= a;
        return x;
    }

    Field x = rhs;
    double* data = x.data().data();
    fftw_execute_r2r(plans_->forward, data, data);

    const Grid& g = plans_->grid;
    const auto& e = plans_->eigen;
    const double scale = 1.0 / plans_->normalization;
    std::size_t idx = 0;
    for (std::size_t k = 0; k < g.cells(2); ++k) {
        for (std::size_t j = 0; j < g.cells(1); ++j) {
            const double ejk = e[1][j] + e[2][k];
            for (std::size_t i = 0; i < g.cells(0); ++i, ++idx) {
                data[idx] *= scale / (a + b * (e[0][i] + ejk));
            }
        }
    }

    fftw_execute_r2r(plans_->backward, data, data);
    return x;
}

Field screened_poisson_solve(const ScreenedPoissonProblem& problem) {
    if (!(problem.a > 0.0)) {
        throw ParameterError("screened Poisson: a must be > 0, got " + std::to_string(problem.a));
    }
    ScreenedPoissonSolver solver(problem.rhs.grid());
    return solver.solve(problem.a, problem.b, problem.rhs);
}

Field solve_chemical(const ScreenedPoissonSolver& solver, const Field& u, double xi) {
    if (!(xi > 0.0 && xi <= 1.0)) {
        throw ParameterError("solve_chemical: xi must lie in (0, 1], got " + std::to_string(xi));
    }
    for (double v : u.values()) {
        if (v < -1e-12) throw InputError("solve_chemical: negative density " + std::to_string(v));
    }
    Field source(u.grid());
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double v = std::max(u[i], 0.0);
        source[i] = (xi == 1.0 || v == 0.0) ? v : std::pow(v, xi);
    }
    Field c = solver.solve(1.0, 1.0, source);
    const double floor = -1e-12 * source.max_abs();
    for (double& v : c.values()) {
        if (v < 0.0) {
            if (v < floor) {
                throw Error("solve_chemical: chemical concentration " + std::to_string(v) +
                            " violates the discrete maximum principle");
            }
            v = 0.0;
        }
    }
    return c;
}

Field solve_chemical(const Field& u, double xi) {
    ScreenedPoissonSolver solver(u.grid());
    return solve_chemical(solver, u, xi);
}

}  // namespace chemoflow
