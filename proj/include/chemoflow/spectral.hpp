#pragma once

// Direct solver for (a I - b Lap_h) x = rhs with homogeneous Neumann
// conditions. Lap_h is the ghost-cell finite-difference Laplacian from
// grid.hpp; the type-II cosine transform diagonalizes it exactly, so the
// solve is the exact inverse of the stencil operator up to rounding.

#include <array>
#include <memory>
#include <vector>

#include "chemoflow/grid.hpp"

namespace chemoflow {

struct ScreenedPoissonProblem {
    double a = 1.0;
    double b = 1.0;
    Field rhs;
};

class ScreenedPoissonSolver {
public:
    explicit ScreenedPoissonSolver(const Grid& grid);
    ~ScreenedPoissonSolver();

    ScreenedPoissonSolver(const ScreenedPoissonSolver&) = delete;
    ScreenedPoissonSolver& operator=(const ScreenedPoissonSolver&) = delete;
    ScreenedPoissonSolver(ScreenedPoissonSolver&&) noexcept;
    ScreenedPoissonSolver& operator=(ScreenedPoissonSolver&&) noexcept;

    const Grid& grid() const;

    // Safe to call concurrently on the same solver; plans are read-only.
    Field solve(double a, double b, const Field& rhs) const;

    // Eigenvalue of -Lap_h for the cosine mode `j` along `axis`:
    // (2/h^2)(1 - cos(pi j / N)).
    double axis_eigenvalue(int axis, std::size_t j) const;

private:
    struct Plans;
    std::unique_ptr<Plans> plans_;
};

Field screened_poisson_solve(const ScreenedPoissonProblem& problem);

// c solving -Lap_h c + c = u^xi. Tiny negative round-off in c is clipped to 0;
// anything below -1e-12 * max(u^xi) is reported as an error.
Field solve_chemical(const ScreenedPoissonSolver& solver, const Field& u, double xi);
Field solve_chemical(const Field& u, double xi);

}  // namespace chemoflow
