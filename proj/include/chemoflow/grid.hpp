#pragma once

// Uniform cell-centered box grids, scalar fields on them, midpoint
// quadrature and the Neumann finite-difference stencils used by the solver.

#include <array>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace chemoflow {

using Point = std::array<double, 3>;

class Grid {
public:
    static constexpr std::size_t kMinCells = 4;

    // Smallest admissible grid: [0,1] with four cells.
    Grid() : Grid(1, {kMinCells, 1, 1}, {1.0, 1.0, 1.0}) {}

    // Unused axes (axis >= dim) are stored as one cell of unit length.
    Grid(int dim, std::array<std::size_t, 3> cells, std::array<double, 3> lengths);

    // [0,1]^dim with n cells per axis, so |Omega| = 1.
    static Grid unit(int dim, std::size_t n);

    int dim() const { return dim_; }
    std::size_t cells(int axis) const { return cells_[axis]; }
    const std::array<std::size_t, 3>& cells() const { return cells_; }
    double length(int axis) const { return lengths_[axis]; }
    const std::array<double, 3>& lengths() const { return lengths_; }
    double spacing(int axis) const { return spacing_[axis]; }

    std::size_t size() const { return cells_[0] * cells_[1] * cells_[2]; }
    double cell_volume() const { return cell_volume_; }
    double measure() const { return lengths_[0] * lengths_[1] * lengths_[2]; }

    // Distance between linear indices of neighbours along `axis`.
    std::size_t stride(int axis) const {
        return axis == 0 ? 1 : axis == 1 ? cells_[0] : cells_[0] * cells_[1];
    }
    std::size_t index(std::size_t i, std::size_t j = 0, std::size_t k = 0) const {
        return i + cells_[0] * (j + cells_[1] * k);
    }
    std::array<std::size_t, 3> multi_index(std::size_t idx) const;
    Point center(std::size_t idx) const;

    friend bool operator==(const Grid& a, const Grid& b) {
        return a.dim_ == b.dim_ && a.cells_ == b.cells_ && a.lengths_ == b.lengths_;
    }

private:
    int dim_;
    std::array<std::size_t, 3> cells_;
    std::array<double, 3> lengths_;
    std::array<double, 3> spacing_;
    double cell_volume_;
};

// One real value per cell, first axis fastest.
class Field {
public:
    Field() : Field(Grid()) {}
    explicit Field(Grid grid, double value = 0.0);
    Field(Grid grid, std::vector<double> values);

    static Field from_function(const Grid& grid, const std::function<double(const Point&)>& fn);

    const Grid& grid() const { return grid_; }
    std::size_t size() const { return values_.size(); }

    double& operator[](std::size_t i) { return values_[i]; }
    double operator[](std::size_t i) const { return values_[i]; }

    std::span<double> values() & { return values_; }
    std::span<const double> values() const& { return values_; }
    std::span<const double> values() && = delete;  // would dangle
    std::vector<double>& data() { return values_; }
    const std::vector<double>& data() const { return values_; }

    bool all_finite() const;
    double max_abs() const;
    double min() const;
    double max() const;

    friend bool operator==(const Field&, const Field&) = default;

private:
    Grid grid_;
    std::vector<double> values_;
};

inline constexpr double kInfinityNorm = std::numeric_limits<double>::infinity();

// Midpoint rule: cell volume times the sum of values.
double integrate(const Field& f);

// (integrate |f|^k)^(1/k); k == kInfinityNorm gives max |f|.
double lk_norm(const Field& f, double k);

// Sum over interior faces of the squared face difference quotient, times cell
// volume. Boundary faces carry no gradient (zero normal derivative).
double gradient_sq_integral(const Field& f);

// Discrete div(u grad c) in conservative flux form with first-order upwinding
// of u on the sign of the face velocity; zero flux through the boundary.
Field advective_divergence(const Field& u, const Field& c);

// Neumann ghost-cell Laplacian (3/5/7-point stencil).
Field laplacian(const Field& f);

// |v|^p pointwise, with 0^p = 0.
Field pointwise_pow(const Field& f, double p);

// L2 inner product with midpoint weights.
double inner_product(const Field& a, const Field& b);

void require_same_grid(const Field& a, const Field& b, const char* what);

}  // namespace chemoflow
