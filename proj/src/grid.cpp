#include "chemoflow/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "chemoflow/errors.hpp"

namespace chemoflow {

namespace {

// Calls fn(lo, hi) for every interior face normal to `axis`, where lo/hi are
// the linear indices of the two adjacent cells.
template <class Fn>
void for_each_face(const Grid& g, int axis, Fn&& fn) {
    const auto& n = g.cells();
    const std::size_t s = g.stride(axis);
    std::array<std::size_t, 3> hi_bound = n;
    hi_bound[axis] -= 1;
    for (std::size_t k = 0; k < hi_bound[2]; ++k) {
        for (std::size_t j = 0; j < hi_bound[1]; ++j) {
            const std::size_t row = n[0] * (j + n[1] * k);
            for (std::size_t i = 0; i < hi_bound[0]; ++i) {
                fn(row + i, row + i + s);
            }
        }
    }
}

}  // namespace

Grid::Grid(int dim, std::array<std::size_t, 3> cells, std::array<double, 3> lengths)
    : dim_(dim), cells_(cells), lengths_(lengths) {
    if (dim < 1 || dim > 3) {
        throw ParameterError("grid dimension must be 1, 2 or 3, got " + std::to_string(dim));
    }
    for (int a = 0; a < 3; ++a) {
        if (a < dim) {
            if (cells_[a] < kMinCells) {
                throw ParameterError("grid axis " + std::to_string(a) + " needs at least " +
                                     std::to_string(kMinCells) + " cells");
            }
            if (!(lengths_[a] > 0.0) || !std::isfinite(lengths_[a])) {
                throw ParameterError("grid axis " + std::to_string(a) + " length must be positive");
            }
        } else {
            cells_[a] = 1;
            lengths_[a] = 1.0;
        }
        spacing_[a] = lengths_[a] / static_cast<double>(cells_[a]);
    }
    cell_volume_ = spacing_[0] * spacing_[1] * spacing_[2];
}

Grid Grid::unit(int dim, std::size_t n) { return Grid(dim, {n, n, n}, {1.0, 1.0, 1.0}); }

std::array<std::size_t, 3> Grid::multi_index(std::size_t idx) const {
    const std::size_t i = idx % cells_[0];
    const std::size_t rest = idx / cells_[0];
    return {i, rest % cells_[1], rest / cells_[1]};
}

Point Grid::center(std::size_t idx) const {
    const auto m = multi_index(idx);
    Point p{0.0, 0.0, 0.0};
    for (int a = 0; a < dim_; ++a) {
        p[a] = (static_cast<double>(m[a]) + 0.5) * spacing_[a];
    }
    return p;
}

Field::Field(Grid grid, double value) : grid_(std::move(grid)), values_(grid_.size(), value) {}

Field::Field(Grid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_.size()) {
        throw InputError("field has " + std::to_string(values_.size()) + " values, grid has " +
                         std::to_string(grid_.size()) + " cells");
    }
}

Field Field::from_function(const Grid& grid, const std::function<double(const Point&)>& fn) {
    Field f(grid);
    for (std::size_t i = 0; i < f.size(); ++i) {
        f[i] = fn(grid.center(i));
    }
    return f;
}

bool Field::all_finite() const {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

double Field::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

double Field::min() const { return *std::min_element(values_.begin(), values_.end()); }
double Field::max() const { return *std::max_element(values_.begin(), values_.end()); }

void require_same_grid(const Field& a, const Field& b, const char* what) {
    if (!(a.grid() == b.grid())) {
        throw GridMismatchError(std::string(what) + ": fields live on different grids");
    }
}

double integrate(const Field& f) {
    double sum = 0.0;
    for (double v : f.values()) {
        if (!std::isfinite(v)) throw InputError("integrate: non-finite value in field");
        sum += v;
    }
    return f.grid().cell_volume() * sum;
}

double lk_norm(const Field& f, double k) {
    if (std::isnan(k) || k < 1.0) {
        throw ParameterError("lk_norm: exponent k must be >= 1, got " + std::to_string(k));
    }
    if (k == kInfinityNorm) {
        if (!f.all_finite()) throw InputError("lk_norm: non-finite value in field");
        return f.max_abs();
    }
    double sum = 0.0;
    for (double v : f.values()) {
        if (!std::isfinite(v)) throw InputError("lk_norm: non-finite value in field");
        sum += (k == 1.0) ? std::abs(v) : std::pow(std::abs(v), k);
    }
    return std::pow(f.grid().cell_volume() * sum, 1.0 / k);
}

double gradient_sq_integral(const Field& f) {
    const Grid& g = f.grid();
    double total = 0.0;
    for (int a = 0; a < g.dim(); ++a) {
        const double inv_h = 1.0 / g.spacing(a);
        for_each_face(g, a, [&](std::size_t lo, std::size_t hi) {
            const double d = (f[hi] - f[lo]) * inv_h;
            total += d * d;
        });
    }
    if (!std::isfinite(total)) throw InputError("gradient_sq_integral: non-finite value in field");
    return total * g.cell_volume();
}

Field advective_divergence(const Field& u, const Field& c) {
    require_same_grid(u, c, "advective_divergence");
    const Grid& g = u.grid();
    Field out(g);
    for (int a = 0; a < g.dim(); ++a) {
        const double inv_h = 1.0 / g.spacing(a);
        for_each_face(g, a, [&](std::size_t lo, std::size_t hi) {
            const double vel = (c[hi] - c[lo]) * inv_h;
            const double flux = vel * (vel > 0.0 ? u[lo] : u[hi]) * inv_h;
            out[lo] += flux;
            out[hi] -= flux;
        });
    }
    return out;
}

Field laplacian(const Field& f) {
    const Grid& g = f.grid();
    Field out(g);
    for (int a = 0; a < g.dim(); ++a) {
        const double inv_h2 = 1.0 / (g.spacing(a) * g.spacing(a));
        for_each_face(g, a, [&](std::size_t lo, std::size_t hi) {
            const double d = (f[hi] - f[lo]) * inv_h2;
            out[lo] += d;
            out[hi] -= d;
        });
    }
    return out;
}

Field pointwise_pow(const Field& f, double p) {
    Field out(f.grid());
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double v = std::abs(f[i]);
        out[i] = (v == 0.0) ? 0.0 : (p == 1.0 ? v : std::pow(v, p));
    }
    return out;
}

double inner_product(const Field& a, const Field& b) {
    require_same_grid(a, b, "inner_product");
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
    return sum * a.grid().cell_volume();
}

}  // namespace chemoflow
