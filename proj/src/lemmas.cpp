#include "chemoflow/lemmas.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "chemoflow/diagnostics.hpp"
#include "chemoflow/errors.hpp"

namespace chemoflow {

namespace {

using State = std::vector<double>;

// Dormand-Prince 5(4) with the standard PI-free step controller. Calls
// `on_step(t, y)` after every accepted step, including the initial point.
template <class Rhs, class Observer>
void integrate_dopri5(Rhs&& rhs, State y, double t0, double t1, double rtol, double atol,
                      Observer&& on_step) {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    const std::size_t n = y.size();
    State k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n), y5(n);
    double t = t0;
    double h = 1e-6 * std::max(1.0, t1 - t0);
    rhs(t, y, k1);
    on_step(t, y);

    int rejected_in_row = 0;
    while (t < t1) {
        if (t + h > t1) h = t1 - t;
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * a21 * k1[i];
        rhs(t + c2 * h, tmp, k2);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        rhs(t + c3 * h, tmp, k3);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        rhs(t + c4 * h, tmp, k4);
        for (std::size_t i = 0; i < n; ++i)
            tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        rhs(t + c5 * h, tmp, k5);
        for (std::size_t i = 0; i < n; ++i)
            tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        rhs(t + h, tmp, k6);
        for (std::size_t i = 0; i < n; ++i)
            y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        rhs(t + h, y5, k7);

        double err = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            const double scale = atol + rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
            err = std::max(err, std::abs(e) / scale);
        }
        if (!std::isfinite(err)) {
            if (++rejected_in_row > 60) throw Error("iteration oracle: integrator diverged");
            h *= 0.1;
            continue;
        }
        if (err <= 1.0) {
            t += h;
            y.swap(y5);
            k1.swap(k7);
            on_step(t, y);
            rejected_in_row = 0;
        } else if (++rejected_in_row > 60) {
            throw Error("iteration oracle: step size underflow");
        }
        const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
        h *= factor;
    }
}

}  // namespace

double sobolev_exponent(int n) {
    if (n < 3) throw ParameterError("sobolev_exponent: n must be >= 3");
    return 2.0 * n / (n - 2.0);
}

double InterpolationCase::lambda() const { return (1.0 / r - 1.0 / q) / (1.0 / r - 1.0 / p()); }

double InterpolationCase::gamma() const {
    const double l = lambda();
    return 2.0 * (1.0 - l) * q / (2.0 - l * q);
}

double InterpolationCase::coefficient_exponent() const {
    const double l = lambda();
    return l * q / (2.0 - l * q);
}

void InterpolationCase::validate() const {
    if (n < 3) throw ParameterError("interpolation case: n >= 3 violated");
    const double pp = p();
    if (!(r >= 1.0)) throw ParameterError("interpolation case: 1 <= r violated");
    if (!(r < q)) throw ParameterError("interpolation case: r < q violated");
    if (!(q < pp)) throw ParameterError("interpolation case: q < p = 2n/(n-2) violated");
    if (!(q / r < 2.0 / r + 1.0 - 2.0 / pp)) {
        throw ParameterError("interpolation case: q/r < 2/r + 1 - 2/p violated (q/r = " +
                             std::to_string(q / r) + ", bound = " + std::to_string(2.0 / r + 1.0 - 2.0 / pp) + ")");
    }
    if (!(C0 > 0.0) || !(C1 > 0.0)) throw ParameterError("interpolation case: C0, C1 > 0 violated");
}

InterpolationCheck check_interpolation(const InterpolationCase& c, const Field& v) {
    c.validate();
    if (v.grid().dim() != c.n) {
        throw ParameterError("check_interpolation: field dimension " + std::to_string(v.grid().dim()) +
                             " differs from n = " + std::to_string(c.n));
    }
    if (v.max_abs() == 0.0) throw InputError("check_interpolation: v vanishes identically");

    InterpolationCheck out;
    out.lhs = std::pow(lk_norm(v, c.q), c.q);
    const double l2 = lk_norm(v, 2.0);
    out.rhs_without_Cn = c.C0 * gradient_sq_integral(v) + c.C1 * l2 * l2;
    const double e = c.coefficient_exponent();
    out.cn_factor = (std::pow(c.C0, -e) + std::pow(c.C1, -e)) * std::pow(lk_norm(v, c.r), c.gamma());
    out.required_Cn = std::max(0.0, (out.lhs - out.rhs_without_Cn) / out.cn_factor);
    return out;
}

Field band_limited_field(const Grid& grid, std::uint64_t seed, int max_mode) {
    if (max_mode < 0) throw ParameterError("band_limited_field: max_mode must be >= 0");
    std::mt19937_64 rng(seed);
    const int d = grid.dim();
    const std::size_t modes = static_cast<std::size_t>(max_mode) + 1;

    // cos(pi m x / L) per axis and cell index.
    std::array<std::vector<double>, 3> table;
    for (int a = 0; a < 3; ++a) {
        const std::size_t n = grid.cells(a);
        table[a].assign(modes * n, 1.0);
        if (a >= d) continue;
        for (std::size_t m = 0; m < modes; ++m) {
            for (std::size_t i = 0; i < n; ++i) {
                const double x = (static_cast<double>(i) + 0.5) * grid.spacing(a);
                table[a][m * n + i] = std::cos(std::numbers::pi * static_cast<double>(m) * x / grid.length(a));
            }
        }
    }

    Field f(grid);
    const std::size_t my = d > 1 ? modes : 1;
    const std::size_t mz = d > 2 ? modes : 1;
    const auto& n = grid.cells();
    for (std::size_t kz = 0; kz < mz; ++kz) {
        for (std::size_t ky = 0; ky < my; ++ky) {
            for (std::size_t kx = 0; kx < modes; ++kx) {
                const double coeff = 2.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53 - 1.0;
                const double* tx = &table[0][kx * n[0]];
                const double* ty = &table[1][ky * n[1]];
                const double* tz = &table[2][kz * n[2]];
                std::size_t idx = 0;
                for (std::size_t k = 0; k < n[2]; ++k) {
                    for (std::size_t j = 0; j < n[1]; ++j) {
                        const double w = coeff * ty[j] * tz[k];
                        for (std::size_t i = 0; i < n[0]; ++i, ++idx) f[idx] += w * tx[i];
                    }
                }
            }
        }
    }
    return f;
}

double Y0Profile::value(double t) const {
    if (kind == Kind::Constant) return level;
    return level * (floor + (1.0 - floor) * std::exp(-rate * t));
}

void IterationCase::validate() const {
    if (!(b > 1.0)) throw ParameterError("iteration case: b > 1 violated");
    if (!(a_bar > 1.0)) throw ParameterError("iteration case: a_bar > 1 violated");
    if (!(r0 >= 0.0)) throw ParameterError("iteration case: r0 >= 0 violated");
    if (!(0.0 < gamma2 && gamma2 < gamma1 && gamma1 <= b)) {
        throw ParameterError("iteration case: 0 < gamma2 < gamma1 <= b violated");
    }
    if (!(K >= 1.0)) throw ParameterError("iteration case: K >= 1 violated");
    if (k_max < 0 || k_max > 6) throw ParameterError("iteration case: 0 <= k_max <= 6 violated");
    if (!(y0.level >= 0.0) || !std::isfinite(y0.level)) {
        throw ParameterError("iteration case: y0 must be bounded and nonnegative");
    }
    if (y0.kind == Y0Profile::Kind::Decaying && !(y0.floor >= 0.0 && y0.floor <= 1.0 && y0.rate >= 0.0)) {
        throw ParameterError("iteration case: decaying y0 needs 0 <= floor <= 1 and rate >= 0");
    }
    if (!(y0.value(0.0) <= K)) throw ParameterError("iteration case: y0(0) <= K violated");
}

IterationCheck check_iteration_bound(const IterationCase& c, double t_end) {
    c.validate();
    if (!(t_end >= 0.0)) throw ParameterError("check_iteration_bound: t_end must be >= 0");

    IterationCheck out;
    const int kmax = c.k_max;
    out.log_sup.assign(kmax + 1, -std::numeric_limits<double>::infinity());
    out.log_bound.resize(kmax + 1);
    for (int k = 0; k <= kmax; ++k) {
        out.log_bound[k] = log_moser_bound(c.a_bar, c.r0, c.b, c.K, c.y0.sup(), k);
    }
    out.log_sup[0] = std::log(c.y0.sup());

    if (kmax > 0) {
        std::vector<double> log_a(kmax + 1);
        for (int k = 1; k <= kmax; ++k) log_a[k] = std::log(c.a_bar) + c.r0 * k * std::log(c.b);

        // z[k-1] = log y_k for k = 1..kmax.
        State z(kmax);
        for (int k = 1; k <= kmax; ++k) z[k - 1] = std::pow(c.b, k) * std::log(c.K);

        auto rhs = [&](double t, const State& zz, State& dz) {
            for (int k = 1; k <= kmax; ++k) {
                const double prev = k == 1 ? std::log(c.y0.value(t)) : zz[k - 2];
                const double zk = zz[k - 1];
                dz[k - 1] = -1.0 + std::exp(log_a[k] + c.gamma1 * prev - zk) +
                            std::exp(log_a[k] + c.gamma2 * prev - zk);
            }
        };
        auto observe = [&](double, const State& zz) {
            for (int k = 1; k <= kmax; ++k) out.log_sup[k] = std::max(out.log_sup[k], zz[k - 1]);
        };
        integrate_dopri5(rhs, z, 0.0, t_end, 1e-11, 1e-12, observe);
    }

    double log_max = -std::numeric_limits<double>::infinity();
    for (int k = 0; k <= kmax; ++k) log_max = std::max(log_max, out.log_sup[k] - out.log_bound[k]);
    out.max_ratio = std::exp(log_max);
    return out;
}

}  // namespace chemoflow
