#pragma once

// Numerical checks of the two functional tools behind the L^inf bound:
//
// * the interpolation inequality, n >= 3, p = 2n/(n-2), 1 <= r < q < p,
//   q/r < 2/r + 1 - 2/p:
//     ||v||_q^q <= C(n) (C0^-e + C1^-e) ||v||_r^gamma + C0 ||grad v||_2^2 + C1 ||v||_2^2
//   with lambda = (1/r - 1/q)/(1/r - 1/p), gamma = 2(1-lambda)q/(2-lambda q),
//   e = lambda q/(2 - lambda q);
//
// * the iterative ODE bound for y_k' <= -y_k + a_k (y_{k-1}^g1 + y_{k-1}^g2),
//   a_k = a_bar b^(r0 k), 0 < g2 < g1 <= b, y_k(0) <= K^(b^k).
//
// C(n) is not known explicitly, so the interpolation check reports the
// smallest constant that would make the inequality hold for the given field.

#include <cstdint>
#include <vector>

#include "chemoflow/grid.hpp"

namespace chemoflow {

// p = 2n/(n-2).
double sobolev_exponent(int n);

struct InterpolationCase {
    int n = 3;
    double r = 2.0;
    double q = 3.0;
    double C0 = 1.0;
    double C1 = 1.0;

    double p() const { return sobolev_exponent(n); }
    double lambda() const;
    double gamma() const;
    // lambda q / (2 - lambda q)
    double coefficient_exponent() const;

    // Throws ParameterError naming the violated inequality.
    void validate() const;
};

struct InterpolationCheck {
    double lhs = 0.0;             // ||v||_q^q
    double rhs_without_Cn = 0.0;  // C0 ||grad v||^2 + C1 ||v||_2^2
    double cn_factor = 0.0;       // (C0^-e + C1^-e) ||v||_r^gamma
    double required_Cn = 0.0;     // max(0, (lhs - rhs_without_Cn) / cn_factor)
};

// v must live on a grid of dimension n and must not vanish identically.
InterpolationCheck check_interpolation(const InterpolationCase& c, const Field& v);

// Random field of cosine modes up to `max_mode` per axis (mode 0 included),
// coefficients uniform in [-1, 1) drawn from `seed`. The same seed gives the
// same continuous function on every grid.
Field band_limited_field(const Grid& grid, std::uint64_t seed, int max_mode);

struct Y0Profile {
    enum class Kind { Constant, Decaying };
    Kind kind = Kind::Constant;
    double level = 1.0;
    double rate = 1.0;   // Decaying only
    double floor = 0.5;  // Decaying: level (floor + (1 - floor) e^{-rate t})

    double value(double t) const;
    double sup() const { return level; }
};

struct IterationCase {
    double a_bar = 2.0;
    double r0 = 1.0;
    double b = 2.0;
    double gamma1 = 2.0;
    double gamma2 = 1.0;
    double K = 1.0;
    Y0Profile y0;
    int k_max = 6;

    void validate() const;
};

struct IterationCheck {
    double max_ratio = 0.0;
    std::vector<double> log_sup;    // log sup_t y_k, k = 0..k_max
    std::vector<double> log_bound;  // log of the closed-form bound
};

// Integrates the chain with equality (the extremal trajectory) from
// y_k(0) = K^(b^k) in log variables and compares sup_t y_k with the bound.
IterationCheck check_iteration_bound(const IterationCase& c, double t_end);

}  // namespace chemoflow
