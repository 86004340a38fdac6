#pragma once

// Time-series observables, the discrete audit of the L^k energy identity
//
//   d/dt int u^k + 4(k-1)/k int |grad u^{k/2}|^2 + k int u^beta int u^{k+alpha-1}
//     = k int u^{k+alpha-1} - k int u^{k-1} div(u grad c),
//
// and the closed-form bounds of the Moser-type iteration.

#include <optional>
#include <vector>

#include "chemoflow/grid.hpp"
#include "chemoflow/model.hpp"

namespace chemoflow {

struct DiagnosticRow {
    double t = 0.0;
    double dt = 0.0;
    double mass = 0.0;
    std::vector<double> lk;  // one per k in the series' k list
    double linf = 0.0;
    double nonlocal_integral = 0.0;
    double clipped_mass_cum = 0.0;
    std::vector<double> gradsq;         // int |grad u^{k/2}|^2
    std::vector<double> energy_resid;   // residual of the step leaving t

    friend bool operator==(const DiagnosticRow&, const DiagnosticRow&) = default;
};

struct DiagnosticSeries {
    std::vector<double> k_list;
    std::vector<DiagnosticRow> rows;

    // Index of k in k_list (relative tolerance 1e-12), if present.
    std::optional<std::size_t> channel(double k) const;
};

// {1, 2, beta+alpha, 2(beta+alpha)}.
std::vector<double> default_k_list(const ReactionSpec& reaction);

// Row for state `u` at time t; energy residuals are left NaN for the caller.
DiagnosticRow make_row(const RunState& state, const ModelParams& params,
                       const std::vector<double>& k_list);

// LHS - RHS of the identity above with the time derivative replaced by the
// difference quotient over [t, t + dt] and every other term evaluated at
// u_prev, normalized by max(1, int u_prev^k). For variants other than the
// nonlocal reaction the reaction terms become k int u^{k-1} f(u); chi and
// sigma enter the advective term as in the stepper. k must be >= 1
// (at k = 1 the identity is the mass balance).
double energy_budget_residual(const Field& u_prev, const Field& u_next, const Field& c,
                              double dt, double k, const ModelParams& params);

struct MoserSchedule {
    double alpha = 2.0;
    double beta = 2.0;
    int k_max = 6;

    // q_k = 2^k + beta + alpha - 1
    double q(int k) const;
};

// (2 a)^((b^k-1)/(b-1)) * b^(r0 (b(b^k-1)/(b-1)^2 - k/(b-1))) * max(sup_y0, K)^(b^k),
// in natural-log form. Requires b > 1, a_bar > 0, r0 >= 0, K >= 1, sup_y0 >= 0.
double log_moser_bound(double a_bar, double r0, double b, double K, double sup_y0, int k);

// exp(log_moser_bound); may be +inf for large k. k must not exceed schedule.k_max.
double moser_bound(const MoserSchedule& schedule, double a_bar, double r0, double b, double K,
                   double sup_y0, int k);

struct CertificateParams {
    double a_bar = 10.0;
    double r0 = 2.0;
};

// 2 a 2^(2 r0) max{ sup_t int u^{q0}, K0 } with q0 = beta + alpha and
// K0 = max{ ||u0||_{q0}, ||u0||_inf } read from the first row. The constants
// are user supplied, so the value is illustrative rather than a proof.
double linf_certificate(const DiagnosticSeries& series, const MoserSchedule& schedule,
                        const CertificateParams& params);

}  // namespace chemoflow
