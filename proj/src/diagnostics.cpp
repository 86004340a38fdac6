#include "chemoflow/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "chemoflow/errors.hpp"

namespace chemoflow {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// int v^p with 0^0 = 1, so that the k = 1 weight u^{k-1} is identically one.
double integral_of_power(const Field& u, double p) {
    if (p == 0.0) return u.grid().measure();
    return integrate(pointwise_pow(u, p));
}

Field weight(const Field& u, double p) {
    if (p == 0.0) return Field(u.grid(), 1.0);
    return pointwise_pow(u, p);
}

}  // namespace

std::optional<std::size_t> DiagnosticSeries::channel(double k) const {
    for (std::size_t i = 0; i < k_list.size(); ++i) {
        if (std::abs(k_list[i] - k) <= 1e-12 * std::max(1.0, std::abs(k))) return i;
    }
    return std::nullopt;
}

std::vector<double> default_k_list(const ReactionSpec& reaction) {
    const double q0 = reaction.beta + reaction.alpha;
    return {1.0, 2.0, q0, 2.0 * q0};
}

DiagnosticRow make_row(const RunState& state, const ModelParams& params,
                       const std::vector<double>& k_list) {
    const Field& u = state.u;
    DiagnosticRow row;
    row.t = state.t;
    row.dt = state.dt;
    row.mass = lk_norm(u, 1.0);
    row.linf = lk_norm(u, kInfinityNorm);
    row.nonlocal_integral = integrate(pointwise_pow(u, params.reaction.beta));
    row.clipped_mass_cum = state.clipped_mass_cum;
    for (double k : k_list) {
        row.lk.push_back(lk_norm(u, k));
        row.gradsq.push_back(gradient_sq_integral(pointwise_pow(u, 0.5 * k)));
        row.energy_resid.push_back(kNaN);
    }
    return row;
}

double energy_budget_residual(const Field& u_prev, const Field& u_next, const Field& c,
                              double dt, double k, const ModelParams& params) {
    if (std::isnan(k) || k < 1.0) {
        throw ParameterError("energy_budget_residual: k must be >= 1, got " + std::to_string(k));
    }
    if (!(dt > 0.0)) throw ParameterError("energy_budget_residual: dt must be > 0");
    require_same_grid(u_prev, u_next, "energy_budget_residual");
    require_same_grid(u_prev, c, "energy_budget_residual");

    const ReactionSpec& rs = params.reaction;
    const double mass_k_prev = integral_of_power(u_prev, k);
    const double mass_k_next = integral_of_power(u_next, k);

    double lhs = (mass_k_next - mass_k_prev) / dt;
    lhs += 4.0 * (k - 1.0) / k * gradient_sq_integral(pointwise_pow(u_prev, 0.5 * k));

    double rhs = 0.0;
    if (rs.variant == ReactionVariant::NonlocalLogistic) {
        const double growth = integral_of_power(u_prev, k + rs.alpha - 1.0);
        const double damp = integral_of_power(u_prev, rs.beta);
        lhs += k * damp * growth;
        rhs += k * growth;
    } else if (rs.variant == ReactionVariant::LocalLogistic) {
        rhs += k * inner_product(weight(u_prev, k - 1.0), eval_reaction(u_prev, rs));
    }

    if (params.chi != 0.0) {
        const Field aggregated = params.sigma == 1.0 ? u_prev : pointwise_pow(u_prev, params.sigma);
        rhs -= params.chi * k * inner_product(weight(u_prev, k - 1.0), advective_divergence(aggregated, c));
    }

    return (lhs - rhs) / std::max(1.0, mass_k_prev);
}

double MoserSchedule::q(int k) const { return std::ldexp(1.0, k) + beta + alpha - 1.0; }

double log_moser_bound(double a_bar, double r0, double b, double K, double sup_y0, int k) {
    if (!(b > 1.0)) throw ParameterError("moser_bound: b must be > 1");
    if (!(a_bar > 0.0)) throw ParameterError("moser_bound: a_bar must be > 0");
    if (!(r0 >= 0.0)) throw ParameterError("moser_bound: r0 must be >= 0");
    if (!(K >= 1.0)) throw ParameterError("moser_bound: K must be >= 1");
    if (!(sup_y0 >= 0.0)) throw ParameterError("moser_bound: sup_y0 must be >= 0");
    if (k < 0) throw ParameterError("moser_bound: k must be >= 0");

    const double bk = std::pow(b, k);
    const double geometric = (bk - 1.0) / (b - 1.0);
    const double r_exponent = b * (bk - 1.0) / ((b - 1.0) * (b - 1.0)) - k / (b - 1.0);
    return geometric * std::log(2.0 * a_bar) + r0 * r_exponent * std::log(b) +
           bk * std::log(std::max(sup_y0, K));
}

double moser_bound(const MoserSchedule& schedule, double a_bar, double r0, double b, double K,
                   double sup_y0, int k) {
    if (k > schedule.k_max) {
        throw ParameterError("moser_bound: k exceeds the schedule's k_max");
    }
    return std::exp(log_moser_bound(a_bar, r0, b, K, sup_y0, k));
}

double linf_certificate(const DiagnosticSeries& series, const MoserSchedule& schedule,
                        const CertificateParams& params) {
    const double q0 = schedule.q(0);
    const auto ch = series.channel(q0);
    if (!ch) {
        throw ConfigError("linf_certificate: series has no L^" + std::to_string(q0) +
                          " channel (k = beta + alpha)");
    }
    if (series.rows.empty()) throw ConfigError("linf_certificate: empty series");

    const DiagnosticRow& first = series.rows.front();
    const double K0 = std::max(first.lk[*ch], first.linf);
    double sup_moment = 0.0;
    for (const auto& row : series.rows) {
        sup_moment = std::max(sup_moment, std::pow(row.lk[*ch], q0));
    }
    return 2.0 * params.a_bar * std::pow(2.0, 2.0 * params.r0) * std::max(sup_moment, K0);
}

}  // namespace chemoflow
