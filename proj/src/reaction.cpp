#include "chemoflow/reaction.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <string>

#include "chemoflow/errors.hpp"

namespace chemoflow {

namespace {

using Rational = boost::multiprecision::cpp_rational;

// Every finite double is a dyadic rational, so this conversion is exact.
Rational exact(double v) { return Rational(v); }

double power(double v, double p) {
    if (v == 0.0) return 0.0;
    return p == 1.0 ? v : std::pow(v, p);
}

void require_nonnegative(const Field& u, const char* who) {
    for (double v : u.values()) {
        if (!(v >= 0.0)) {
            throw InputError(std::string(who) + ": density must be nonnegative and finite, got " +
                             std::to_string(v));
        }
    }
}

void require_theory_dimension(int n) {
    if (n < 3) {
        throw HypothesisError("theory dimension n must be >= 3, got " + std::to_string(n));
    }
}

}  // namespace

std::string_view to_string(ReactionVariant v) {
    switch (v) {
        case ReactionVariant::Off: return "off";
        case ReactionVariant::LocalLogistic: return "local";
        case ReactionVariant::NonlocalLogistic: return "nonlocal";
    }
    return "?";
}

ReactionVariant reaction_variant_from_string(std::string_view s) {
    if (s == "off") return ReactionVariant::Off;
    if (s == "local") return ReactionVariant::LocalLogistic;
    if (s == "nonlocal") return ReactionVariant::NonlocalLogistic;
    throw ParameterError("unknown reaction variant '" + std::string(s) +
                         "' (expected off, local or nonlocal)");
}

void ReactionSpec::validate() const {
    switch (variant) {
        case ReactionVariant::Off:
            return;
        case ReactionVariant::LocalLogistic:
            if (!(mu > 0.0)) throw HypothesisError("local reaction requires mu > 0");
            if (!(alpha > 0.0)) throw HypothesisError("local reaction requires alpha > 0");
            return;
        case ReactionVariant::NonlocalLogistic:
            if (!(alpha >= 1.0)) throw HypothesisError("nonlocal reaction requires alpha >= 1");
            if (!(beta > 1.0)) throw HypothesisError("nonlocal reaction requires beta > 1");
            return;
    }
}

Field eval_reaction(const Field& u, const ReactionSpec& spec) {
    double integral = 0.0;
    if (spec.variant == ReactionVariant::NonlocalLogistic) {
        require_nonnegative(u, "eval_reaction");
        integral = integrate(pointwise_pow(u, spec.beta));
    }
    return eval_reaction(u, spec, integral);
}

Field eval_reaction(const Field& u, const ReactionSpec& spec, double nonlocal_integral) {
    require_nonnegative(u, "eval_reaction");
    Field f(u.grid());
    switch (spec.variant) {
        case ReactionVariant::Off:
            break;
        case ReactionVariant::LocalLogistic:
            for (std::size_t i = 0; i < u.size(); ++i) {
                f[i] = spec.mu * u[i] * (1.0 - power(u[i], spec.alpha));
            }
            break;
        case ReactionVariant::NonlocalLogistic: {
            const double damp = 1.0 - nonlocal_integral;
            for (std::size_t i = 0; i < u.size(); ++i) {
                f[i] = power(u[i], spec.alpha) * damp;
            }
            break;
        }
    }
    return f;
}

double reaction_rate_bound(const Field& u, const ReactionSpec& spec, double nonlocal_integral) {
    double rate = 0.0;
    switch (spec.variant) {
        case ReactionVariant::Off:
            break;
        case ReactionVariant::LocalLogistic:
            // d/du [mu u (1 - u^a)] = mu (1 - (a+1) u^a)
            for (double v : u.values()) {
                rate = std::max(rate, std::abs(spec.mu * (1.0 - (spec.alpha + 1.0) * power(v, spec.alpha))));
            }
            break;
        case ReactionVariant::NonlocalLogistic: {
            const double damp = std::abs(1.0 - nonlocal_integral);
            const double umax = u.max_abs();
            // u^(alpha-1) is monotone in u for alpha >= 1.
            const double du = spec.alpha == 1.0 ? 1.0 : power(umax, spec.alpha - 1.0);
            rate = spec.alpha * du * damp;
            break;
        }
    }
    return rate;
}

std::string_view to_string(Regime r) {
    switch (r) {
        case Regime::CoveredCase1: return "CoveredCase1";
        case Regime::CoveredCase2: return "CoveredCase2";
        case Regime::NotCovered: return "NotCovered";
    }
    return "?";
}

RegimeVerdict classify_regime(int n, double alpha, double beta) {
    require_theory_dimension(n);
    if (!(alpha >= 1.0) || !std::isfinite(alpha)) {
        throw HypothesisError("alpha must be >= 1, got " + std::to_string(alpha));
    }
    if (!(beta > 1.0) || !std::isfinite(beta)) {
        throw HypothesisError("beta must be > 1, got " + std::to_string(beta));
    }
    const Rational a = exact(alpha);
    const Rational b = exact(beta);
    const Rational nn(n);
    const Rational upper = 1 + 2 * b / nn;

    RegimeVerdict out;
    if (a >= 2) {
        out.lhs = alpha;
        out.rhs = upper.convert_to<double>();
        out.verdict = (a < upper) ? Regime::CoveredCase1 : Regime::NotCovered;
    } else {
        const Rational lhs = (nn + 2) / nn * (2 - a);
        const Rational rhs = upper - a;
        out.lhs = lhs.convert_to<double>();
        out.rhs = rhs.convert_to<double>();
        out.verdict = (lhs < rhs) ? Regime::CoveredCase2 : Regime::NotCovered;
    }
    return out;
}

bool classify_sublinear(int n, double xi, double beta) {
    require_theory_dimension(n);
    if (!(xi < 1.0)) {
        throw ParameterError("classify_sublinear: xi must be < 1 (use classify_regime for xi = 1)");
    }
    if (!(xi > 0.0)) throw ParameterError("classify_sublinear: xi must be > 0");
    if (!(beta > 1.0)) throw HypothesisError("beta must be > 1, got " + std::to_string(beta));
    return 1 + exact(xi) < 1 + 2 * exact(beta) / n;
}

bool collapse_threshold_hint(int n, double beta) {
    require_theory_dimension(n);
    return exact(beta) * 2 > n;
}

}  // namespace chemoflow
