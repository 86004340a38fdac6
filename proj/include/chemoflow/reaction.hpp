#pragma once

// Reaction terms and the parameter-regime classifier for the global
// boundedness result of the nonlocal chemotaxis model.

#include <string>
#include <string_view>

#include "chemoflow/grid.hpp"

namespace chemoflow {

enum class ReactionVariant { Off, LocalLogistic, NonlocalLogistic };

std::string_view to_string(ReactionVariant v);
ReactionVariant reaction_variant_from_string(std::string_view s);

// Off:      f = 0 (classical Keller-Segel).
// Local:    f = mu u (1 - u^alpha).
// Nonlocal: f = u^alpha (1 - int u^beta).
struct ReactionSpec {
    ReactionVariant variant = ReactionVariant::NonlocalLogistic;
    double alpha = 2.0;
    double beta = 2.0;
    double mu = 1.0;

    // Throws HypothesisError when the tuple violates the variant's requirements.
    void validate() const;

    friend bool operator==(const ReactionSpec&, const ReactionSpec&) = default;
};

Field eval_reaction(const Field& u, const ReactionSpec& spec);

// Same as eval_reaction with the nonlocal integral supplied by the caller.
Field eval_reaction(const Field& u, const ReactionSpec& spec, double nonlocal_integral);

// max over cells of |df/du|, with the nonlocal integral frozen.
double reaction_rate_bound(const Field& u, const ReactionSpec& spec, double nonlocal_integral);

enum class Regime { CoveredCase1, CoveredCase2, NotCovered };

std::string_view to_string(Regime r);

// `lhs` and `rhs` are the two sides of the inequality that decided the
// verdict: alpha vs 1 + 2 beta / n for alpha >= 2, and
// (n+2)/n (2 - alpha) vs 1 + 2 beta / n - alpha for alpha < 2.
struct RegimeVerdict {
    Regime verdict = Regime::NotCovered;
    double lhs = 0.0;
    double rhs = 0.0;
};

// The inequalities are decided in exact rational arithmetic on the given
// binary64 inputs, so equality cases are never covered. NotCovered means the
// theorem is silent, not that blow-up is predicted. The sensitivity chi plays
// no role: the conditions are only established for chi = 1.
RegimeVerdict classify_regime(int n, double alpha, double beta);

// Sublinear production u^xi, xi < 1: bounded iff 1 + xi < 1 + 2 beta / n.
bool classify_sublinear(int n, double xi, double beta);

// beta > n / 2.
bool collapse_threshold_hint(int n, double beta);

}  // namespace chemoflow
