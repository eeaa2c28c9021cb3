#pragma once

#include "hyperfade/cascade.hpp"
#include "hyperfade/hrr.hpp"

namespace hyperfade::solver {

/// Minimum element counts for a given element pair: n_exit_full is the
/// smallest N whose effective shape leaves the worst-case regime, n_reach_no
/// the smallest N reaching the benign regime. kappa_minus_1 is the
/// per-element normalized-variance diagnostic both counts derive from.
struct SolveResult {
    int n_exit_full = 0;
    int n_reach_no = 0;
    double kappa_minus_1 = 0.0;
};

/// Which regime boundary the element count must clear.
enum class SolveTarget { ExitFullHrr, ReachNoHrr };

/// The exemplified symmetric configuration: both links get
/// (alpha = alpha0, beta = 1/(2 alpha0), Omega = 1), which keeps each link in
/// the worst-case per-link regime for every alpha0 in (0, 0.316).
cascade::CascadePair equal_channel_params(double alpha0);

/// Per-link normalized-second-moment bracket of the symmetric configuration:
///
///   B(a0) = Gamma(1-2a0) Gamma(a0) Gamma(3a0) / (Gamma(1-a0)^2 Gamma(2a0)^2).
///
/// Tends to 4/3 as a0 -> 0 and to 2 as a0 -> 0.316.
double gamma_ratio_bracket(double alpha0);

/// kappa of the symmetric configuration in closed form: B(alpha0)^2.
/// Matches cascade::kappa(equal_channel_params(alpha0)) to ~1e-12 relative.
double kappa_equal_closed_form(double alpha0);

/// Smallest integer N with N/(kappa-1) strictly above the target boundary
/// (2 for ExitFullHrr, (3+sqrt(33))/2 for ReachNoHrr); the boundary itself
/// still belongs to the more severe regime, so N = floor(threshold*(kappa-1))+1
/// with a relative guard that rounds borderline products up to the larger N.
int min_elements_from_kappa(double kappa, SolveTarget target);

/// As above with kappa taken from the pair's moments.
int min_elements(const cascade::CascadePair& pair, SolveTarget target);

/// Both minimum counts for the symmetric configuration, via the closed-form
/// kappa. The effective shape at count N is N / kappa_minus_1.
SolveResult solve_equal_channel(double alpha0);

/// Effective shape reached by N elements of the given pair.
double alpha_hat_at(const cascade::CascadePair& pair, int n_irs);

}  // namespace hyperfade::solver
