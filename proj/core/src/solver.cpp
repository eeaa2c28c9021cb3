#include "hyperfade/solver.hpp"

#include <cmath>
#include <string>

#include "hyperfade/numerics.hpp"

namespace hyperfade::solver {

namespace {

void check_alpha0(double alpha0) {
    if (!(alpha0 > 0.0 && alpha0 < ipl::kFullHrrAlphaMax))
        throw DomainError("alpha0", "alpha0 must lie in (0, 0.316), got " +
                                        std::to_string(alpha0));
}

double target_threshold(SolveTarget target) {
    return target == SolveTarget::ExitFullHrr ? 2.0 : hrr::aof_boundary();
}

}  // namespace

cascade::CascadePair equal_channel_params(double alpha0) {
    check_alpha0(alpha0);
    const double beta0 = 1.0 / (2.0 * alpha0);
    const auto link = ipl::make_ipl(alpha0, beta0, 1.0);
    return cascade::make_pair(link, link);
}

double gamma_ratio_bracket(double alpha0) {
    check_alpha0(alpha0);
    using numerics::ln_gamma;
    return std::exp(ln_gamma(1.0 - 2.0 * alpha0) + ln_gamma(alpha0) +
                    ln_gamma(3.0 * alpha0) - 2.0 * ln_gamma(1.0 - alpha0) -
                    2.0 * ln_gamma(2.0 * alpha0));
}

double kappa_equal_closed_form(double alpha0) {
    const double b = gamma_ratio_bracket(alpha0);
    return b * b;
}

int min_elements_from_kappa(double kappa, SolveTarget target) {
    if (!(kappa > 1.0) || !std::isfinite(kappa))
        throw DomainError("kappa", "min_elements: kappa must be finite and > 1");
    const double x = target_threshold(target) * (kappa - 1.0);
    // Quantization guard: products within rounding of an integer are treated
    // as that integer, which lands on the larger (conservative) count.
    const double nearest = std::nearbyint(x);
    if (std::abs(x - nearest) <= 1e-9 * std::max(1.0, std::abs(x)))
        return int(nearest) + 1;
    return int(std::floor(x)) + 1;
}

int min_elements(const cascade::CascadePair& pair, SolveTarget target) {
    return min_elements_from_kappa(cascade::kappa(pair), target);
}

SolveResult solve_equal_channel(double alpha0) {
    const double kappa = kappa_equal_closed_form(alpha0);
    SolveResult r;
    r.kappa_minus_1 = kappa - 1.0;
    r.n_exit_full = min_elements_from_kappa(kappa, SolveTarget::ExitFullHrr);
    r.n_reach_no = min_elements_from_kappa(kappa, SolveTarget::ReachNoHrr);
    return r;
}

double alpha_hat_at(const cascade::CascadePair& pair, int n_irs) {
    if (n_irs < 1) throw DomainError("n_irs", "alpha_hat_at: n_irs must be >= 1");
    return double(n_irs) / (cascade::kappa(pair) - 1.0);
}

}  // namespace hyperfade::solver
