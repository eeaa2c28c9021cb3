#pragma once

#include <cstdint>
#include <vector>

#include "hyperfade/errors.hpp"
#include "hyperfade/random.hpp"

namespace hyperfade::ipl {

/// One inverse power Lomax fading link.
///
/// The envelope X > 0 has density
///
///     f(x) = 2 (alpha beta / g) Omega^beta x^{-(2 beta + 1)}
///            (1 + (Omega/x^2)^beta / g)^{-(alpha+1)},
///
/// where the normalization constant
///
///     g = (Gamma(1 - 1/beta) Gamma(alpha + 1/beta) / Gamma(alpha))^beta
///
/// is the unique choice for which E{X^2} = Omega. g underflows double
/// precision for very large beta, so the working representation is log_g_norm;
/// g_norm() is derived from it.
struct IplParams {
    double alpha = 0.0;      ///< shape, > 0
    double beta = 0.0;       ///< tail power, > 1 (survival ~ x^{-2 beta})
    double omega = 0.0;      ///< mean-square envelope E{X^2}, > 0
    double log_g_norm = 0.0; ///< ln g, always finite

    double g_norm() const;   ///< exp(log_g_norm); may underflow for huge beta
};

/// Validates (alpha, beta, omega) and derives the normalization constant.
/// Throws DomainError naming the offending field; beta <= 1 is rejected
/// because Gamma(1 - 1/beta) and E{X^2} would not be finite.
IplParams make_ipl(double alpha, double beta, double omega);

/// Envelope density at x > 0.
double pdf_envelope(const IplParams& p, double x);

/// ln of the envelope density (stable for extreme x).
double log_pdf_envelope(const IplParams& p, double x);

/// Envelope distribution function, F(x) = (1 + (Omega/x^2)^beta / g)^{-alpha}.
double cdf_envelope(const IplParams& p, double x);

/// Survival 1 - F(x), accurate in the far upper tail.
double survival_envelope(const IplParams& p, double x);

/// Inverse CDF: x = sqrt(Omega) (g (u^{-1/alpha} - 1))^{-1/(2 beta)}.
double quantile(const IplParams& p, double u);

/// Quantile expressed through the survival level q = 1 - u, accurate as q -> 0.
double quantile_from_survival(const IplParams& p, double q);

/// Fractional moment E{X^r}; exists for -2 alpha beta < r < 2 beta.
/// Throws MomentRangeError (reporting the range) outside that interval.
double moment_envelope(const IplParams& p, double r);

/// Inverse-CDF sampling from a deterministic stream: identical (seed, stream,
/// n) always produce the identical sequence.
std::vector<double> sample(const IplParams& p, StreamId stream_id, std::size_t n);

/// Draw one variate from an already-running stream.
double sample_one(const IplParams& p, StreamRng& rng);

/// Upper bound on the per-link shape below which the worst-case regime is
/// reachable; quoted constant from the fading-model literature.
inline constexpr double kFullHrrAlphaMax = 0.316;

/// Per-link worst-case (full hyper-Rayleigh) predicate.
/// Default reading: alpha*beta <= 1 and alpha < 0.316.
/// strict_product: alpha*beta < 1 and alpha < 0.316. Both product-condition
/// readings are in circulation, so the choice is explicit at the call site.
bool is_full_hrr_link(double alpha, double beta, bool strict_product = false);

}  // namespace hyperfade::ipl
