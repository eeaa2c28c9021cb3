#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "hyperfade/ipl_channel.hpp"
#include "hyperfade/numerics.hpp"

namespace hyperfade::cascade {

/// Source-side and destination-side links of one reflecting element. The two
/// links are independent; the element's channel coefficient is the product
/// Z = X_source * X_dest of the two envelopes.
struct CascadePair {
    ipl::IplParams source;
    ipl::IplParams dest;
};

CascadePair make_pair(const ipl::IplParams& source, const ipl::IplParams& dest);

/// Product moment E{Z^r} = E{X_s^r} E{X_d^r}. Throws MomentRangeError naming
/// the offending link when r leaves either link's existence range.
double product_moment(const CascadePair& pair, double r);

/// Normalized second moment kappa = E{Z^2}/E{Z}^2; strictly > 1 for any
/// non-degenerate pair. The whole element-count analysis keys off kappa - 1.
double kappa(const CascadePair& pair);

// ---------------------------------------------------------------------------
// Density of Z: Mellin-Barnes (Fox H) route and direct-integral route
// ---------------------------------------------------------------------------

/// Parameter block of the H^{2,2}_{2,2} function whose Mellin-Barnes integrand
/// is
///
///   Gamma(a_s + s/(2 b_s)) Gamma(a_d + s/(2 b_d))
///   Gamma(1 - s/(2 b_s)) Gamma(1 - s/(2 b_d)) (arg_scale z)^{-s}
///
/// giving f_Z(z) = H(arg_scale z) / (z Gamma(a_s) Gamma(a_d)).
/// arg_scale multiplies z by sqrt(r_s r_d / (Omega_s Omega_d)) where
/// r_i = Gamma(1 - 1/beta_i) Gamma(alpha_i + 1/beta_i) / Gamma(alpha_i)
/// (the per-link normalization constant before its beta-th power); this is the
/// unique scale under which the H route reproduces the product moments.
struct FoxHSpec {
    int m = 2, n = 2, p = 2, q = 2;
    std::array<std::pair<double, double>, 2> upper;  ///< (a_j, A_j) = (0, 1/(2 beta))
    std::array<std::pair<double, double>, 2> lower;  ///< (b_j, B_j) = (alpha, 1/(2 beta))
    double arg_scale = 0.0;

    /// Feasible vertical-contour abscissas: strip_lo < c < strip_hi.
    double strip_lo = 0.0;
    double strip_hi = 0.0;
    /// Default abscissa: midpoint of the margin-trimmed strip clipped to >= 0.
    double default_abscissa = 0.0;

    bool contour_feasible(double c) const { return c > strip_lo && c < strip_hi; }
};

FoxHSpec make_foxh_spec(const CascadePair& pair);

/// Product density by the direct integral f_Z(z) = Int f_s(x) f_d(z/x) dx/x,
/// evaluated in the source quantile domain where both endpoint singularities
/// are tamed.
double product_pdf_direct(const CascadePair& pair, double z, double tol = 1e-10);

/// Product density by Mellin-Barnes contour quadrature of the Fox H kernel.
/// `abscissa` overrides the default contour position; values outside the
/// feasible strip raise ContourError.
double product_pdf_foxh(const CascadePair& pair, double z, double tol = 1e-8,
                        std::optional<double> abscissa = std::nullopt);

/// Product distribution function and survival by quantile-domain quadrature.
double cdf_product(const CascadePair& pair, double z, double tol = 1e-11);
double survival_product(const CascadePair& pair, double z, double tol = 1e-11);

// ---------------------------------------------------------------------------
// Integral transforms
// ---------------------------------------------------------------------------

/// Laplace transform E{e^{-uZ}} by the double quantile-domain integral
/// Int_0^1 Int_0^1 exp(-u Q_s(v) Q_d(w)) dv dw. Completely monotone; 1 at 0.
double laplace_transform_product(const CascadePair& pair, double u,
                                 double tol = 1e-10);

/// Characteristic function E{e^{itZ}} by quantile-domain quadrature.
/// Intended for moderate |t| (the adaptive rule must still resolve the
/// oscillation); the sum-law machinery uses ProductTransform instead, which
/// stays accurate at large |t|.
std::complex<double> char_fn_product(const CascadePair& pair, double t,
                                     double tol = 1e-10);

/// Element-wise product of two independent per-link sample streams; the
/// source link consumes stream 2k and the destination stream 2k+1 for
/// stream id k, so distinct ids never share raw uniforms.
std::vector<double> sample_product(const CascadePair& pair, StreamId id,
                                   std::size_t n);

// ---------------------------------------------------------------------------
// Reusable survival model for frequency-domain work
// ---------------------------------------------------------------------------

/// Piecewise-Legendre model of the product survival function S_Z on
/// logarithmically refined panels, built once per pair. char_fn(t) evaluates
///
///     phi(t) = 1 + i t Int_0^{z_far} S_Z(z) e^{itz} dz
///
/// in O(panels) work for any t, which keeps characteristic-function grids
/// cheap out to the large frequencies the sum-law inversion needs. The
/// truncated tail mass beyond z_far is below tail_mass().
class ProductTransform {
public:
    struct Options {
        double survival_floor = 1e-13;  ///< truncate where S_Z drops below this
        double quad_tol = 1e-11;        ///< tolerance of each S_Z evaluation
        int points_per_panel = 12;
        double panel_ratio = 1.35;      ///< geometric growth of panel widths
    };

    explicit ProductTransform(const CascadePair& pair);
    ProductTransform(const CascadePair& pair, const Options& opts);

    std::complex<double> char_fn(double t) const;

    double z_far() const noexcept { return z_far_; }
    double tail_mass() const noexcept { return tail_mass_; }
    double mean() const noexcept { return mean_; }

private:
    numerics::OscillatoryGrid grid_;
    std::vector<std::complex<double>> coeffs_;
    double z_far_ = 0.0;
    double tail_mass_ = 0.0;
    double mean_ = 0.0;
};

}  // namespace hyperfade::cascade
