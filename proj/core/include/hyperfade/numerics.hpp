#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "hyperfade/errors.hpp"

namespace hyperfade::numerics {

/// Euler-Mascheroni constant.
inline constexpr double kEulerGamma = 0.577215664901532860606512090082402431;

// ---------------------------------------------------------------------------
// Special functions
// ---------------------------------------------------------------------------

/// ln Gamma(x) for x > 0. Relative error below 1e-12 on [1e-3, 1e3].
double ln_gamma(double x);

/// ln Gamma(z) for complex z that is not a non-positive integer.
/// Lanczos approximation with reflection for Re z < 0.5.
std::complex<double> ln_gamma(std::complex<double> z);

/// Digamma psi(x) for x > 0, absolute error below 1e-10.
double digamma(double x);

/// Regularized lower incomplete gamma P(a, x) = gamma(a,x)/Gamma(a).
/// P(a,0) = 0, P(a,inf) = 1, monotone non-decreasing in x.
double reg_lower_inc_gamma(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double reg_upper_inc_gamma(double a, double x);

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

struct QuadratureResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    long evaluations = 0;
};

struct QuadratureOptions {
    double rel_tol = 1e-10;
    double abs_tol = 0.0;
    long max_evaluations = 1'000'000;
};

/// Adaptive Gauss-Kronrod integration of f over (lo, hi); hi may be +inf,
/// in which case the tail is folded onto (0,1) with x = lo + t/(1-t).
/// Throws ConvergenceError (carrying the best estimate) if the error target
/// is not met within the evaluation budget.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double lo, double hi,
                                    const QuadratureOptions& opts = {});

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double lo, double hi, double rel_tol);

/// Double-exponential (tanh-sinh) quadrature over the open unit interval.
/// The integrand receives (v, 1-v) with both values accurate near the
/// respective endpoint, which keeps quantile-domain integrands stable.
QuadratureResult integrate_unit_tanh_sinh(
    const std::function<double(double, double)>& f, double tol = 1e-11);

/// Mellin-Barnes vertical-line integral (1/2pi) * Int_{-T}^{T} Re theta(c+it) dt
/// with T chosen adaptively from the observed decay of theta. When
/// `conjugate_symmetric` is set (theta(c-it) == conj(theta(c+it))) only the
/// upper half line is evaluated. Throws ContourError if no decay is detected.
double integrate_vertical_contour(
    const std::function<std::complex<double>(std::complex<double>)>& theta,
    double c, double tol, bool conjugate_symmetric = true);

// ---------------------------------------------------------------------------
// Root finding
// ---------------------------------------------------------------------------

/// Bracketed root of a continuous f with f(lo)*f(hi) < 0. Bisection with
/// inverse-quadratic acceleration; deterministic for fixed inputs.
/// Throws BracketError when the sign condition fails.
double find_root_bracketed(const std::function<double(double)>& f, double lo,
                           double hi, double tol = 1e-13);

// ---------------------------------------------------------------------------
// Oscillatory (Fourier-type) panel transforms
// ---------------------------------------------------------------------------

/// Spherical Bessel functions j_0..j_nmax at x >= 0, stable for all orders
/// (downward recurrence below the turnover, upward above).
void spherical_bessel_jn(int nmax, double x, double* out);

/// Piecewise-Legendre representation of a function g sampled on fixed panels,
/// supporting exact integration against e^{i w z}:
///
///     transform(w) = Int g(z) e^{i w z} dz
///
/// The Legendre coefficients are computed once from Gauss-Legendre samples;
/// each transform() costs O(panels * degree) regardless of |w|, so a single
/// sampled grid serves every frequency. Panels must be sized so that g is
/// polynomial-like on each panel; the e^{iwz} factor is handled exactly.
class OscillatoryGrid {
public:
    /// Panels are the consecutive intervals [edges[k], edges[k+1]).
    explicit OscillatoryGrid(std::vector<double> edges, int points_per_panel = 12);

    const std::vector<double>& nodes() const noexcept { return nodes_; }
    const std::vector<double>& edges() const noexcept { return edges_; }
    std::size_t panel_count() const noexcept { return edges_.size() - 1; }
    int degree() const noexcept { return n_ - 1; }

    /// Legendre-coefficient table for real samples g(nodes()[i]).
    std::vector<std::complex<double>> project(const std::vector<std::complex<double>>& values) const;

    /// transform over panels [first_panel, last_panel) of the projected data.
    std::complex<double> transform(const std::vector<std::complex<double>>& coeffs,
                                   double w, std::size_t first_panel,
                                   std::size_t last_panel) const;

    std::complex<double> transform(const std::vector<std::complex<double>>& coeffs,
                                   double w) const {
        return transform(coeffs, w, 0, panel_count());
    }

private:
    std::vector<double> edges_;
    std::vector<double> nodes_;   // panel-major, n_ per panel
    int n_;
};

/// Modified Legendre moments mu_j(theta) = Int_{-1}^{1} P_j(x) e^{i theta x} dx
/// = 2 i^j j_j(theta), for j = 0..nmax. theta may be negative.
void legendre_fourier_moments(int nmax, double theta, std::complex<double>* out);

}  // namespace hyperfade::numerics
