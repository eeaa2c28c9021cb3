#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "hyperfade/cascade.hpp"

namespace hyperfade::irslink {

/// Aggregate channel of n_irs identical, independent reflecting elements:
/// h_sum = sum_j Z_j with every element sharing one CascadePair, observed at
/// an average total SNR gbar_sigma (linear scale).
struct IrsLinkModel {
    cascade::CascadePair pair;
    int n_irs = 1;
    double gbar_sigma = 1.0;
};

IrsLinkModel make_model(const cascade::CascadePair& pair, int n_irs,
                        double gbar_sigma);

/// Moment-matched Gamma model of the sum envelope. alpha_hat = N / (kappa-1)
/// scales exactly linearly in N; the implied scale is var_h / mean_h and
/// omega_h = E{h^2} = alpha_hat (alpha_hat + 1) scale^2 = mean^2 + var.
struct GammaApprox {
    double alpha_hat = 0.0;
    double mean_h = 0.0;   ///< N E{Z}
    double var_h = 0.0;    ///< N Var{Z}
    double omega_h = 0.0;  ///< second moment of the fitted envelope

    double scale() const { return var_h / mean_h; }
};

GammaApprox gamma_approx(const IrsLinkModel& model);

/// Fitted-envelope density and distribution.
double envelope_pdf_approx(const GammaApprox& ga, double h);
double envelope_cdf_approx(const GammaApprox& ga, double h);

/// Density of the instantaneous SNR gamma = gbar h^2 / omega_h under the
/// fitted envelope:
///
///   f(g) = (1 / (2 Gamma(a))) (a(a+1)/gbar)^{a/2} g^{a/2-1}
///          exp(-sqrt(a(a+1) g / gbar)),
///
/// a generalized gamma law with mean exactly gbar.
double snr_pdf_approx(const GammaApprox& ga, double gbar_sigma, double gamma);

/// SNR distribution function P(a, sqrt(a(a+1) gamma / gbar)).
double snr_cdf_approx(const GammaApprox& ga, double gbar_sigma, double gamma);

/// Outage probability P(gamma < gamma_th) under the fitted law.
double outage_exact_approx(const GammaApprox& ga, double gbar_sigma,
                           double gamma_th);

/// High-SNR outage asymptote (a(a+1))^{a/2}/Gamma(a+1) (gamma_th/gbar)^{a/2};
/// its log-log slope in gbar is exactly -alpha_hat/2.
double outage_asymptotic(const GammaApprox& ga, double gbar_sigma,
                         double gamma_th);

/// Ergodic capacity E{log2(1 + gamma)} in bits/s/Hz under the fitted law.
double ergodic_capacity_approx(const GammaApprox& ga, double gbar_sigma,
                               double rel_tol = 1e-10);

/// Each draw is the sum of n_irs independent element products. Stream id k
/// consumes link streams (2k, 2k+1); a single-element model therefore
/// reproduces cascade::sample_product exactly.
std::vector<double> sample_sum(const IrsLinkModel& model, StreamId id,
                               std::size_t n);

// ---------------------------------------------------------------------------
// Numeric-exact sum law
// ---------------------------------------------------------------------------

/// Distribution of the sum envelope realized through its characteristic
/// function: phi_sum(t) = phi_Z(t)^N, inverted by the half-line sine formula
///
///   F(h) = 1/2 - (1/pi) Int_0^inf Im[phi_sum(t) e^{-ith}] / t dt.
///
/// The frequency axis is covered by logarithmically refined panels out to
/// where |phi_Z|^N falls below a floor (capped at t_cap, with the truncated
/// remainder restored by a first-order integration-by-parts correction).
/// Construction is the expensive step; cdf() is O(panels) per query, so one
/// instance serves arbitrarily many evaluation points. This law is the
/// reference the Gamma approximation is measured against.
class SumDistribution {
public:
    struct Options {
        double t_lo = 1e-8;        ///< analytic strip below the first panel
        double t_cap = 0.0;        ///< frequency ceiling; 0 = auto (scales as 1/N)
        double psi_floor = 1e-12;  ///< stop once |phi_Z|^N drops below this
        double panel_growth = 1.35;
        int points_per_panel = 12;
        cascade::ProductTransform::Options transform;
    };

    SumDistribution(const cascade::CascadePair& pair, int n_irs);
    SumDistribution(const cascade::CascadePair& pair, int n_irs,
                    const Options& opts);

    double cdf(double h) const;

    /// phi_Z(t)^N at arbitrary frequency (exposed for diagnostics).
    std::complex<double> char_fn_sum(double t) const;

    int n_irs() const noexcept { return n_; }
    double mean() const noexcept { return mean_sum_; }
    double frequency_cut() const noexcept { return t_cut_; }

private:
    int n_;
    double mean_sum_;
    double t_lo_;
    double t_cut_;
    std::size_t cut_panel_;
    cascade::ProductTransform transform_;
    numerics::OscillatoryGrid grid_;
    std::vector<std::complex<double>> coeffs_;    // of psi(t)/t
    std::complex<double> g_at_cut_;               // psi(T)/T
};

/// Convenience wrapper: builds a SumDistribution and evaluates one point.
/// Prefer constructing SumDistribution directly when querying many h.
double sum_cdf_numeric(const IrsLinkModel& model, double h);

}  // namespace hyperfade::irslink
