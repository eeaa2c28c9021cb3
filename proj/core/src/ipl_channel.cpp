#include "hyperfade/ipl_channel.hpp"

#include <cmath>
#include <string>

#include "hyperfade/numerics.hpp"

namespace hyperfade::ipl {

namespace {

// ln(1 + e^L) without overflow
double ln1p_exp(double L) {
    return std::max(L, 0.0) + std::log1p(std::exp(-std::abs(L)));
}

// ln(expm1(w)) for w > 0
double ln_expm1(double w) {
    if (w > 36.0) return w;  // e^{-w} below double epsilon
    return std::log(std::expm1(w));
}

// ln u(x) where u = (Omega/x^2)^beta / g
double log_u(const IplParams& p, double x) {
    return p.beta * (std::log(p.omega) - 2.0 * std::log(x)) - p.log_g_norm;
}

}  // namespace

double IplParams::g_norm() const { return std::exp(log_g_norm); }

IplParams make_ipl(double alpha, double beta, double omega) {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw DomainError("alpha", "make_ipl: alpha must be > 0 (got " + std::to_string(alpha) + ")");
    if (!(beta > 1.0) || !std::isfinite(beta))
        throw DomainError("beta", "make_ipl: beta must exceed 1 so that E{X^2} is finite (got " +
                                      std::to_string(beta) + ")");
    if (!(omega > 0.0) || !std::isfinite(omega))
        throw DomainError("omega", "make_ipl: omega must be > 0 (got " + std::to_string(omega) + ")");
    IplParams p;
    p.alpha = alpha;
    p.beta = beta;
    p.omega = omega;
    p.log_g_norm = beta * (numerics::ln_gamma(1.0 - 1.0 / beta) +
                           numerics::ln_gamma(alpha + 1.0 / beta) -
                           numerics::ln_gamma(alpha));
    return p;
}

double log_pdf_envelope(const IplParams& p, double x) {
    if (!(x > 0.0)) throw DomainError("x", "pdf_envelope requires x > 0");
    // f = 2 alpha beta u (1+u)^{-(alpha+1)} / x
    const double L = log_u(p, x);
    return std::log(2.0 * p.alpha * p.beta) - std::log(x) + L -
           (p.alpha + 1.0) * ln1p_exp(L);
}

double pdf_envelope(const IplParams& p, double x) {
    return std::exp(log_pdf_envelope(p, x));
}

double cdf_envelope(const IplParams& p, double x) {
    if (!(x > 0.0)) throw DomainError("x", "cdf_envelope requires x > 0");
    return std::exp(-p.alpha * ln1p_exp(log_u(p, x)));
}

double survival_envelope(const IplParams& p, double x) {
    if (!(x > 0.0)) throw DomainError("x", "survival_envelope requires x > 0");
    return -std::expm1(-p.alpha * ln1p_exp(log_u(p, x)));
}

double quantile(const IplParams& p, double u) {
    if (!(u > 0.0 && u < 1.0))
        throw DomainError("u", "quantile requires u in (0,1)");
    const double w = -std::log(u) / p.alpha;  // ln(u^{-1/alpha})
    const double log_t = ln_expm1(w);         // ln(u^{-1/alpha} - 1)
    return std::sqrt(p.omega) * std::exp(-(p.log_g_norm + log_t) / (2.0 * p.beta));
}

double quantile_from_survival(const IplParams& p, double q) {
    if (!(q > 0.0 && q < 1.0))
        throw DomainError("q", "quantile_from_survival requires q in (0,1)");
    const double w = -std::log1p(-q) / p.alpha;
    const double log_t = ln_expm1(w);
    return std::sqrt(p.omega) * std::exp(-(p.log_g_norm + log_t) / (2.0 * p.beta));
}

double moment_envelope(const IplParams& p, double r) {
    const double lo = -2.0 * p.alpha * p.beta;
    const double hi = 2.0 * p.beta;
    if (!(r > lo && r < hi))
        throw MomentRangeError(
            "r", r, lo, hi,
            "moment_envelope: order " + std::to_string(r) +
                " outside the existence range (" + std::to_string(lo) + ", " +
                std::to_string(hi) + ")");
    const double s = r / (2.0 * p.beta);
    return std::pow(p.omega, r / 2.0) *
           std::exp(-s * p.log_g_norm + numerics::ln_gamma(1.0 - s) +
                    numerics::ln_gamma(p.alpha + s) - numerics::ln_gamma(p.alpha));
}

std::vector<double> sample(const IplParams& p, StreamId stream_id, std::size_t n) {
    StreamRng rng(stream_id);
    std::vector<double> out(n);
    for (auto& x : out) x = quantile(p, rng.uniform_open());
    return out;
}

double sample_one(const IplParams& p, StreamRng& rng) {
    return quantile(p, rng.uniform_open());
}

bool is_full_hrr_link(double alpha, double beta, bool strict_product) {
    if (!(alpha > 0.0) || !(beta > 0.0))
        throw DomainError("alpha", "is_full_hrr_link requires positive parameters");
    const double prod = alpha * beta;
    const bool product_ok = strict_product ? (prod < 1.0) : (prod <= 1.0);
    return product_ok && alpha < kFullHrrAlphaMax;
}

}  // namespace hyperfade::ipl
