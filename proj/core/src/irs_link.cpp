#include "hyperfade/irs_link.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hyperfade/numerics.hpp"

namespace hyperfade::irslink {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

std::complex<double> powi(std::complex<double> z, int n) {
    std::complex<double> acc(1.0, 0.0);
    while (n > 0) {
        if (n & 1) acc *= z;
        z *= z;
        n >>= 1;
    }
    return acc;
}

}  // namespace

IrsLinkModel make_model(const cascade::CascadePair& pair, int n_irs,
                        double gbar_sigma) {
    if (n_irs < 1) throw DomainError("n_irs", "make_model: n_irs must be >= 1");
    if (!(gbar_sigma > 0.0))
        throw DomainError("gbar_sigma", "make_model: gbar_sigma must be > 0");
    return IrsLinkModel{pair, n_irs, gbar_sigma};
}

GammaApprox gamma_approx(const IrsLinkModel& model) {
    const double m1 = cascade::product_moment(model.pair, 1.0);
    const double m2 = cascade::product_moment(model.pair, 2.0);
    const double kappa_minus_1 = m2 / (m1 * m1) - 1.0;
    // alpha_hat = N * (1/(kappa-1)) so alpha_hat(N) == N * alpha_hat(1) exactly
    const double unit_shape = 1.0 / kappa_minus_1;
    GammaApprox ga;
    ga.alpha_hat = double(model.n_irs) * unit_shape;
    ga.mean_h = double(model.n_irs) * m1;
    ga.var_h = double(model.n_irs) * (m2 - m1 * m1);
    const double theta = ga.var_h / ga.mean_h;
    ga.omega_h = ga.alpha_hat * (ga.alpha_hat + 1.0) * theta * theta;
    return ga;
}

double envelope_pdf_approx(const GammaApprox& ga, double h) {
    if (!(h > 0.0)) throw DomainError("h", "envelope_pdf_approx requires h > 0");
    const double theta = ga.scale();
    return std::exp((ga.alpha_hat - 1.0) * std::log(h) - h / theta -
                    numerics::ln_gamma(ga.alpha_hat) -
                    ga.alpha_hat * std::log(theta));
}

double envelope_cdf_approx(const GammaApprox& ga, double h) {
    if (!(h > 0.0)) throw DomainError("h", "envelope_cdf_approx requires h > 0");
    return numerics::reg_lower_inc_gamma(ga.alpha_hat, h / ga.scale());
}

double snr_pdf_approx(const GammaApprox& ga, double gbar_sigma, double gamma) {
    if (!(gamma > 0.0)) throw DomainError("gamma", "snr_pdf_approx requires gamma > 0");
    if (!(gbar_sigma > 0.0))
        throw DomainError("gbar_sigma", "snr_pdf_approx requires gbar_sigma > 0");
    const double a = ga.alpha_hat;
    const double c = a * (a + 1.0) / gbar_sigma;
    return std::exp(std::log(0.5) - numerics::ln_gamma(a) + 0.5 * a * std::log(c) +
                    (0.5 * a - 1.0) * std::log(gamma) - std::sqrt(c * gamma));
}

double snr_cdf_approx(const GammaApprox& ga, double gbar_sigma, double gamma) {
    if (!(gamma > 0.0)) throw DomainError("gamma", "snr_cdf_approx requires gamma > 0");
    if (!(gbar_sigma > 0.0))
        throw DomainError("gbar_sigma", "snr_cdf_approx requires gbar_sigma > 0");
    const double a = ga.alpha_hat;
    return numerics::reg_lower_inc_gamma(
        a, std::sqrt(a * (a + 1.0) * gamma / gbar_sigma));
}

double outage_exact_approx(const GammaApprox& ga, double gbar_sigma,
                           double gamma_th) {
    if (!(gamma_th > 0.0))
        throw DomainError("gamma_th", "outage_exact_approx requires gamma_th > 0");
    return snr_cdf_approx(ga, gbar_sigma, gamma_th);
}

double outage_asymptotic(const GammaApprox& ga, double gbar_sigma,
                         double gamma_th) {
    if (!(gamma_th > 0.0) || !(gbar_sigma > 0.0))
        throw DomainError("gamma_th", "outage_asymptotic requires positive SNRs");
    const double a = ga.alpha_hat;
    return std::exp(0.5 * a * std::log(a * (a + 1.0)) -
                    numerics::ln_gamma(a + 1.0) +
                    0.5 * a * std::log(gamma_th / gbar_sigma));
}

double ergodic_capacity_approx(const GammaApprox& ga, double gbar_sigma,
                               double rel_tol) {
    if (!(gbar_sigma > 0.0))
        throw DomainError("gbar_sigma", "ergodic_capacity_approx requires gbar_sigma > 0");
    const double a = ga.alpha_hat;
    const double c = gbar_sigma / (a * (a + 1.0));  // gamma = c y^2, y ~ Gamma(a,1)
    const double ln_norm = numerics::ln_gamma(a);
    const double inv_ln2 = 1.4426950408889634073599246810018921;
    auto integrand = [&](double y) {
        if (y <= 0.0) return 0.0;
        const double w = (a - 1.0) * std::log(y) - y - ln_norm;
        return inv_ln2 * std::log1p(c * y * y) * std::exp(w);
    };
    numerics::QuadratureOptions opts;
    opts.rel_tol = rel_tol;
    opts.abs_tol = 1e-15;
    return numerics::integrate_adaptive(integrand, 0.0,
                                        std::numeric_limits<double>::infinity(),
                                        opts)
        .value;
}

std::vector<double> sample_sum(const IrsLinkModel& model, StreamId id,
                               std::size_t n) {
    StreamRng rng_s(id.seed, 2 * id.stream);
    StreamRng rng_d(id.seed, 2 * id.stream + 1);
    std::vector<double> out(n);
    for (auto& h : out) {
        double acc = 0.0;
        for (int j = 0; j < model.n_irs; ++j)
            acc += ipl::sample_one(model.pair.source, rng_s) *
                   ipl::sample_one(model.pair.dest, rng_d);
        h = acc;
    }
    return out;
}

// ---------------------------------------------------------------------------
// SumDistribution
// ---------------------------------------------------------------------------

namespace {

// Panel widths track the oscillation of phi^N only through the bulk region;
// past it the characteristic function is governed by the density's origin
// singularity and varies on a logarithmic scale, so widths grow geometrically.
constexpr double kSmoothFrequency = 150.0;

std::vector<double> frequency_panel_edges(double t_lo, double t_cap,
                                          double growth, double width_cap) {
    std::vector<double> edges;
    edges.push_back(t_lo);
    double t = t_lo;
    while (t < t_cap) {
        double w = (growth - 1.0) * t;
        if (t < kSmoothFrequency) w = std::min(w, width_cap);
        t += w;
        edges.push_back(std::min(t, t_cap));
    }
    if (edges.back() < t_cap) edges.push_back(t_cap);
    return edges;
}

double effective_t_cap(const SumDistribution::Options& opts) {
    return opts.t_cap > 0.0 ? opts.t_cap : 30000.0;
}

}  // namespace

SumDistribution::SumDistribution(const cascade::CascadePair& pair, int n_irs)
    : SumDistribution(pair, n_irs, Options{}) {}

SumDistribution::SumDistribution(const cascade::CascadePair& pair, int n_irs,
                                 const Options& opts)
    : n_(n_irs),
      mean_sum_(double(n_irs) * cascade::product_moment(pair, 1.0)),
      t_lo_(opts.t_lo),
      transform_(pair, opts.transform),
      grid_(frequency_panel_edges(
                opts.t_lo, effective_t_cap(opts), opts.panel_growth,
                1.2 / (1.0 + double(n_irs) * cascade::product_moment(pair, 1.0))),
            opts.points_per_panel) {
    if (n_irs < 1) throw DomainError("n_irs", "SumDistribution: n_irs must be >= 1");
    const auto& nodes = grid_.nodes();
    const int ppp = opts.points_per_panel;
    const double mod_floor = std::pow(opts.psi_floor, 1.0 / double(n_));

    // sample phi panel by panel, stopping once |phi|^N stays below the floor
    // for a run of panels
    std::vector<std::complex<double>> values(nodes.size(), {0.0, 0.0});
    cut_panel_ = grid_.panel_count();
    std::size_t quiet_run = 0;
    for (std::size_t p = 0; p < grid_.panel_count(); ++p) {
        double pmax = 0.0;
        for (int k = 0; k < ppp; ++k) {
            const double t = nodes[p * ppp + k];
            const std::complex<double> phi = transform_.char_fn(t);
            pmax = std::max(pmax, std::abs(phi));
            values[p * ppp + k] = powi(phi, n_) / t;
        }
        if (pmax < mod_floor) {
            if (++quiet_run >= 3) {
                cut_panel_ = p - 2;
                break;
            }
        } else {
            quiet_run = 0;
        }
    }
    coeffs_ = grid_.project(values);
    t_cut_ = grid_.edges()[cut_panel_];
    g_at_cut_ = powi(transform_.char_fn(t_cut_), n_) / t_cut_;
}

std::complex<double> SumDistribution::char_fn_sum(double t) const {
    return powi(transform_.char_fn(t), n_);
}

double SumDistribution::cdf(double h) const {
    if (!(h > 0.0)) throw DomainError("h", "SumDistribution::cdf requires h > 0");
    // strip below the first panel: integrand -> (mean - h) as t -> 0
    const double strip = (mean_sum_ - h) * t_lo_;
    const std::complex<double> panels = grid_.transform(coeffs_, -h, 0, cut_panel_);
    // first-order integration-by-parts tail beyond the cut; valid only once
    // e^{-ith} actually rotates across the truncated range
    double tail = 0.0;
    if (h * t_cut_ >= 6.0) {
        const std::complex<double> rot =
            g_at_cut_ * std::exp(std::complex<double>(0.0, -t_cut_ * h));
        tail = -rot.real() / h;
    }
    const double f = 0.5 - (strip + panels.imag() + tail) / kPi;
    return std::clamp(f, 0.0, 1.0);
}

double sum_cdf_numeric(const IrsLinkModel& model, double h) {
    SumDistribution dist(model.pair, model.n_irs);
    return dist.cdf(h);
}

}  // namespace hyperfade::irslink
