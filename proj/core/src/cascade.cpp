#include "hyperfade/cascade.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hyperfade::cascade {

namespace {

// Quantile evaluated through whichever end of the unit interval is known
// more accurately (tanh-sinh integrands supply both v and 1-v).
double quantile_stable(const ipl::IplParams& p, double v, double vbar) {
    return (v <= 0.5) ? ipl::quantile(p, v) : ipl::quantile_from_survival(p, vbar);
}

double link_moment(const ipl::IplParams& link, double r, const char* name) {
    try {
        return ipl::moment_envelope(link, r);
    } catch (const MomentRangeError& e) {
        throw MomentRangeError(name, r, e.range_lo(), e.range_hi(),
                               std::string("product_moment: ") + name +
                                   " link diverges: " + e.what());
    }
}

}  // namespace

CascadePair make_pair(const ipl::IplParams& source, const ipl::IplParams& dest) {
    return CascadePair{source, dest};
}

double product_moment(const CascadePair& pair, double r) {
    return link_moment(pair.source, r, "source") * link_moment(pair.dest, r, "dest");
}

double kappa(const CascadePair& pair) {
    const double m1 = product_moment(pair, 1.0);
    const double m2 = product_moment(pair, 2.0);
    return m2 / (m1 * m1);
}

FoxHSpec make_foxh_spec(const CascadePair& pair) {
    const auto& s = pair.source;
    const auto& d = pair.dest;
    FoxHSpec spec;
    spec.upper = {{{0.0, 1.0 / (2.0 * s.beta)}, {0.0, 1.0 / (2.0 * d.beta)}}};
    spec.lower = {{{s.alpha, 1.0 / (2.0 * s.beta)}, {d.alpha, 1.0 / (2.0 * d.beta)}}};
    // per-link Gamma-ratio constant r_i = g_i^{1/beta_i}
    const double log_rs = s.log_g_norm / s.beta;
    const double log_rd = d.log_g_norm / d.beta;
    spec.arg_scale =
        std::exp(0.5 * (log_rs + log_rd - std::log(s.omega) - std::log(d.omega)));
    spec.strip_lo = -2.0 * std::min(s.alpha * s.beta, d.alpha * d.beta);
    spec.strip_hi = 2.0 * std::min(s.beta, d.beta);
    const double margin = 0.05 * (spec.strip_hi - spec.strip_lo);
    const double lo_edge = std::max(0.0, spec.strip_lo + margin);
    const double hi_edge = spec.strip_hi - margin;
    spec.default_abscissa = 0.5 * (lo_edge + hi_edge);
    return spec;
}

double product_pdf_direct(const CascadePair& pair, double z, double tol) {
    if (!(z > 0.0)) throw DomainError("z", "product_pdf_direct requires z > 0");
    const auto& s = pair.source;
    const auto& d = pair.dest;
    auto integrand = [&](double v, double vbar) {
        const double x = quantile_stable(s, v, vbar);
        return std::exp(ipl::log_pdf_envelope(d, z / x) - std::log(x));
    };
    return numerics::integrate_unit_tanh_sinh(integrand, tol).value;
}

double product_pdf_foxh(const CascadePair& pair, double z, double tol,
                        std::optional<double> abscissa) {
    if (!(z > 0.0)) throw DomainError("z", "product_pdf_foxh requires z > 0");
    const FoxHSpec spec = make_foxh_spec(pair);
    const double c = abscissa.value_or(spec.default_abscissa);
    if (!spec.contour_feasible(c))
        throw ContourError("product_pdf_foxh: abscissa " + std::to_string(c) +
                           " outside the feasible strip (" +
                           std::to_string(spec.strip_lo) + ", " +
                           std::to_string(spec.strip_hi) + ")");
    const auto& s = pair.source;
    const auto& d = pair.dest;
    const double log_arg = std::log(spec.arg_scale * z);
    auto theta = [&](std::complex<double> sv) {
        const std::complex<double> half_s = 0.5 * sv;
        return std::exp(numerics::ln_gamma(s.alpha + half_s / s.beta) +
                        numerics::ln_gamma(d.alpha + half_s / d.beta) +
                        numerics::ln_gamma(1.0 - half_s / s.beta) +
                        numerics::ln_gamma(1.0 - half_s / d.beta) - sv * log_arg);
    };
    const double h = numerics::integrate_vertical_contour(theta, c, tol, true);
    return h * std::exp(-numerics::ln_gamma(s.alpha) - numerics::ln_gamma(d.alpha)) / z;
}

double survival_product(const CascadePair& pair, double z, double tol) {
    if (!(z > 0.0)) throw DomainError("z", "survival_product requires z > 0");
    const auto& s = pair.source;
    const auto& d = pair.dest;
    auto integrand = [&](double v, double vbar) {
        const double x = quantile_stable(s, v, vbar);
        return ipl::survival_envelope(d, z / x);
    };
    return numerics::integrate_unit_tanh_sinh(integrand, tol).value;
}

double cdf_product(const CascadePair& pair, double z, double tol) {
    return 1.0 - survival_product(pair, z, tol);
}

double laplace_transform_product(const CascadePair& pair, double u, double tol) {
    if (!(u >= 0.0)) throw DomainError("u", "laplace_transform_product requires u >= 0");
    if (u == 0.0) return 1.0;
    const auto& s = pair.source;
    const auto& d = pair.dest;
    auto outer = [&](double v, double vbar) {
        const double xs = quantile_stable(s, v, vbar);
        auto inner = [&](double w, double wbar) {
            return std::exp(-u * xs * quantile_stable(d, w, wbar));
        };
        return numerics::integrate_unit_tanh_sinh(inner, tol).value;
    };
    return numerics::integrate_unit_tanh_sinh(outer, tol).value;
}

std::complex<double> char_fn_product(const CascadePair& pair, double t, double tol) {
    if (t == 0.0) return {1.0, 0.0};
    const auto& s = pair.source;
    const auto& d = pair.dest;
    auto part = [&](bool real_part) {
        auto outer = [&](double v, double vbar) {
            const double xs = quantile_stable(s, v, vbar);
            auto inner = [&](double w, double wbar) {
                const double phase = t * xs * quantile_stable(d, w, wbar);
                return real_part ? std::cos(phase) : std::sin(phase);
            };
            return numerics::integrate_unit_tanh_sinh(inner, tol).value;
        };
        return numerics::integrate_unit_tanh_sinh(outer, tol).value;
    };
    return {part(true), part(false)};
}

std::vector<double> sample_product(const CascadePair& pair, StreamId id,
                                   std::size_t n) {
    StreamRng rng_s(id.seed, 2 * id.stream);
    StreamRng rng_d(id.seed, 2 * id.stream + 1);
    std::vector<double> out(n);
    for (auto& z : out)
        z = ipl::sample_one(pair.source, rng_s) * ipl::sample_one(pair.dest, rng_d);
    return out;
}

// ---------------------------------------------------------------------------
// ProductTransform
// ---------------------------------------------------------------------------

namespace {

std::vector<double> survival_panel_edges(const CascadePair& pair,
                                         const ProductTransform::Options& opts) {
    // truncation point: survival below the floor
    const double median =
        ipl::quantile(pair.source, 0.5) * ipl::quantile(pair.dest, 0.5);
    double zf = std::max(1.0, 8.0 * median);
    while (survival_product(pair, zf, opts.quad_tol) > opts.survival_floor)
        zf *= 2.0;
    // one near-zero panel, then geometric growth
    std::vector<double> edges;
    edges.push_back(0.0);
    double e = 1e-5 * median;
    while (e < zf) {
        edges.push_back(e);
        e *= opts.panel_ratio;
    }
    edges.push_back(zf);
    return edges;
}

}  // namespace

ProductTransform::ProductTransform(const CascadePair& pair)
    : ProductTransform(pair, Options{}) {}

ProductTransform::ProductTransform(const CascadePair& pair, const Options& opts)
    : grid_(survival_panel_edges(pair, opts), opts.points_per_panel),
      z_far_(grid_.edges().back()) {
    std::vector<std::complex<double>> values(grid_.nodes().size());
    for (std::size_t i = 0; i < values.size(); ++i)
        values[i] = survival_product(pair, grid_.nodes()[i], opts.quad_tol);
    coeffs_ = grid_.project(values);
    tail_mass_ = survival_product(pair, z_far_, opts.quad_tol);
    mean_ = product_moment(pair, 1.0);
}

std::complex<double> ProductTransform::char_fn(double t) const {
    if (t == 0.0) return {1.0, 0.0};
    const std::complex<double> integral = grid_.transform(coeffs_, t);
    return 1.0 + std::complex<double>(0.0, t) * integral;
}

}  // namespace hyperfade::cascade
