#include "hyperfade/hrr.hpp"

#include <cmath>

#include "hyperfade/numerics.hpp"

namespace hyperfade::hrr {

namespace {

void check_shape(double alpha_hat) {
    if (!(alpha_hat > 0.0) || !std::isfinite(alpha_hat))
        throw DomainError("alpha_hat", "hrr: alpha_hat must be > 0 and finite");
}

}  // namespace

std::string to_string(Regime r) {
    switch (r) {
        case Regime::FullHrr: return "full-hrr";
        case Regime::StrongHrr: return "strong-hrr";
        case Regime::WeakHrr: return "weak-hrr";
        case Regime::NoHrr: return "no-hrr";
    }
    return "unknown";
}

double aof(double alpha_hat) {
    check_shape(alpha_hat);
    return 2.0 * (2.0 * alpha_hat + 3.0) / (alpha_hat * (alpha_hat + 1.0));
}

double diversity_gain(double alpha_hat) {
    check_shape(alpha_hat);
    return 0.5 * alpha_hat;
}

double power_offset(double alpha_hat) {
    check_shape(alpha_hat);
    return std::exp(0.5 * alpha_hat * std::log(alpha_hat * (alpha_hat + 1.0)) -
                    numerics::ln_gamma(alpha_hat + 1.0));
}

double capacity_loss(double alpha_hat) {
    check_shape(alpha_hat);
    return -numerics::kEulerGamma + std::log(alpha_hat * (alpha_hat + 1.0)) -
           2.0 * numerics::digamma(alpha_hat);
}

double ec_boundary_exact() {
    static const double root = numerics::find_root_bracketed(
        [](double a) { return capacity_loss(a); }, 2.0, 6.0, 1e-13);
    return root;
}

double ec_boundary_taylor() {
    return (1.0 + std::sqrt(1.0 - numerics::kEulerGamma / 3.0)) /
           numerics::kEulerGamma;
}

double aof_boundary() { return 0.5 * (3.0 + std::sqrt(33.0)); }

HrrMetrics metrics(double alpha_hat) {
    check_shape(alpha_hat);
    return {aof(alpha_hat), diversity_gain(alpha_hat), power_offset(alpha_hat),
            capacity_loss(alpha_hat)};
}

bool aof_hyper(const HrrMetrics& m) { return m.aof > 1.0; }

bool ec_hyper(const HrrMetrics& m) { return m.delta_c > 0.0; }

bool op_hyper(const HrrMetrics& m) {
    return m.g_d < 1.0 || (m.g_d == 1.0 && m.delta_po > 1.0);
}

Regime classify(double alpha_hat) {
    check_shape(alpha_hat);
    if (alpha_hat <= 2.0) return Regime::FullHrr;
    if (alpha_hat <= ec_boundary_exact()) return Regime::StrongHrr;
    if (alpha_hat <= aof_boundary()) return Regime::WeakHrr;
    return Regime::NoHrr;
}

HrrMetrics rayleigh_benchmark() {
    HrrMetrics m;
    // AoF from the normalized second moment Gamma(3)/Gamma(2)^2 of the
    // exponential law.
    m.aof = std::exp(numerics::ln_gamma(3.0) - 2.0 * numerics::ln_gamma(2.0)) - 1.0;
    // Slope and coefficient of the exponential outage P(x) = 1 - e^{-x}
    // extracted in the deep-threshold limit.
    const double x1 = 1e-12, x2 = 1e-13;
    const double p1 = -std::expm1(-x1), p2 = -std::expm1(-x2);
    m.g_d = std::log(p1 / p2) / std::log(x1 / x2);
    m.delta_po = p1 / std::pow(x1, m.g_d);
    // Capacity gap -G_e - M'(0) with M'(0) = psi(1) for the exponential law.
    m.delta_c = -numerics::kEulerGamma - numerics::digamma(1.0);
    return m;
}

}  // namespace hyperfade::hrr
