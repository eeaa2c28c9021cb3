#pragma once

#include <string>

#include "hyperfade/errors.hpp"

namespace hyperfade::hrr {

/// The four hyper-Rayleigh indicators of the aggregate link, all driven by
/// the effective Gamma shape alpha_hat of the sum envelope. The Rayleigh
/// reference point is (aof, g_d, delta_po, delta_c) = (1, 1, 1, 0); a link is
/// hyper on a given axis when it is strictly worse than that reference.
struct HrrMetrics {
    double aof = 0.0;       ///< amount of fading, E{g^2}/E{g}^2 - 1
    double g_d = 0.0;       ///< diversity gain: outage log-log slope
    double delta_po = 0.0;  ///< power offset: outage asymptote coefficient
    double delta_c = 0.0;   ///< high-SNR ergodic-capacity gap, nats
};

/// Fading-severity classes, ordered from worst to best.
enum class Regime { FullHrr, StrongHrr, WeakHrr, NoHrr };

std::string to_string(Regime r);

/// Amount of fading 2(2 a + 3) / (a (a + 1)); strictly decreasing.
double aof(double alpha_hat);

/// Diversity gain alpha_hat / 2.
double diversity_gain(double alpha_hat);

/// Power offset (a(a+1))^{a/2} / Gamma(a+1).
double power_offset(double alpha_hat);

/// Capacity-loss metric in nats:
///     -G_e + ln(a(a+1)) - 2 psi(a),
/// which vanishes exactly for Rayleigh-equivalent capacity. Strictly
/// decreasing; its root sits near 3.33.
double capacity_loss(double alpha_hat);

/// Root of capacity_loss on [2, 6]; computed once and memoized.
double ec_boundary_exact();

/// Second-order expansion of the capacity-loss root:
/// (1 + sqrt(1 - G_e/3)) / G_e, about 3.29; within 2% of the exact root.
double ec_boundary_taylor();

/// Amount-of-fading boundary (3 + sqrt(33)) / 2: the root of aof(a) = 1.
double aof_boundary();

/// All four indicators at a given effective shape.
HrrMetrics metrics(double alpha_hat);

/// The three hyper conditions of the classification, evaluated on a metrics
/// bundle. The outage condition is hyper when the slope is below the Rayleigh
/// slope, or equal to it with a power offset above 1.
bool aof_hyper(const HrrMetrics& m);
bool ec_hyper(const HrrMetrics& m);
bool op_hyper(const HrrMetrics& m);

/// Regime from the effective shape: FullHrr iff a <= 2, StrongHrr up to the
/// capacity root, WeakHrr up to (3+sqrt(33))/2, NoHrr beyond. Boundaries
/// belong to the more severe regime. Consistent with counting how many of
/// the three hyper conditions hold (3/2/1/0).
Regime classify(double alpha_hat);

/// The metrics quadruple of the exponential-SNR (Rayleigh) reference,
/// evaluated numerically from that law rather than hard-coded; lands on
/// (1, 1, 1, 0) to ~1e-10 and anchors the hyper comparisons above.
HrrMetrics rayleigh_benchmark();

}  // namespace hyperfade::hrr
