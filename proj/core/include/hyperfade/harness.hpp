#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hyperfade/irs_link.hpp"

namespace hyperfade::harness {

/// Grid description for outage/capacity curve runs. All SNR quantities are
/// in dB at this boundary; conversion to linear scale happens exactly once
/// inside the run.
struct ExperimentConfig {
    std::vector<double> alpha0_list;        ///< symmetric-link shapes, in (0, 0.316)
    std::vector<int> n_irs_list;            ///< element counts per curve
    double snr_db_lo = -5.0;
    double snr_db_hi = 20.0;
    double snr_db_step = 2.5;
    double gamma_th_db = 0.0;               ///< outage threshold
    std::size_t n_samples = 1'000'000;
    std::uint64_t seed = 1;
    int workers = 4;

    /// Throws ConfigError carrying the offending field path.
    void validate() const;

    std::vector<double> snr_grid_db() const;
};

/// One grid cell result. Analytic columns come from the moment-matched Gamma
/// model; the Monte Carlo columns sample the exact sum law.
struct CurvePoint {
    double alpha0 = 0.0;
    int n_irs = 0;
    double snr_db = 0.0;
    double op_analytic = 0.0;
    double op_mc = 0.0;
    double op_mc_stderr = 0.0;
    double ec_analytic = 0.0;
    double ec_mc = 0.0;
    double ec_mc_stderr = 0.0;
};

struct CurveTable {
    std::vector<CurvePoint> points;  ///< sorted by (alpha0, n_irs, snr_db)
    ExperimentConfig config;         ///< the exact configuration that ran
};

/// Runs the full grid. Monte Carlo draws the sum envelope once per
/// (alpha0, n_irs) cell and reuses it across the SNR axis; the SNR mapping
/// gamma = gbar h^2 / E{h^2} uses the analytic second moment
/// N E{Z^2} + N(N-1) E{Z}^2 so analytic and sampled columns share one
/// normalization. Outage counts use the strict inequality gamma < gamma_th.
/// Deterministic for a fixed (seed, workers): worker w of cell c owns sample
/// stream c*workers + w.
CurveTable run_curves(const ExperimentConfig& config);

// ---------------------------------------------------------------------------
// Approximation-tightness reports
// ---------------------------------------------------------------------------

struct TightnessEntry {
    int n_irs = 0;
    double ks_envelope = 0.0;  ///< empirical sum envelope vs fitted Gamma CDF
    double ks_snr = 0.0;       ///< empirical SNR vs generalized-gamma CDF
    double ks_numeric = -1.0;  ///< vs the characteristic-function law; -1 if skipped
};

struct TightnessReport {
    std::vector<TightnessEntry> entries;
    std::size_t n_samples = 0;
    std::uint64_t seed = 0;
    int workers = 1;
};

struct TightnessOptions {
    bool include_numeric_law = false;  ///< also score against SumDistribution
    int workers = 1;
};

/// Kolmogorov-Smirnov distances of the Gamma approximation per element count.
TightnessReport validate_approx(const cascade::CascadePair& pair,
                                const std::vector<int>& n_irs_list,
                                std::size_t n_samples, std::uint64_t seed,
                                const TightnessOptions& opts = {});

// ---------------------------------------------------------------------------
// Statistics helpers
// ---------------------------------------------------------------------------

/// Two-sided KS statistic of an ascending sample against a CDF. `stride`
/// evaluates every stride-th order statistic (ranks stay exact), trading at
/// most stride/n of resolution for fewer CDF calls.
double ks_statistic(const std::vector<double>& sorted_samples,
                    const std::function<double(double)>& cdf, std::size_t stride = 1);

/// Asymptotic KS critical value: sqrt(-ln(significance/2)/2) / sqrt(n).
double ks_critical_value(std::size_t n, double significance);

/// Sum-envelope samples partitioned across deterministic worker streams and
/// returned sorted ascending. Worker w uses stream stream_base + w.
std::vector<double> sample_sum_sorted(const irslink::IrsLinkModel& model,
                                      std::uint64_t seed, std::uint64_t stream_base,
                                      std::size_t n, int workers);

// ---------------------------------------------------------------------------
// Serialization (CSV is the primary artifact; JSON mirrors it)
// ---------------------------------------------------------------------------

/// Header: alpha0,n_irs,snr_db,op_analytic,op_mc,op_mc_stderr,ec_analytic,
/// ec_mc,ec_mc_stderr. UTF-8, LF line endings, '.' decimal separator,
/// shortest round-trip float formatting.
std::string curves_to_csv(const CurveTable& table);

/// The same rows as a JSON array of objects, plus schema_version.
std::string curves_to_json(const CurveTable& table);

/// Sidecar describing the run: schema version, code version, seed, workers,
/// and the full configuration echo.
std::string run_metadata_json(const CurveTable& table);

std::string tightness_to_json(const TightnessReport& report);

/// Writes prefix.csv, prefix.json and prefix.meta.json.
void write_curve_artifacts(const CurveTable& table, const std::string& prefix);

/// Shortest round-trip decimal rendering of a double (the CSV float format).
std::string format_double(double v);

}  // namespace hyperfade::harness
