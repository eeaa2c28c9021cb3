#include "hyperfade/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "hyperfade/solver.hpp"
#include "hyperfade/version.hpp"

namespace hyperfade::harness {

using ordered_json = nlohmann::ordered_json;

void ExperimentConfig::validate() const {
    if (alpha0_list.empty())
        throw ConfigError("alpha0_list", "config: alpha0_list must not be empty");
    for (std::size_t i = 0; i < alpha0_list.size(); ++i)
        if (!(alpha0_list[i] > 0.0 && alpha0_list[i] < ipl::kFullHrrAlphaMax))
            throw ConfigError("alpha0_list[" + std::to_string(i) + "]",
                              "config: alpha0 values must lie in (0, 0.316)");
    if (n_irs_list.empty())
        throw ConfigError("n_irs_list", "config: n_irs_list must not be empty");
    for (std::size_t i = 0; i < n_irs_list.size(); ++i)
        if (n_irs_list[i] < 1)
            throw ConfigError("n_irs_list[" + std::to_string(i) + "]",
                              "config: element counts must be >= 1");
    if (!(snr_db_step > 0.0))
        throw ConfigError("snr_db_step", "config: snr step must be positive");
    if (!(snr_db_lo < snr_db_hi))
        throw ConfigError("snr_db_lo", "config: snr range must satisfy lo < hi");
    if (n_samples < 1000)
        throw ConfigError("n_samples", "config: n_samples must be >= 1000");
    if (workers < 1) throw ConfigError("workers", "config: workers must be >= 1");
}

std::vector<double> ExperimentConfig::snr_grid_db() const {
    std::vector<double> grid;
    for (double db = snr_db_lo; db <= snr_db_hi + 1e-9; db += snr_db_step)
        grid.push_back(db);
    return grid;
}

std::vector<double> sample_sum_sorted(const irslink::IrsLinkModel& model,
                                      std::uint64_t seed, std::uint64_t stream_base,
                                      std::size_t n, int workers) {
    std::vector<double> samples(n);
    const std::size_t w = std::size_t(std::max(1, workers));
    const std::size_t base = n / w;
    const std::size_t rem = n % w;
    std::vector<std::thread> threads;
    std::size_t offset = 0;
    for (std::size_t k = 0; k < w; ++k) {
        const std::size_t count = base + (k < rem ? 1 : 0);
        threads.emplace_back([&model, seed, stream_base, k, offset, count, &samples] {
            auto chunk =
                irslink::sample_sum(model, {seed, stream_base + k}, count);
            std::copy(chunk.begin(), chunk.end(), samples.begin() + offset);
        });
        offset += count;
    }
    for (auto& t : threads) t.join();
    std::sort(samples.begin(), samples.end());
    return samples;
}

CurveTable run_curves(const ExperimentConfig& config) {
    config.validate();
    CurveTable table;
    table.config = config;
    const auto snr_db = config.snr_grid_db();
    const double gamma_th = std::pow(10.0, config.gamma_th_db / 10.0);

    std::uint64_t cell_index = 0;
    for (double alpha0 : config.alpha0_list) {
        const auto pair = solver::equal_channel_params(alpha0);
        const double m1 = cascade::product_moment(pair, 1.0);
        const double m2 = cascade::product_moment(pair, 2.0);
        for (int n_irs : config.n_irs_list) {
            const auto model = irslink::make_model(pair, n_irs, 1.0);
            const auto ga = irslink::gamma_approx(model);
            // analytic second moment of the sum envelope
            const double nn = double(n_irs);
            const double omega_h = nn * m2 + nn * (nn - 1.0) * m1 * m1;
            const auto samples =
                sample_sum_sorted(model, config.seed,
                                  cell_index * std::uint64_t(config.workers),
                                  config.n_samples, config.workers);
            ++cell_index;
            const double inv_n = 1.0 / double(samples.size());
            for (double db : snr_db) {
                const double gbar = std::pow(10.0, db / 10.0);
                CurvePoint pt;
                pt.alpha0 = alpha0;
                pt.n_irs = n_irs;
                pt.snr_db = db;
                // outage: gamma < gamma_th  <=>  h < h_th
                const double h_th = std::sqrt(gamma_th * omega_h / gbar);
                const auto below =
                    std::lower_bound(samples.begin(), samples.end(), h_th) -
                    samples.begin();
                const double p = double(below) * inv_n;
                pt.op_mc = p;
                pt.op_mc_stderr = std::sqrt(p * (1.0 - p) * inv_n);
                pt.op_analytic = irslink::outage_exact_approx(ga, gbar, gamma_th);
                // ergodic capacity
                const double c = gbar / omega_h;
                double sum = 0.0, sum_sq = 0.0;
                for (double h : samples) {
                    const double v = std::log2(1.0 + c * h * h);
                    sum += v;
                    sum_sq += v * v;
                }
                const double mean = sum * inv_n;
                const double var = std::max(0.0, sum_sq * inv_n - mean * mean);
                pt.ec_mc = mean;
                pt.ec_mc_stderr = std::sqrt(var * inv_n);
                pt.ec_analytic = irslink::ergodic_capacity_approx(ga, gbar);
                table.points.push_back(pt);
            }
        }
    }
    return table;
}

TightnessReport validate_approx(const cascade::CascadePair& pair,
                                const std::vector<int>& n_irs_list,
                                std::size_t n_samples, std::uint64_t seed,
                                const TightnessOptions& opts) {
    TightnessReport report;
    report.n_samples = n_samples;
    report.seed = seed;
    report.workers = opts.workers;
    std::uint64_t cell = 0;
    for (int n_irs : n_irs_list) {
        const auto model = irslink::make_model(pair, n_irs, 1.0);
        const auto ga = irslink::gamma_approx(model);
        const auto samples = sample_sum_sorted(
            model, seed, cell * std::uint64_t(opts.workers), n_samples, opts.workers);
        ++cell;
        TightnessEntry entry;
        entry.n_irs = n_irs;
        entry.ks_envelope = ks_statistic(
            samples, [&ga](double h) { return irslink::envelope_cdf_approx(ga, h); });
        // SNR domain: gamma = gbar h^2 / omega_h with the matched second
        // moment; the fitted SNR law must score identically to the envelope.
        const double gbar = 1.0;
        std::vector<double> snr(samples.size());
        for (std::size_t i = 0; i < samples.size(); ++i)
            snr[i] = gbar * samples[i] * samples[i] / ga.omega_h;
        entry.ks_snr = ks_statistic(snr, [&ga, gbar](double g) {
            return irslink::snr_cdf_approx(ga, gbar, g);
        });
        if (opts.include_numeric_law) {
            irslink::SumDistribution dist(pair, n_irs);
            const std::size_t stride = std::max<std::size_t>(1, n_samples / 4000);
            entry.ks_numeric = ks_statistic(
                samples, [&dist](double h) { return dist.cdf(h); }, stride);
        }
        report.entries.push_back(entry);
    }
    return report;
}

double ks_statistic(const std::vector<double>& sorted_samples,
                    const std::function<double(double)>& cdf, std::size_t stride) {
    const std::size_t n = sorted_samples.size();
    if (n == 0) throw DomainError("samples", "ks_statistic: empty sample");
    double sup = 0.0;
    const double inv_n = 1.0 / double(n);
    for (std::size_t k = 1; k <= n; k += stride) {
        const double f = cdf(sorted_samples[k - 1]);
        sup = std::max(sup, std::abs(f - double(k) * inv_n));
        sup = std::max(sup, std::abs(f - double(k - 1) * inv_n));
    }
    return sup;
}

double ks_critical_value(std::size_t n, double significance) {
    if (n == 0 || !(significance > 0.0 && significance < 1.0))
        throw DomainError("significance", "ks_critical_value: bad arguments");
    return std::sqrt(-0.5 * std::log(significance / 2.0)) / std::sqrt(double(n));
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

ordered_json config_to_json(const ExperimentConfig& c) {
    ordered_json j;
    j["alpha0_list"] = c.alpha0_list;
    j["n_irs_list"] = c.n_irs_list;
    j["snr_db"] = {{"lo", c.snr_db_lo}, {"hi", c.snr_db_hi}, {"step", c.snr_db_step}};
    j["gamma_th_db"] = c.gamma_th_db;
    j["n_samples"] = c.n_samples;
    j["seed"] = c.seed;
    j["workers"] = c.workers;
    return j;
}

}  // namespace

std::string curves_to_csv(const CurveTable& table) {
    std::string out =
        "alpha0,n_irs,snr_db,op_analytic,op_mc,op_mc_stderr,ec_analytic,ec_mc,"
        "ec_mc_stderr\n";
    for (const auto& p : table.points) {
        out += format_double(p.alpha0);
        out += ',';
        out += std::to_string(p.n_irs);
        out += ',';
        out += format_double(p.snr_db);
        out += ',';
        out += format_double(p.op_analytic);
        out += ',';
        out += format_double(p.op_mc);
        out += ',';
        out += format_double(p.op_mc_stderr);
        out += ',';
        out += format_double(p.ec_analytic);
        out += ',';
        out += format_double(p.ec_mc);
        out += ',';
        out += format_double(p.ec_mc_stderr);
        out += '\n';
    }
    return out;
}

std::string curves_to_json(const CurveTable& table) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    ordered_json rows = ordered_json::array();
    for (const auto& p : table.points) {
        ordered_json r;
        r["alpha0"] = p.alpha0;
        r["n_irs"] = p.n_irs;
        r["snr_db"] = p.snr_db;
        r["op_analytic"] = p.op_analytic;
        r["op_mc"] = p.op_mc;
        r["op_mc_stderr"] = p.op_mc_stderr;
        r["ec_analytic"] = p.ec_analytic;
        r["ec_mc"] = p.ec_mc;
        r["ec_mc_stderr"] = p.ec_mc_stderr;
        rows.push_back(std::move(r));
    }
    j["points"] = std::move(rows);
    return j.dump(2) + "\n";
}

std::string run_metadata_json(const CurveTable& table) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["tool"] = "hyperfade";
    j["version"] = kVersion;
    j["seed"] = table.config.seed;
    j["workers"] = table.config.workers;
    j["config"] = config_to_json(table.config);
    return j.dump(2) + "\n";
}

std::string tightness_to_json(const TightnessReport& report) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["n_samples"] = report.n_samples;
    j["seed"] = report.seed;
    j["workers"] = report.workers;
    ordered_json rows = ordered_json::array();
    for (const auto& e : report.entries) {
        ordered_json r;
        r["n_irs"] = e.n_irs;
        r["ks_envelope"] = e.ks_envelope;
        r["ks_snr"] = e.ks_snr;
        if (e.ks_numeric >= 0.0) r["ks_numeric"] = e.ks_numeric;
        rows.push_back(std::move(r));
    }
    j["entries"] = std::move(rows);
    return j.dump(2) + "\n";
}

void write_curve_artifacts(const CurveTable& table, const std::string& prefix) {
    {
        std::ofstream f(prefix + ".csv", std::ios::binary);
        f << curves_to_csv(table);
    }
    {
        std::ofstream f(prefix + ".json", std::ios::binary);
        f << curves_to_json(table);
    }
    {
        std::ofstream f(prefix + ".meta.json", std::ios::binary);
        f << run_metadata_json(table);
    }
}

}  // namespace hyperfade::harness
