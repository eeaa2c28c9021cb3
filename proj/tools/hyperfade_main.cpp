// hyperfade command-line interface: regime classification, minimum-element
// solving, metric evaluation, pdf/cdf tabulation, curve generation and
// self-validation. Exit codes: 0 success, 1 numeric failure, 2 usage error.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hyperfade/harness.hpp"
#include "hyperfade/hrr.hpp"
#include "hyperfade/solver.hpp"
#include "hyperfade/version.hpp"

using ordered_json = nlohmann::ordered_json;
using namespace hyperfade;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNumeric = 1;
constexpr int kExitUsage = 2;

void emit(const std::string& text, const std::string& output_path) {
    if (output_path.empty() || output_path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(output_path, std::ios::binary);
    if (!f) throw ConfigError("output", "cannot open output path: " + output_path);
    f << text;
}

struct GridSpec {
    double lo = 0.0, hi = 0.0;
    int count = 0;
};

GridSpec parse_grid(const std::string& text) {
    GridSpec g;
    char colon1 = 0, colon2 = 0;
    std::istringstream in(text);
    if (!(in >> g.lo >> colon1 >> g.hi >> colon2 >> g.count) || colon1 != ':' ||
        colon2 != ':' || !(g.lo > 0.0) || !(g.hi > g.lo) || g.count < 2)
        throw ConfigError("z-grid", "grid must be lo:hi:n with 0 < lo < hi, n >= 2");
    return g;
}

std::vector<double> log_spaced(const GridSpec& g) {
    std::vector<double> z(g.count);
    const double step = std::log(g.hi / g.lo) / double(g.count - 1);
    for (int i = 0; i < g.count; ++i) z[i] = g.lo * std::exp(step * i);
    z.back() = g.hi;
    return z;
}

struct PairFlags {
    double alpha_s = 0.0, beta_s = 0.0, alpha_d = 0.0, beta_d = 0.0;
    double omega_s = 1.0, omega_d = 1.0;
    bool given() const { return alpha_s > 0.0 || beta_s > 0.0 || alpha_d > 0.0 || beta_d > 0.0; }
    cascade::CascadePair build() const {
        return cascade::make_pair(ipl::make_ipl(alpha_s, beta_s, omega_s),
                                  ipl::make_ipl(alpha_d, beta_d, omega_d));
    }
};

ordered_json metrics_json(double alpha_hat, const hrr::HrrMetrics& m) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["alpha_hat"] = alpha_hat;
    j["aof"] = m.aof;
    j["g_d"] = m.g_d;
    j["delta_po"] = m.delta_po;
    j["delta_c"] = m.delta_c;
    return j;
}

std::string record_csv(const std::vector<std::pair<std::string, std::string>>& fields) {
    std::string header, row;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        header += fields[i].first;
        row += fields[i].second;
        if (i + 1 < fields.size()) {
            header += ',';
            row += ',';
        }
    }
    return header + "\n" + row + "\n";
}

// ---------------------------------------------------------------------------
// classify / metrics / solve
// ---------------------------------------------------------------------------

struct ClassifyArgs {
    double alpha_hat = -1.0;
    double alpha0 = -1.0;
    int n_irs = 0;
    PairFlags pair;
    std::string format = "json";
    std::string output;
};

int run_classify(const ClassifyArgs& a) {
    int groups = 0;
    if (a.alpha_hat > 0.0) ++groups;
    if (a.alpha0 > 0.0) ++groups;
    if (a.pair.given()) ++groups;
    if (groups != 1)
        throw ConfigError("parameters",
                          "supply exactly one of --alpha-hat, --alpha0, or the "
                          "--alpha-s/--beta-s/--alpha-d/--beta-d group");
    double alpha_hat = a.alpha_hat;
    if (a.alpha0 > 0.0) {
        if (a.n_irs < 1) throw ConfigError("n-irs", "--alpha0 requires --n-irs");
        alpha_hat = solver::alpha_hat_at(solver::equal_channel_params(a.alpha0), a.n_irs);
    } else if (a.pair.given()) {
        if (a.n_irs < 1) throw ConfigError("n-irs", "link flags require --n-irs");
        alpha_hat = solver::alpha_hat_at(a.pair.build(), a.n_irs);
    }
    const auto m = hrr::metrics(alpha_hat);
    const auto regime = hrr::classify(alpha_hat);
    if (a.format == "csv") {
        emit(record_csv({{"alpha_hat", harness::format_double(alpha_hat)},
                         {"regime", hrr::to_string(regime)},
                         {"aof", harness::format_double(m.aof)},
                         {"g_d", harness::format_double(m.g_d)},
                         {"delta_po", harness::format_double(m.delta_po)},
                         {"delta_c", harness::format_double(m.delta_c)}}),
             a.output);
    } else {
        ordered_json j = metrics_json(alpha_hat, m);
        j["regime"] = hrr::to_string(regime);
        emit(j.dump(2) + "\n", a.output);
    }
    return kExitOk;
}

struct MetricsArgs {
    double alpha_hat = -1.0;
    bool rayleigh = false;
    std::string format = "json";
    std::string output;
};

int run_metrics(const MetricsArgs& a) {
    if (a.rayleigh == (a.alpha_hat > 0.0))
        throw ConfigError("parameters", "supply exactly one of --alpha-hat or --rayleigh");
    hrr::HrrMetrics m;
    ordered_json j;
    if (a.rayleigh) {
        m = hrr::rayleigh_benchmark();
        j["schema_version"] = kSchemaVersion;
        j["reference"] = "rayleigh";
        j["aof"] = m.aof;
        j["g_d"] = m.g_d;
        j["delta_po"] = m.delta_po;
        j["delta_c"] = m.delta_c;
    } else {
        m = hrr::metrics(a.alpha_hat);
        j = metrics_json(a.alpha_hat, m);
    }
    if (a.format == "csv") {
        emit(record_csv({{"alpha_hat", a.rayleigh ? "rayleigh" : harness::format_double(a.alpha_hat)},
                         {"aof", harness::format_double(m.aof)},
                         {"g_d", harness::format_double(m.g_d)},
                         {"delta_po", harness::format_double(m.delta_po)},
                         {"delta_c", harness::format_double(m.delta_c)}}),
             a.output);
    } else {
        emit(j.dump(2) + "\n", a.output);
    }
    return kExitOk;
}

struct SolveArgs {
    double alpha0 = -1.0;
    PairFlags pair;
    std::string format = "json";
    std::string output;
};

int run_solve(const SolveArgs& a) {
    if ((a.alpha0 > 0.0) == a.pair.given())
        throw ConfigError("parameters", "supply exactly one of --alpha0 or the link flag group");
    solver::SolveResult r;
    cascade::CascadePair pair =
        (a.alpha0 > 0.0) ? solver::equal_channel_params(a.alpha0) : a.pair.build();
    if (a.alpha0 > 0.0) {
        r = solver::solve_equal_channel(a.alpha0);
    } else {
        const double kappa = cascade::kappa(pair);
        r.kappa_minus_1 = kappa - 1.0;
        r.n_exit_full = solver::min_elements_from_kappa(kappa, solver::SolveTarget::ExitFullHrr);
        r.n_reach_no = solver::min_elements_from_kappa(kappa, solver::SolveTarget::ReachNoHrr);
    }
    const double ah_exit = double(r.n_exit_full) / r.kappa_minus_1;
    const double ah_no = double(r.n_reach_no) / r.kappa_minus_1;
    if (a.format == "csv") {
        emit(record_csv({{"n_exit_full", std::to_string(r.n_exit_full)},
                         {"n_reach_no", std::to_string(r.n_reach_no)},
                         {"kappa_minus_1", harness::format_double(r.kappa_minus_1)},
                         {"alpha_hat_at_exit_full", harness::format_double(ah_exit)},
                         {"alpha_hat_at_reach_no", harness::format_double(ah_no)}}),
             a.output);
    } else {
        ordered_json j;
        j["schema_version"] = kSchemaVersion;
        j["n_exit_full"] = r.n_exit_full;
        j["n_reach_no"] = r.n_reach_no;
        j["kappa_minus_1"] = r.kappa_minus_1;
        j["alpha_hat_at_exit_full"] = ah_exit;
        j["alpha_hat_at_reach_no"] = ah_no;
        emit(j.dump(2) + "\n", a.output);
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// pdf
// ---------------------------------------------------------------------------

struct PdfArgs {
    std::string dist;
    double alpha = -1.0, beta = -1.0, omega = 1.0;
    double alpha0 = -1.0;
    PairFlags pair;
    int n_irs = 0;
    double alpha_hat = -1.0;
    double gbar_db = 10.0;
    std::string method = "direct";
    std::string grid = "0.01:10:50";
    std::string format = "csv";
    std::string output;
};

int run_pdf(const PdfArgs& a) {
    const auto grid = log_spaced(parse_grid(a.grid));
    std::vector<std::array<double, 3>> rows;
    rows.reserve(grid.size());

    auto pair_from_args = [&]() {
        if ((a.alpha0 > 0.0) == a.pair.given())
            throw ConfigError("parameters", "supply exactly one of --alpha0 or the link flag group");
        return a.alpha0 > 0.0 ? solver::equal_channel_params(a.alpha0) : a.pair.build();
    };

    if (a.dist == "ipl") {
        const auto p = ipl::make_ipl(a.alpha, a.beta, a.omega);
        for (double z : grid)
            rows.push_back({z, ipl::pdf_envelope(p, z), ipl::cdf_envelope(p, z)});
    } else if (a.dist == "product") {
        const auto pair = pair_from_args();
        if (a.method != "foxh" && a.method != "direct")
            throw ConfigError("method", "--method must be foxh or direct");
        for (double z : grid) {
            const double pdf = (a.method == "foxh")
                                   ? cascade::product_pdf_foxh(pair, z)
                                   : cascade::product_pdf_direct(pair, z);
            rows.push_back({z, pdf, cascade::cdf_product(pair, z)});
        }
    } else if (a.dist == "sum-approx") {
        const auto pair = pair_from_args();
        if (a.n_irs < 1) throw ConfigError("n-irs", "sum-approx requires --n-irs");
        const auto ga = irslink::gamma_approx(irslink::make_model(pair, a.n_irs, 1.0));
        for (double z : grid)
            rows.push_back({z, irslink::envelope_pdf_approx(ga, z),
                            irslink::envelope_cdf_approx(ga, z)});
    } else if (a.dist == "snr-approx") {
        if (!(a.alpha_hat > 0.0))
            throw ConfigError("alpha-hat", "snr-approx requires --alpha-hat");
        irslink::GammaApprox ga;
        ga.alpha_hat = a.alpha_hat;
        ga.mean_h = 1.0;
        ga.var_h = 1.0 / a.alpha_hat;  // scale irrelevant for the SNR law
        ga.omega_h = ga.alpha_hat * (ga.alpha_hat + 1.0) * ga.scale() * ga.scale();
        const double gbar = std::pow(10.0, a.gbar_db / 10.0);
        for (double z : grid)
            rows.push_back({z, irslink::snr_pdf_approx(ga, gbar, z),
                            irslink::snr_cdf_approx(ga, gbar, z)});
    } else {
        throw ConfigError("dist", "--dist must be ipl, product, sum-approx or snr-approx");
    }

    if (a.format == "csv") {
        std::string out = "z,pdf,cdf\n";
        for (const auto& r : rows)
            out += harness::format_double(r[0]) + "," + harness::format_double(r[1]) +
                   "," + harness::format_double(r[2]) + "\n";
        emit(out, a.output);
    } else {
        ordered_json j;
        j["schema_version"] = kSchemaVersion;
        ordered_json arr = ordered_json::array();
        for (const auto& r : rows)
            arr.push_back(ordered_json{{"z", r[0]}, {"pdf", r[1]}, {"cdf", r[2]}});
        j["rows"] = std::move(arr);
        emit(j.dump(2) + "\n", a.output);
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// curves
// ---------------------------------------------------------------------------

struct CurvesArgs {
    std::string config_path;
    std::vector<double> alpha0;
    std::vector<int> n_irs;
    std::string snr = "-5:20:2.5";
    double gamma_th_db = 0.0;
    std::size_t samples = 1'000'000;
    std::uint64_t seed = 1;
    int workers = 4;
    std::string out_prefix = "hyperfade_curves";
};

harness::ExperimentConfig config_from_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("config", "cannot open config file: " + path);
    ordered_json j;
    try {
        f >> j;
    } catch (const std::exception& e) {
        throw ConfigError("config", std::string("config parse error: ") + e.what());
    }
    harness::ExperimentConfig c;
    try {
        c.alpha0_list = j.at("alpha0_list").get<std::vector<double>>();
        c.n_irs_list = j.at("n_irs_list").get<std::vector<int>>();
        c.snr_db_lo = j.at("snr_db").at("lo").get<double>();
        c.snr_db_hi = j.at("snr_db").at("hi").get<double>();
        c.snr_db_step = j.at("snr_db").at("step").get<double>();
        c.gamma_th_db = j.value("gamma_th_db", 0.0);
        c.n_samples = j.value("n_samples", std::size_t(1'000'000));
        c.seed = j.value("seed", std::uint64_t(1));
        c.workers = j.value("workers", 4);
    } catch (const ordered_json::exception& e) {
        throw ConfigError("config", std::string("config field error: ") + e.what());
    }
    return c;
}

int run_curves(const CurvesArgs& a, bool inline_grid_given) {
    harness::ExperimentConfig config;
    if (!a.config_path.empty()) {
        if (inline_grid_given)
            throw ConfigError("config", "--config cannot be combined with inline grid flags");
        config = config_from_file(a.config_path);
    } else {
        config.alpha0_list = a.alpha0.empty() ? std::vector<double>{0.001, 0.3159} : a.alpha0;
        config.n_irs_list = a.n_irs.empty() ? std::vector<int>{2, 4, 6, 14} : a.n_irs;
        std::istringstream in(a.snr);
        char c1 = 0, c2 = 0;
        if (!(in >> config.snr_db_lo >> c1 >> config.snr_db_hi >> c2 >>
              config.snr_db_step) ||
            c1 != ':' || c2 != ':')
            throw ConfigError("snr-db", "--snr-db must be lo:hi:step");
        config.gamma_th_db = a.gamma_th_db;
        config.n_samples = a.samples;
        config.seed = a.seed;
        config.workers = a.workers;
    }
    config.validate();
    const auto table = harness::run_curves(config);
    harness::write_curve_artifacts(table, a.out_prefix);
    std::cout << "wrote " << a.out_prefix << ".csv, " << a.out_prefix << ".json, "
              << a.out_prefix << ".meta.json (" << table.points.size() << " points)\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// validate
// ---------------------------------------------------------------------------

struct Check {
    std::string name;
    double tolerance;
    double observed;
    bool pass;
};

void add_check(std::vector<Check>& checks, const std::string& name, double tol,
               double observed, bool invert = false) {
    const bool ok = invert ? observed > tol : observed <= tol;
    checks.push_back({name, tol, observed, ok});
}

int run_validate(const std::string& level, std::uint64_t seed,
                 const std::string& format, const std::string& output) {
    if (level != "quick" && level != "full")
        throw ConfigError("level", "--level must be quick or full");
    std::vector<Check> checks;

    // IPL moments vs quadrature on a shape grid
    {
        double worst = 0.0;
        for (double alpha0 : {0.05, 0.158, 0.25, 0.31}) {
            const auto p = ipl::make_ipl(alpha0, 1.0 / (2.0 * alpha0), 1.0);
            for (double r : {0.5, 1.0, 2.0}) {
                const double closed = ipl::moment_envelope(p, r);
                const double quad =
                    numerics::integrate_adaptive(
                        [&](double x) {
                            return std::pow(x, r) * ipl::pdf_envelope(p, x);
                        },
                        0.0, std::numeric_limits<double>::infinity(), 1e-12)
                        .value;
                worst = std::max(worst, std::abs(closed - quad) / closed);
            }
        }
        add_check(checks, "ipl-moment-vs-quadrature", 1e-6, worst);
    }
    // pdf normalization
    {
        const auto p = ipl::make_ipl(0.25, 2.0, 1.0);
        const double total =
            numerics::integrate_adaptive([&](double x) { return ipl::pdf_envelope(p, x); },
                                         0.0, std::numeric_limits<double>::infinity(),
                                         1e-12)
                .value;
        add_check(checks, "ipl-pdf-normalization", 1e-8, std::abs(total - 1.0));
    }
    // quantile round-trip
    {
        const auto p = ipl::make_ipl(0.25, 2.0, 1.0);
        double worst = 0.0;
        for (int i = 1; i <= 99; ++i) {
            const double u = i / 100.0;
            worst = std::max(worst, std::abs(ipl::cdf_envelope(p, ipl::quantile(p, u)) - u));
        }
        add_check(checks, "quantile-roundtrip", 1e-10, worst);
    }
    // closed-form kappa vs moment kappa
    {
        double worst = 0.0;
        for (int i = 0; i < 50; ++i) {
            const double alpha0 = 0.003 + (0.3155 - 0.003) * i / 49.0;
            const double k1 = solver::kappa_equal_closed_form(alpha0);
            const double k2 = cascade::kappa(solver::equal_channel_params(alpha0));
            worst = std::max(worst, std::abs(k1 - k2) / k1);
        }
        add_check(checks, "kappa-closed-vs-moments", 1e-10, worst);
    }
    // Fox H route vs direct route
    {
        const auto pair = solver::equal_channel_params(0.25);
        double worst = 0.0;
        for (double z : {0.1, 1.0, 10.0}) {
            const double d = cascade::product_pdf_direct(pair, z);
            const double h = cascade::product_pdf_foxh(pair, z);
            worst = std::max(worst, std::abs(h - d) / d);
        }
        add_check(checks, "foxh-vs-direct", 1e-4, worst);
    }
    // regime boundaries
    {
        const double root = hrr::ec_boundary_exact();
        add_check(checks, "ec-boundary-window", 0.03, std::abs(root - 3.33));
        add_check(checks, "ec-taylor-rel-error", 0.02,
                  std::abs(hrr::ec_boundary_taylor() - root) / root);
        add_check(checks, "aof-boundary-root", 1e-10,
                  std::abs(hrr::aof(hrr::aof_boundary()) - 1.0));
    }
    // Rayleigh benchmark
    {
        const auto m = hrr::rayleigh_benchmark();
        const double dev = std::max({std::abs(m.aof - 1.0), std::abs(m.g_d - 1.0),
                                     std::abs(m.delta_po - 1.0), std::abs(m.delta_c)});
        add_check(checks, "rayleigh-benchmark", 1e-10, dev);
    }
    // minimum-element limits
    {
        const auto lo = solver::solve_equal_channel(0.001);
        const auto hi = solver::solve_equal_channel(0.3159);
        const bool ok = lo.n_exit_full == 2 && lo.n_reach_no == 4 &&
                        hi.n_exit_full == 6 && hi.n_reach_no == 14;
        checks.push_back({"min-elements-limits", 0.0, ok ? 0.0 : 1.0, ok});
    }
    // numeric sum law vs product distribution at a single element
    {
        const auto pair = solver::equal_channel_params(0.25);
        irslink::SumDistribution law(pair, 1);
        double worst = 0.0;
        for (double h : {0.2, 0.5, 1.0, 2.0, 5.0})
            worst = std::max(worst, std::abs(law.cdf(h) - cascade::cdf_product(pair, h)));
        add_check(checks, "sum-law-vs-product-cdf", 1e-3, worst);
    }

    if (level == "full") {
        const auto pair = solver::equal_channel_params(0.25);
        harness::TightnessOptions topt;
        topt.workers = 4;
        topt.include_numeric_law = true;
        const auto rep = harness::validate_approx(pair, {1, 2, 3, 4}, 1'000'000, seed, topt);
        bool trend = true;
        for (std::size_t i = 1; i < rep.entries.size(); ++i)
            trend = trend && rep.entries[i].ks_envelope <= rep.entries[i - 1].ks_envelope;
        checks.push_back({"ks-trend-non-increasing", 0.0, trend ? 0.0 : 1.0, trend});
        add_check(checks, "ks-gamma-approx-n4", 0.05, rep.entries[3].ks_envelope);
        const double crit = harness::ks_critical_value(rep.n_samples, 0.001);
        add_check(checks, "ks-numeric-law-n1", crit, rep.entries[0].ks_numeric);
        // sampled moments against the fitted shape
        const auto model = irslink::make_model(pair, 4, 1.0);
        const auto samples = harness::sample_sum_sorted(model, seed, 64, 1'000'000, 4);
        double s1 = 0.0, s2 = 0.0;
        for (double h : samples) {
            s1 += h;
            s2 += h * h;
        }
        const double n = double(samples.size());
        const double mean = s1 / n;
        const double var = s2 / n - mean * mean;
        const auto ga = irslink::gamma_approx(model);
        add_check(checks, "mc-alpha-hat-rel-dev", 0.01,
                  std::abs(mean * mean / var - ga.alpha_hat) / ga.alpha_hat);
    }

    bool all_pass = true;
    for (const auto& c : checks) all_pass = all_pass && c.pass;

    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["level"] = level;
    j["seed"] = seed;
    j["pass"] = all_pass;
    ordered_json arr = ordered_json::array();
    for (const auto& c : checks)
        arr.push_back(ordered_json{{"name", c.name},
                                   {"tolerance", c.tolerance},
                                   {"observed", c.observed},
                                   {"pass", c.pass}});
    j["checks"] = std::move(arr);
    if (format == "csv") {
        std::string out = "name,tolerance,observed,pass\n";
        for (const auto& c : checks)
            out += c.name + "," + harness::format_double(c.tolerance) + "," +
                   harness::format_double(c.observed) + "," + (c.pass ? "1" : "0") + "\n";
        emit(out, output);
    } else {
        emit(j.dump(2) + "\n", output);
    }
    return all_pass ? kExitOk : kExitNumeric;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hyperfade: hyper-Rayleigh regime analysis of IRS-assisted links "
                 "under inverse power Lomax fading"};
    app.set_version_flag("--version", std::string("hyperfade ") + kVersion);
    app.require_subcommand(1);

    ClassifyArgs cls;
    auto* c_cls = app.add_subcommand("classify", "Classify the aggregate-link regime");
    c_cls->add_option("--alpha-hat", cls.alpha_hat, "effective Gamma shape of the sum envelope");
    c_cls->add_option("--alpha0", cls.alpha0, "symmetric per-link shape (with --n-irs)");
    c_cls->add_option("--n-irs", cls.n_irs, "number of elements");
    c_cls->add_option("--alpha-s", cls.pair.alpha_s, "source-link shape");
    c_cls->add_option("--beta-s", cls.pair.beta_s, "source-link tail power");
    c_cls->add_option("--alpha-d", cls.pair.alpha_d, "destination-link shape");
    c_cls->add_option("--beta-d", cls.pair.beta_d, "destination-link tail power");
    c_cls->add_option("--omega-s", cls.pair.omega_s, "source mean-square envelope");
    c_cls->add_option("--omega-d", cls.pair.omega_d, "destination mean-square envelope");
    c_cls->add_option("--format", cls.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    c_cls->add_option("--output,-o", cls.output, "output path (default stdout)");

    MetricsArgs met;
    auto* c_met = app.add_subcommand("metrics", "Evaluate the four regime indicators");
    c_met->add_option("--alpha-hat", met.alpha_hat, "effective Gamma shape");
    c_met->add_flag("--rayleigh", met.rayleigh, "emit the Rayleigh reference quadruple");
    c_met->add_option("--format", met.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    c_met->add_option("--output,-o", met.output, "output path (default stdout)");

    SolveArgs slv;
    auto* c_slv = app.add_subcommand("solve", "Minimum element counts for regime targets");
    c_slv->add_option("--alpha0", slv.alpha0, "symmetric per-link shape in (0, 0.316)");
    c_slv->add_option("--alpha-s", slv.pair.alpha_s, "source-link shape");
    c_slv->add_option("--beta-s", slv.pair.beta_s, "source-link tail power");
    c_slv->add_option("--alpha-d", slv.pair.alpha_d, "destination-link shape");
    c_slv->add_option("--beta-d", slv.pair.beta_d, "destination-link tail power");
    c_slv->add_option("--omega-s", slv.pair.omega_s, "source mean-square envelope");
    c_slv->add_option("--omega-d", slv.pair.omega_d, "destination mean-square envelope");
    c_slv->add_option("--format", slv.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    c_slv->add_option("--output,-o", slv.output, "output path (default stdout)");

    PdfArgs pdf;
    auto* c_pdf = app.add_subcommand("pdf", "Tabulate pdf/cdf of a model distribution");
    c_pdf->add_option("--dist", pdf.dist, "ipl|product|sum-approx|snr-approx")->required();
    c_pdf->add_option("--alpha", pdf.alpha, "ipl shape");
    c_pdf->add_option("--beta", pdf.beta, "ipl tail power");
    c_pdf->add_option("--omega", pdf.omega, "ipl mean-square envelope");
    c_pdf->add_option("--alpha0", pdf.alpha0, "symmetric per-link shape");
    c_pdf->add_option("--alpha-s", pdf.pair.alpha_s, "source-link shape");
    c_pdf->add_option("--beta-s", pdf.pair.beta_s, "source-link tail power");
    c_pdf->add_option("--alpha-d", pdf.pair.alpha_d, "destination-link shape");
    c_pdf->add_option("--beta-d", pdf.pair.beta_d, "destination-link tail power");
    c_pdf->add_option("--omega-s", pdf.pair.omega_s, "source mean-square envelope");
    c_pdf->add_option("--omega-d", pdf.pair.omega_d, "destination mean-square envelope");
    c_pdf->add_option("--n-irs", pdf.n_irs, "number of elements (sum-approx)");
    c_pdf->add_option("--alpha-hat", pdf.alpha_hat, "effective shape (snr-approx)");
    c_pdf->add_option("--gbar-db", pdf.gbar_db, "average SNR in dB (snr-approx)");
    c_pdf->add_option("--method", pdf.method, "product evaluation path: foxh|direct");
    c_pdf->add_option("--z-grid", pdf.grid, "lo:hi:n, log-spaced evaluation grid");
    c_pdf->add_option("--format", pdf.format, "csv|json")->check(CLI::IsMember({"json", "csv"}));
    c_pdf->add_option("--output,-o", pdf.output, "output path (default stdout)");

    CurvesArgs cur;
    auto* c_cur = app.add_subcommand("curves", "Outage/capacity curves: analytic vs Monte Carlo");
    c_cur->add_option("--config", cur.config_path, "JSON config file (excludes inline grid flags)");
    auto* o_a = c_cur->add_option("--alpha0", cur.alpha0, "symmetric per-link shapes (repeatable)");
    auto* o_n = c_cur->add_option("--n-irs", cur.n_irs, "element counts (repeatable)");
    auto* o_s = c_cur->add_option("--snr-db", cur.snr, "lo:hi:step sweep in dB");
    auto* o_g = c_cur->add_option("--gamma-th-db", cur.gamma_th_db, "outage threshold in dB");
    auto* o_m = c_cur->add_option("--samples", cur.samples, "Monte Carlo draws per cell");
    c_cur->add_option("--seed", cur.seed, "base random seed")->envname("HYPERFADE_SEED");
    c_cur->add_option("--workers", cur.workers, "parallel sampling workers");
    c_cur->add_option("--out", cur.out_prefix, "artifact path prefix");

    std::string val_level = "quick";
    std::uint64_t val_seed = 20260810ULL;
    std::string val_format = "json", val_output;
    auto* c_val = app.add_subcommand("validate", "Run the built-in oracle checks");
    c_val->add_option("--level", val_level, "quick|full")->check(CLI::IsMember({"quick", "full"}));
    c_val->add_option("--seed", val_seed, "Monte Carlo seed")->envname("HYPERFADE_SEED");
    c_val->add_option("--format", val_format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    c_val->add_option("--output,-o", val_output, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (c_cls->parsed()) return run_classify(cls);
        if (c_met->parsed()) return run_metrics(met);
        if (c_slv->parsed()) return run_solve(slv);
        if (c_pdf->parsed()) return run_pdf(pdf);
        if (c_cur->parsed()) {
            const bool inline_given = o_a->count() || o_n->count() || o_s->count() ||
                                      o_g->count() || o_m->count();
            return run_curves(cur, inline_given);
        }
        if (c_val->parsed()) return run_validate(val_level, val_seed, val_format, val_output);
    } catch (const ConfigError& e) {
        std::cerr << "error (" << e.field_path() << "): " << e.what() << "\n";
        return kExitUsage;
    } catch (const DomainError& e) {
        std::cerr << "error (" << e.field() << "): " << e.what() << "\n";
        return kExitUsage;
    } catch (const ConvergenceError& e) {
        std::cerr << "numeric error: " << e.what() << " (best estimate "
                  << e.best_estimate() << ")\n";
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitUsage;
}
