#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hyperfade/harness.hpp"
#include "hyperfade/solver.hpp"

using namespace hyperfade;
using namespace hyperfade::harness;

namespace {

ExperimentConfig small_config() {
    ExperimentConfig c;
    c.alpha0_list = {0.1};
    c.n_irs_list = {1, 2};
    c.snr_db_lo = 0.0;
    c.snr_db_hi = 10.0;
    c.snr_db_step = 5.0;
    c.gamma_th_db = 0.0;
    c.n_samples = 20'000;
    c.seed = 99;
    c.workers = 2;
    return c;
}

}  // namespace

TEST_CASE("config validation points at the offending field") {
    auto c = small_config();
    c.snr_db_step = 0.0;
    try {
        c.validate();
        FAIL("step must be rejected");
    } catch (const ConfigError& e) {
        CHECK(e.field_path() == "snr_db_step");
    }
    c = small_config();
    c.alpha0_list = {0.1, 0.5};
    try {
        c.validate();
        FAIL("alpha0 out of range must be rejected");
    } catch (const ConfigError& e) {
        CHECK(e.field_path() == "alpha0_list[1]");
    }
    c = small_config();
    c.n_samples = 10;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = small_config();
    c.snr_db_lo = 20.0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = small_config();
    c.n_irs_list = {2, 0};
    CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("snr grid includes both endpoints") {
    const auto grid = small_config().snr_grid_db();
    REQUIRE(grid.size() == 3);
    CHECK(grid.front() == doctest::Approx(0.0));
    CHECK(grid.back() == doctest::Approx(10.0));
}

TEST_CASE("run_curves: shape, monotonicity, determinism") {
    const auto config = small_config();
    const auto table = run_curves(config);
    REQUIRE(table.points.size() == 2 * 3);
    for (const auto& p : table.points) {
        CHECK(p.op_analytic >= 0.0);
        CHECK(p.op_analytic <= 1.0);
        CHECK(p.op_mc >= 0.0);
        CHECK(p.op_mc <= 1.0);
        CHECK(p.op_mc_stderr >= 0.0);
        CHECK(p.ec_mc >= 0.0);
        CHECK(p.ec_analytic >= 0.0);
    }
    SUBCASE("outage falls and capacity rises along the SNR axis") {
        for (std::size_t i = 0; i + 1 < table.points.size(); ++i) {
            const auto& a = table.points[i];
            const auto& b = table.points[i + 1];
            if (a.n_irs != b.n_irs) continue;
            CHECK(b.op_mc <= a.op_mc);
            CHECK(b.ec_mc >= a.ec_mc);
            CHECK(b.op_analytic <= a.op_analytic);
            CHECK(b.ec_analytic >= a.ec_analytic);
        }
    }
    SUBCASE("identical configuration reproduces the files byte for byte") {
        const auto again = run_curves(config);
        CHECK(curves_to_csv(table) == curves_to_csv(again));
        CHECK(curves_to_json(table) == curves_to_json(again));
    }
    SUBCASE("worker count changes the draws, not the statistics") {
        auto c1 = config;
        c1.workers = 1;
        const auto t1 = run_curves(c1);
        for (std::size_t i = 0; i < table.points.size(); ++i) {
            const auto& a = table.points[i];
            const auto& b = t1.points[i];
            const double op_se = std::max(a.op_mc_stderr, 1.0 / double(config.n_samples));
            CHECK(std::abs(a.op_mc - b.op_mc) < 6.0 * op_se);
            CHECK(std::abs(a.ec_mc - b.ec_mc) <
                  6.0 * std::max(a.ec_mc_stderr, 1e-12));
        }
    }
    SUBCASE("analytic mean SNR normalization is shared with the samples") {
        // at gamma_th = gbar the analytic outage must be deep in the body
        for (const auto& p : table.points)
            if (p.snr_db == 0.0) CHECK(p.op_analytic > 0.2);
    }
}

TEST_CASE("csv serialization: header, line endings, round-trip floats") {
    const auto table = run_curves(small_config());
    const auto csv = curves_to_csv(table);
    std::istringstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header ==
          "alpha0,n_irs,snr_db,op_analytic,op_mc,op_mc_stderr,ec_analytic,ec_mc,"
          "ec_mc_stderr");
    CHECK(csv.find('\r') == std::string::npos);
    std::string line;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        // parse the op_mc column back and compare bitwise
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        REQUIRE(cells.size() == 9);
        double parsed = 0.0;
        const auto res = std::from_chars(cells[4].data(), cells[4].data() + cells[4].size(), parsed);
        CHECK(res.ec == std::errc());
        CHECK(parsed == table.points[rows].op_mc);
        ++rows;
    }
    CHECK(rows == table.points.size());
}

TEST_CASE("format_double round-trips exactly") {
    for (double v : {0.1, 1.0 / 3.0, 1e-300, 3.141592653589793, 0.3159,
                     123456789.123456789}) {
        const auto text = format_double(v);
        double back = 0.0;
        std::from_chars(text.data(), text.data() + text.size(), back);
        CHECK(back == v);
    }
}

TEST_CASE("metadata sidecar echoes the configuration exactly") {
    const auto config = small_config();
    const auto table = run_curves(config);
    const auto meta = nlohmann::json::parse(run_metadata_json(table));
    CHECK(meta.at("schema_version").get<int>() == 1);
    CHECK(meta.at("seed").get<std::uint64_t>() == config.seed);
    CHECK(meta.at("workers").get<int>() == config.workers);
    CHECK(meta.at("version").is_string());
    const auto& cj = meta.at("config");
    CHECK(cj.at("alpha0_list").get<std::vector<double>>() == config.alpha0_list);
    CHECK(cj.at("n_irs_list").get<std::vector<int>>() == config.n_irs_list);
    CHECK(cj.at("snr_db").at("lo").get<double>() == config.snr_db_lo);
    CHECK(cj.at("snr_db").at("hi").get<double>() == config.snr_db_hi);
    CHECK(cj.at("snr_db").at("step").get<double>() == config.snr_db_step);
    CHECK(cj.at("gamma_th_db").get<double>() == config.gamma_th_db);
    CHECK(cj.at("n_samples").get<std::size_t>() == config.n_samples);
    const auto rows = nlohmann::json::parse(curves_to_json(table));
    CHECK(rows.at("points").size() == table.points.size());
    CHECK(rows.at("points")[0].at("op_mc").get<double>() == table.points[0].op_mc);
}

TEST_CASE("ks_statistic: calibration against known situations") {
    // exact uniforms: tiny distance; shifted cdf: large distance
    std::vector<double> u(1000);
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = (i + 0.5) / 1000.0;
    const double d_exact = ks_statistic(u, [](double x) { return x; });
    CHECK(d_exact <= 0.0006);
    const double d_shift =
        ks_statistic(u, [](double x) { return std::min(1.0, x * x); });
    CHECK(d_shift > 0.2);
    CHECK(ks_critical_value(100'000, 0.001) ==
          doctest::Approx(1.95 / std::sqrt(1e5)).epsilon(5e-3));
    SUBCASE("stride preserves the statistic up to its resolution") {
        StreamRng rng(17, 0);
        std::vector<double> s(20000);
        for (auto& x : s) x = rng.uniform_open();
        std::sort(s.begin(), s.end());
        const double full = ks_statistic(s, [](double x) { return x; });
        const double coarse = ks_statistic(s, [](double x) { return x; }, 10);
        CHECK(coarse <= full + 1e-12);
        CHECK(full - coarse < 10.0 / 20000.0);
    }
}

TEST_CASE("validate_approx: report contents and tightening trend") {
    const auto pair = solver::equal_channel_params(0.2);
    TightnessOptions opts;
    opts.workers = 2;
    opts.include_numeric_law = true;
    const auto report = validate_approx(pair, {1, 2, 4}, 100'000, 4242, opts);
    REQUIRE(report.entries.size() == 3);
    CHECK(report.n_samples == 100'000);
    CHECK(report.seed == 4242);
    for (const auto& e : report.entries) {
        CHECK(e.ks_envelope > 0.0);
        CHECK(e.ks_envelope < 0.5);
        // the SNR-law score is the envelope score seen through a monotone map
        CHECK(e.ks_snr == doctest::Approx(e.ks_envelope).epsilon(1e-6));
    }
    CHECK(report.entries[2].ks_envelope < report.entries[0].ks_envelope);
    SUBCASE("the numeric law scores as a correct reference at one element") {
        CHECK(report.entries[0].ks_numeric >= 0.0);
        CHECK(report.entries[0].ks_numeric <
              ks_critical_value(report.n_samples, 0.001));
    }
    SUBCASE("json rendering carries every entry") {
        const auto j = nlohmann::json::parse(tightness_to_json(report));
        CHECK(j.at("entries").size() == 3);
        CHECK(j.at("entries")[0].at("n_irs").get<int>() == 1);
        CHECK(j.at("entries")[0].contains("ks_numeric"));
    }
}

TEST_CASE("Monte Carlo columns track the exact sum law, not the Gamma fit") {
    // one cell at 10 dB: the sampled outage/capacity must agree with the
    // characteristic-function law; any gap to the analytic columns is then
    // attributable to the moment-matched approximation itself.
    ExperimentConfig c;
    c.alpha0_list = {0.1};
    c.n_irs_list = {2};
    c.snr_db_lo = 10.0;
    c.snr_db_hi = 10.1;
    c.snr_db_step = 5.0;
    c.n_samples = 100'000;
    c.seed = 31;
    c.workers = 2;
    const auto table = run_curves(c);
    REQUIRE(table.points.size() == 1);
    const auto& pt = table.points[0];

    const auto pair = solver::equal_channel_params(0.1);
    irslink::SumDistribution law(pair, 2);
    const double m1 = cascade::product_moment(pair, 1.0);
    const double m2 = cascade::product_moment(pair, 2.0);
    const double omega_h = 2.0 * m2 + 2.0 * 1.0 * m1 * m1;
    const double gbar = std::pow(10.0, 1.0);
    const double gamma_th = 1.0;

    // outage of the exact law
    const double h_th = std::sqrt(gamma_th * omega_h / gbar);
    const double op_law = law.cdf(h_th);
    CHECK(std::abs(pt.op_mc - op_law) < 4.0 * pt.op_mc_stderr);

    // capacity of the exact law through the survival (Stieltjes) form
    const double cc = gbar / omega_h;
    const double inv_ln2 = 1.0 / std::log(2.0);
    const double ec_law =
        numerics::integrate_adaptive(
            [&](double h) {
                return inv_ln2 * 2.0 * cc * h / (1.0 + cc * h * h) *
                       (1.0 - law.cdf(h));
            },
            0.0, std::numeric_limits<double>::infinity(), 1e-8)
            .value;
    CHECK(std::abs(pt.ec_mc - ec_law) < 4.0 * pt.ec_mc_stderr);
}

TEST_CASE("write_curve_artifacts produces the three files") {
    const auto table = run_curves(small_config());
    const std::string prefix = "/tmp/hyperfade_test_artifacts";
    write_curve_artifacts(table, prefix);
    for (const char* suffix : {".csv", ".json", ".meta.json"}) {
        std::ifstream f(prefix + suffix);
        CHECK(f.good());
    }
}
