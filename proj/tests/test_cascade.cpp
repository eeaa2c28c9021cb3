#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "hyperfade/cascade.hpp"
#include "hyperfade/harness.hpp"
#include "hyperfade/solver.hpp"
#include "support/test_oracles.hpp"

using namespace hyperfade;
using namespace hyperfade::cascade;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

CascadePair equal_pair(double alpha0) {
    const auto link = ipl::make_ipl(alpha0, 1.0 / (2.0 * alpha0), 1.0);
    return make_pair(link, link);
}

CascadePair unequal_pair() {
    return make_pair(ipl::make_ipl(0.2, 2.5, 1.3), ipl::make_ipl(0.3, 1.7, 0.8));
}

}  // namespace

TEST_CASE("product moments factorize") {
    const auto pair = unequal_pair();
    CHECK(product_moment(pair, 2.0) ==
          doctest::Approx(pair.source.omega * pair.dest.omega).epsilon(1e-12));
    CHECK(product_moment(pair, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    const auto pe = equal_pair(0.25);
    const double m1 = ipl::moment_envelope(pe.source, 1.0);
    CHECK(product_moment(pe, 1.0) == doctest::Approx(m1 * m1).epsilon(1e-13));
}

TEST_CASE("product moment against Monte Carlo") {
    const auto pair = equal_pair(0.25);
    const std::size_t n = 1'000'000;
    const auto z = sample_product(pair, {20260810, 5}, n);
    double m = 0.0, m2 = 0.0;
    for (double v : z) {
        m += v;
        m2 += v * v;
    }
    m /= double(n);
    m2 /= double(n);
    const double se = std::sqrt((m2 - m * m) / double(n));
    CHECK(std::abs(m - product_moment(pair, 1.0)) < 3.0 * se);
}

TEST_CASE("moment divergence names the offending link") {
    const auto pair = make_pair(ipl::make_ipl(0.2, 3.0, 1.0),
                                ipl::make_ipl(0.3, 1.5, 1.0));
    // r = 2.5 exists for the source (range up to 6) but not the dest (up to 3)
    CHECK_NOTHROW(product_moment(pair, 2.5));
    try {
        product_moment(pair, 3.2);
        FAIL("dest moment must diverge");
    } catch (const MomentRangeError& e) {
        CHECK(e.field() == "dest");
        CHECK(e.range_hi() == doctest::Approx(3.0));
    }
}

TEST_CASE("kappa limits and monotonicity on the symmetric ridge") {
    CHECK(kappa(equal_pair(1e-5)) == doctest::Approx(16.0 / 9.0).epsilon(1e-3));
    CHECK(kappa(equal_pair(0.31599)) == doctest::Approx(4.0).epsilon(2e-2));
    double prev = 1.0;
    for (double a0 = 0.01; a0 < 0.312; a0 += 0.02) {
        const double k = kappa(equal_pair(a0));
        CHECK(k > prev);
        prev = k;
    }
    CHECK(prev < 4.0);
    SUBCASE("kappa against Monte Carlo at alpha0 = 0.1") {
        const auto pair = equal_pair(0.1);
        const std::size_t n = 2'000'000;
        const auto z = sample_product(pair, {77, 0}, n);
        double s1 = 0, s2 = 0, s4 = 0;
        for (double v : z) {
            s1 += v;
            s2 += v * v;
            s4 += v * v * v * v;
        }
        s1 /= double(n);
        s2 /= double(n);
        s4 /= double(n);
        const double k_mc = s2 / (s1 * s1);
        // delta-method standard error dominated by the second-moment noise
        const double se = std::sqrt(std::max(s4 - s2 * s2, 0.0) / double(n)) / (s1 * s1);
        CHECK(std::abs(k_mc - kappa(pair)) < 3.0 * se);
    }
}

TEST_CASE("direct product density: normalization and symmetry") {
    const auto pair = equal_pair(0.25);
    const double total = numerics::integrate_adaptive(
                             [&](double z) { return product_pdf_direct(pair, z); },
                             0.0, kInf, 1e-8)
                             .value;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-6));
    SUBCASE("swapping the two links leaves the density unchanged") {
        const auto ab = unequal_pair();
        const auto ba = make_pair(ab.dest, ab.source);
        for (double z : {0.2, 1.0, 4.0})
            CHECK(product_pdf_direct(ab, z) ==
                  doctest::Approx(product_pdf_direct(ba, z)).epsilon(1e-9));
    }
}

TEST_CASE("direct product density against a Monte Carlo histogram") {
    const auto pair = equal_pair(0.25);
    const std::size_t n = 10'000'000;
    const auto z = sample_product(pair, {31337, 9}, n);
    const double lo = 0.95, hi = 1.05;
    std::size_t hits = 0;
    for (double v : z) hits += (v >= lo && v < hi);
    const double est = double(hits) / (double(n) * (hi - lo));
    const double p = double(hits) / double(n);
    const double se = std::sqrt(p * (1.0 - p) / double(n)) / (hi - lo);
    const double direct = product_pdf_direct(pair, 1.0);
    CHECK(direct == doctest::Approx(0.2657374414054737).epsilon(1e-9));
    CHECK(std::abs(direct - est) < 4.0 * se + 2e-4);  // 2e-4 covers binning bias
}

TEST_CASE("Fox H route agrees with the direct route over three decades") {
    for (const auto& pair : {equal_pair(0.25), unequal_pair()}) {
        for (double z : {0.05, 0.1, 0.5, 1.0, 5.0, 10.0, 50.0}) {
            const double d = product_pdf_direct(pair, z);
            const double h = product_pdf_foxh(pair, z);
            CHECK(oracles::rel_err(h, d) < 1e-4);
        }
    }
    SUBCASE("frozen spot values") {
        const auto pe = equal_pair(0.25);
        CHECK(product_pdf_foxh(pe, 1.0) ==
              doctest::Approx(0.2657374414054737).epsilon(1e-10));
        const auto pu = unequal_pair();
        CHECK(product_pdf_foxh(pu, 0.7) ==
              doctest::Approx(0.4437838679985).epsilon(1e-10));
    }
}

TEST_CASE("Fox H spec: strip, abscissa, contour independence") {
    const auto pair = equal_pair(0.25);
    const auto spec = make_foxh_spec(pair);
    CHECK(spec.strip_lo == doctest::Approx(-1.0));
    CHECK(spec.strip_hi == doctest::Approx(4.0));
    CHECK(spec.contour_feasible(spec.default_abscissa));
    CHECK(spec.upper[0].second == doctest::Approx(0.25));
    CHECK(spec.lower[0].first == doctest::Approx(0.25));
    SUBCASE("the abscissa choice does not move the value") {
        const double f1 = product_pdf_foxh(pair, 1.3, 1e-9, 0.7);
        const double f2 = product_pdf_foxh(pair, 1.3, 1e-9, 2.8);
        CHECK(f1 == doctest::Approx(f2).epsilon(1e-8));
    }
    SUBCASE("abscissa outside the strip is rejected") {
        CHECK_THROWS_AS(product_pdf_foxh(pair, 1.0, 1e-8, 4.5), ContourError);
        CHECK_THROWS_AS(product_pdf_foxh(pair, 1.0, 1e-8, -1.2), ContourError);
    }
    SUBCASE("Mellin consistency: first moment from the H-route density") {
        const double m = numerics::integrate_adaptive(
                             [&](double z) { return z * product_pdf_foxh(pair, z, 1e-7); },
                             0.0, kInf, 1e-6)
                             .value;
        CHECK(oracles::rel_err(m, product_moment(pair, 1.0)) < 1e-4);
    }
}

TEST_CASE("product distribution function") {
    const auto pair = equal_pair(0.25);
    CHECK(cdf_product(pair, 1.0) == doctest::Approx(0.8180261521922687).epsilon(1e-9));
    SUBCASE("quadrature of the density reproduces the cdf") {
        for (double z : {0.3, 1.0, 3.0}) {
            const double quad =
                numerics::integrate_adaptive(
                    [&](double x) { return product_pdf_direct(pair, x); }, 1e-10, z, 1e-9)
                    .value;
            CHECK(cdf_product(pair, z) == doctest::Approx(quad).epsilon(1e-6));
        }
    }
    SUBCASE("cdf and survival are complementary") {
        for (double z : {0.1, 1.0, 10.0})
            CHECK(cdf_product(pair, z) + survival_product(pair, z) ==
                  doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("Laplace transform of the product") {
    const auto pair = equal_pair(0.25);
    CHECK(laplace_transform_product(pair, 0.0) == 1.0);
    CHECK(laplace_transform_product(pair, 1.0) ==
          doctest::Approx(0.6509383645431).epsilon(1e-9));
    SUBCASE("monotone, positive, convex in u") {
        double prev = 1.0;
        std::vector<double> vals;
        for (double u : {0.25, 0.5, 1.0, 2.0, 4.0, 16.0, 64.0}) {
            const double l = laplace_transform_product(pair, u);
            CHECK(l > 0.0);
            CHECK(l < prev);
            prev = l;
            vals.push_back(l);
        }
        CHECK(vals.back() < 0.1);
        // complete monotonicity spot check: second difference positive
        const double l1 = laplace_transform_product(pair, 1.0);
        const double l2 = laplace_transform_product(pair, 1.5);
        const double l3 = laplace_transform_product(pair, 2.0);
        CHECK(l1 - 2.0 * l2 + l3 > 0.0);
    }
    SUBCASE("small-u slope recovers the first moment") {
        const double eps = 1e-4;
        const double slope = (1.0 - laplace_transform_product(pair, eps)) / eps;
        CHECK(oracles::rel_err(slope, product_moment(pair, 1.0)) < 1e-3);
    }
}

TEST_CASE("characteristic function of the product") {
    const auto pair = equal_pair(0.25);
    CHECK(char_fn_product(pair, 0.0) == std::complex<double>(1.0, 0.0));
    SUBCASE("conjugate symmetry and modulus bound") {
        for (double t : {0.3, 1.0, 4.0}) {
            const auto plus = char_fn_product(pair, t);
            const auto minus = char_fn_product(pair, -t);
            CHECK(std::abs(plus - std::conj(minus)) < 1e-12);
            CHECK(std::abs(plus) <= 1.0 + 1e-10);
        }
    }
    SUBCASE("small-t imaginary slope recovers the first moment") {
        const double t = 1e-3;
        const double slope = char_fn_product(pair, t).imag() / t;
        CHECK(oracles::rel_err(slope, product_moment(pair, 1.0)) < 1e-3);
    }
    SUBCASE("survival-transform path matches the quantile-domain path") {
        const ProductTransform pt(pair);
        for (double t : {0.5, 3.0, 20.0}) {
            const auto a = char_fn_product(pair, t);
            const auto b = pt.char_fn(t);
            CHECK(std::abs(a - b) < 1e-6);
        }
        CHECK(pt.tail_mass() < 1e-12);
        CHECK(oracles::rel_err(pt.char_fn(1e-6).imag() / 1e-6,
                               product_moment(pair, 1.0)) < 1e-4);
    }
}

TEST_CASE("product sampling: determinism and distribution") {
    const auto pair = equal_pair(0.25);
    const auto a = sample_product(pair, {5, 0}, 1000);
    const auto b = sample_product(pair, {5, 0}, 1000);
    const auto c = sample_product(pair, {5, 1}, 1000);
    CHECK(a == b);
    CHECK(a != c);
    SUBCASE("mean of squares within three empirical standard errors") {
        const std::size_t n = 1'000'000;
        const auto z = sample_product(pair, {13, 4}, n);
        double m = 0.0, v2 = 0.0;
        for (double x : z) {
            m += x * x;
            v2 += x * x * x * x;
        }
        m /= double(n);
        v2 /= double(n);
        const double se = std::sqrt(std::max(v2 - m * m, 0.0) / double(n));
        CHECK(std::abs(m - product_moment(pair, 2.0)) < 3.0 * se);
    }
    SUBCASE("KS against the quadrature distribution") {
        const std::size_t n = 100'000;
        auto z = sample_product(pair, {13, 6}, n);
        std::sort(z.begin(), z.end());
        const double ks = harness::ks_statistic(
            z, [&](double x) { return cdf_product(pair, x); }, 25);
        CHECK(ks < harness::ks_critical_value(n, 0.001));
    }
}
