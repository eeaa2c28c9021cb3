#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "hyperfade/hrr.hpp"
#include "hyperfade/solver.hpp"

using namespace hyperfade;
using namespace hyperfade::solver;

TEST_CASE("equal_channel_params builds the symmetric worst-case pair") {
    const auto pair = equal_channel_params(0.25);
    CHECK(pair.source.alpha == doctest::Approx(0.25));
    CHECK(pair.source.beta == doctest::Approx(2.0));
    CHECK(pair.dest.beta == doctest::Approx(2.0));
    CHECK(pair.source.omega == doctest::Approx(1.0));
    CHECK(ipl::is_full_hrr_link(pair.source.alpha, pair.source.beta));
    CHECK_THROWS_AS(equal_channel_params(0.4), DomainError);
    CHECK_THROWS_AS(equal_channel_params(0.0), DomainError);
    CHECK_THROWS_AS(equal_channel_params(0.316), DomainError);
}

TEST_CASE("closed-form bracket limits") {
    CHECK(gamma_ratio_bracket(1e-4) == doctest::Approx(4.0 / 3.0).epsilon(1e-6));
    CHECK(gamma_ratio_bracket(1e-4) ==
          doctest::Approx(1.3333333772).epsilon(1e-9));  // frozen
    CHECK(gamma_ratio_bracket(0.3158) == doctest::Approx(2.0).epsilon(1e-3));
    CHECK(kappa_equal_closed_form(1e-4) == doctest::Approx(16.0 / 9.0).epsilon(1e-6));
}

TEST_CASE("closed-form kappa equals the moment-based kappa") {
    for (int i = 0; i < 50; ++i) {
        const double alpha0 = 0.002 + (0.3157 - 0.002) * i / 49.0;
        const double closed = kappa_equal_closed_form(alpha0);
        const double moments = cascade::kappa(equal_channel_params(alpha0));
        CHECK(std::abs(closed - moments) / closed < 1e-10);
    }
}

TEST_CASE("scale invariance: kappa ignores the mean-square envelope") {
    const auto base = equal_channel_params(0.2);
    const auto scaled = cascade::make_pair(ipl::make_ipl(0.2, 2.5, 7.0),
                                           ipl::make_ipl(0.2, 2.5, 0.3));
    CHECK(cascade::kappa(base) == doctest::Approx(cascade::kappa(scaled)).epsilon(1e-12));
    CHECK(min_elements(base, SolveTarget::ExitFullHrr) ==
          min_elements(scaled, SolveTarget::ExitFullHrr));
    CHECK(min_elements(base, SolveTarget::ReachNoHrr) ==
          min_elements(scaled, SolveTarget::ReachNoHrr));
}

TEST_CASE("min_elements: limiting counts and the strict-exceedance convention") {
    // kappa - 1 = 7/9 limit
    CHECK(min_elements_from_kappa(1.0 + 7.0 / 9.0, SolveTarget::ExitFullHrr) == 2);
    CHECK(min_elements_from_kappa(1.0 + 7.0 / 9.0, SolveTarget::ReachNoHrr) == 4);
    // just below kappa - 1 = 3
    CHECK(min_elements_from_kappa(3.999, SolveTarget::ExitFullHrr) == 6);
    CHECK(min_elements_from_kappa(3.999, SolveTarget::ReachNoHrr) == 14);
    // exactly on the boundary: N/(kappa-1) = 2 at N = 6 is still the severe
    // regime, so one more element is needed
    CHECK(min_elements_from_kappa(4.0, SolveTarget::ExitFullHrr) == 7);
    CHECK_THROWS_AS(min_elements_from_kappa(1.0, SolveTarget::ExitFullHrr), DomainError);
}

TEST_CASE("solve_equal_channel: published limits") {
    const auto lo = solve_equal_channel(0.001);
    CHECK(lo.n_exit_full == 2);
    CHECK(lo.n_reach_no == 4);
    const auto hi = solve_equal_channel(0.3159);
    CHECK(hi.n_exit_full == 6);
    CHECK(hi.n_reach_no == 14);
    CHECK(hi.kappa_minus_1 > 2.97);
    CHECK(hi.kappa_minus_1 < 3.0);
}

TEST_CASE("solve sweep: ordering, sandwich, classification consistency") {
    int prev_f = 0, prev_n = 0;
    for (int i = 0; i < 50; ++i) {
        const double alpha0 = 0.001 + (0.3159 - 0.001) * i / 49.0;
        const auto r = solve_equal_channel(alpha0);
        CHECK(r.n_exit_full >= 1);
        CHECK(r.n_exit_full <= r.n_reach_no);
        CHECK(r.n_exit_full >= prev_f);
        CHECK(r.n_reach_no >= prev_n);
        prev_f = r.n_exit_full;
        prev_n = r.n_reach_no;
        // sandwich at both boundaries
        const double ah_f = double(r.n_exit_full) / r.kappa_minus_1;
        CHECK(ah_f > 2.0);
        if (r.n_exit_full > 1)
            CHECK(double(r.n_exit_full - 1) / r.kappa_minus_1 <= 2.0);
        const double ah_n = double(r.n_reach_no) / r.kappa_minus_1;
        CHECK(ah_n > hrr::aof_boundary());
        CHECK(double(r.n_reach_no - 1) / r.kappa_minus_1 <= hrr::aof_boundary());
        // regimes straddle the boundaries
        CHECK(hrr::classify(ah_f) != hrr::Regime::FullHrr);
        if (r.n_exit_full > 1)
            CHECK(hrr::classify(double(r.n_exit_full - 1) / r.kappa_minus_1) ==
                  hrr::Regime::FullHrr);
        CHECK(hrr::classify(ah_n) == hrr::Regime::NoHrr);
        CHECK(hrr::classify(double(r.n_reach_no - 1) / r.kappa_minus_1) !=
              hrr::Regime::NoHrr);
    }
}

TEST_CASE("alpha_hat_at matches the generic moment route") {
    const auto pair = equal_channel_params(0.2);
    const double ah = alpha_hat_at(pair, 8);
    CHECK(ah == doctest::Approx(8.0 / (kappa_equal_closed_form(0.2) - 1.0)).epsilon(1e-10));
    CHECK_THROWS_AS(alpha_hat_at(pair, 0), DomainError);
}
