#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oilcurb/errors.hpp"
#include "oilcurb/policy.hpp"

using namespace oilcurb;

namespace {

// Small market that can be checked by hand: p* = 10, Q* = 40, S_RU* = 3,
// short-run preset elasticities (eps_d = -0.125, eps_row = 0), so y = 0.075
// and xi = 0.6.
MarketCalibration toy_market() { return calibrate(10.0, 40.0, 3.0, Horizon::ShortRun); }

StepSupplyCurve toy_curve() {
    const std::vector<FieldRecord> fields = {{"cheap", 2.0, 3.0, 0.0}, {"dear", 1.0, 5.0, 0.0}};
    return build_curve(fields, Horizon::ShortRun);
}

MarketCalibration paper_market(Horizon h) { return calibrate(101.33, 99.0, 7.5, h); }

StepSupplyCurve paper_curve(Horizon h) {
    return build_curve(generate_synthetic_fields(SyntheticSpec{}, 42), h);
}

}  // namespace

TEST_CASE("xi matches the table values") {
    CHECK(xi(paper_market(Horizon::ShortRun)) == doctest::Approx(0.606060606060606).epsilon(1e-12));
    CHECK(xi(paper_market(Horizon::LongRun)) == doctest::Approx(0.132872707945788).epsilon(1e-10));

    MarketCalibration no_russia = paper_market(Horizon::ShortRun);
    no_russia.y = 0.0;  // limit case: no Russian share, no price effect
    CHECK(xi(no_russia) == 0.0);

    MarketCalibration degenerate = paper_market(Horizon::ShortRun);
    degenerate.eps_d = 0.5;
    degenerate.eps_row = 0.0;
    CHECK_THROWS_AS(xi(degenerate), ValidationError);
}

TEST_CASE("quantity price change, approx mode") {
    const auto cal = paper_market(Horizon::ShortRun);
    CHECK(quantity_price_change(cal, 0.0, SolveMode::PaperApprox) == 0.0);
    CHECK(quantity_price_change(cal, 0.2, SolveMode::PaperApprox) ==
          doctest::Approx(13.057823880755).epsilon(1e-12));
    CHECK_THROWS_AS(quantity_price_change(cal, -0.1, SolveMode::PaperApprox), ValidationError);
    CHECK_THROWS_AS(quantity_price_change(cal, 1.5, SolveMode::PaperApprox), ValidationError);
}

TEST_CASE("quantity price change, exact mode, against the closed form") {
    const auto cal = paper_market(Horizon::ShortRun);
    CHECK(quantity_price_change(cal, 0.0, SolveMode::ExactEquilibrium) == 0.0);
    // With eps_row = 0 the equilibrium solves in closed form:
    // p = p* ((s_row* + (1-a) s_ru*) / q*)^{1/eps_d}.
    const double closed_form =
        101.33 * std::pow((91.5 + 0.8 * 7.5) / 99.0, 1.0 / -0.125) - 101.33;
    const double solved = quantity_price_change(cal, 0.2, SolveMode::ExactEquilibrium);
    CHECK(solved == doctest::Approx(closed_form).epsilon(1e-9));
    CHECK(closed_form == doctest::Approx(13.1639856461152).epsilon(1e-12));

    const double approx = quantity_price_change(cal, 0.2, SolveMode::PaperApprox);
    CHECK(std::abs(approx - solved) / solved < 0.02);
}

TEST_CASE("price change is zero at zero extent and strictly increasing") {
    for (Horizon h : {Horizon::ShortRun, Horizon::LongRun}) {
        const auto cal = paper_market(h);
        for (SolveMode mode : {SolveMode::PaperApprox, SolveMode::ExactEquilibrium}) {
            double previous = 0.0;
            for (double alpha = 0.05; alpha <= 0.95; alpha += 0.05) {
                const double dp = quantity_price_change(cal, alpha, mode);
                CHECK(dp > previous);
                previous = dp;
            }
        }
    }
}

TEST_CASE("approx and exact price changes agree within 5% for alpha <= 0.3") {
    for (Horizon h : {Horizon::ShortRun, Horizon::LongRun}) {
        const auto cal = paper_market(h);
        for (double alpha = 0.05; alpha <= 0.3 + 1e-12; alpha += 0.05) {
            const double approx = quantity_price_change(cal, alpha, SolveMode::PaperApprox);
            const double exact = quantity_price_change(cal, alpha, SolveMode::ExactEquilibrium);
            CHECK(std::abs(approx - exact) / exact <= 0.05);
        }
    }
}

TEST_CASE("quantity outcome on the toy market") {
    const auto cal = toy_market();
    const auto curve = toy_curve();
    const double alpha = 1.0 / 3.0;
    const auto outcome = quantity_outcome(cal, curve, alpha, SolveMode::PaperApprox);

    // dp = 10 (e^{0.6/3} - 1); profit change = ((1-a) dp - a p*) S* + 5.
    CHECK(outcome.delta_p == doctest::Approx(2.21402758160170).epsilon(1e-12));
    CHECK(outcome.ds_ru == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(outcome.ds_row == doctest::Approx(0.0));
    CHECK(outcome.dq == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(outcome.d_profit_ru == doctest::Approx(-0.571944836796603).epsilon(1e-12));
    CHECK(outcome.d_cs == doctest::Approx(-87.4268418799351).epsilon(1e-12));
    CHECK(outcome.p_world == doctest::Approx(12.2140275816017).epsilon(1e-12));
    CHECK(outcome.p_russia == outcome.p_world);     // quantity policy: same price
    CHECK(outcome.p_weighted == doctest::Approx(outcome.p_world).epsilon(1e-12));
}

TEST_CASE("discount leaves the market untouched while Russian supply stays profitable") {
    const auto cal = toy_market();
    const auto curve = toy_curve();
    for (SolveMode mode : {SolveMode::PaperApprox, SolveMode::ExactEquilibrium}) {
        const auto none = discount_price_change(cal, curve, 0.0, mode);
        CHECK(none.delta_p == 0.0);
        CHECK(none.ds_ru == 0.0);

        const auto mild = discount_price_change(cal, curve, 0.4, mode);
        CHECK(mild.delta_p == 0.0);
        CHECK(mild.ds_ru == 0.0);

        // Right-continuity: at delta = 0.5 the dear field sits exactly at its
        // marginal cost and keeps producing.
        const auto boundary = discount_price_change(cal, curve, 0.5, mode);
        CHECK(boundary.delta_p == 0.0);
        CHECK(boundary.ds_ru == 0.0);
    }
    CHECK_THROWS_AS(discount_price_change(cal, curve, 1.0, SolveMode::PaperApprox),
                    ValidationError);
    CHECK_THROWS_AS(discount_price_change(cal, curve, -0.2, SolveMode::PaperApprox),
                    ValidationError);
}

TEST_CASE("discount beyond the marginal cost rations the dear field") {
    const auto cal = toy_market();
    const auto curve = toy_curve();
    const double delta = 0.55;

    // Exact mode: the price pins to mc/(1-delta) = 11.111... and the dear
    // field produces the fraction that clears the market.
    const auto exact = discount_price_change(cal, curve, delta, SolveMode::ExactEquilibrium);
    CHECK(exact.delta_p == doctest::Approx(10.0 / 9.0).epsilon(1e-12));
    CHECK(exact.ds_ru == doctest::Approx(-0.523348745359937).epsilon(1e-10));
    // Clearing residual with the rationed field.
    const double p_eq = cal.p_star + exact.delta_p;
    const double residual =
        cal.demand(p_eq) - cal.row_supply(p_eq) - (cal.s_ru_star + exact.ds_ru);
    CHECK(std::abs(residual) < 1e-8);

    // Approx mode: same pinned price, supply change from the linearized relation.
    const auto approx = discount_price_change(cal, curve, delta, SolveMode::PaperApprox);
    CHECK(approx.delta_p == doctest::Approx(10.0 / 9.0).epsilon(1e-12));
    CHECK(approx.ds_ru == doctest::Approx(-5.0 / 9.0).epsilon(1e-10));

    // Profit via the exact state: the rationed field earns zero margin at the
    // pinned price, so the outcome reduces to -15 exactly.
    const auto outcome = discount_outcome(cal, curve, delta, SolveMode::ExactEquilibrium);
    CHECK(outcome.d_profit_ru == doctest::Approx(-15.0).epsilon(1e-10));
    CHECK(outcome.d_cs == doctest::Approx(-29.0128614392957).epsilon(1e-10));
    CHECK(outcome.p_russia == doctest::Approx((1.0 - delta) * (cal.p_star + outcome.delta_p)));
    CHECK(outcome.dq == doctest::Approx(outcome.ds_ru + outcome.ds_row));
    // Weighted price sits between the Russian and world prices.
    CHECK(outcome.p_weighted < outcome.p_world);
    CHECK(outcome.p_weighted > outcome.p_russia);
}

TEST_CASE("unchanged-supply discount is a pure rent transfer") {
    const auto cal = toy_market();
    const auto curve = toy_curve();
    for (double delta : {0.1, 0.3, 0.5}) {
        const auto outcome = discount_outcome(cal, curve, delta, SolveMode::ExactEquilibrium);
        CHECK(outcome.delta_p == 0.0);
        CHECK(outcome.ds_ru == 0.0);
        CHECK(outcome.d_profit_ru ==
              doctest::Approx(-delta * cal.p_star * cal.s_ru_star).epsilon(1e-12));
        CHECK(outcome.d_cs == doctest::Approx(-outcome.d_profit_ru).epsilon(1e-12));
    }
}

TEST_CASE("calibrated synthetic curve: supply holds until deep discounts") {
    const auto cal = paper_market(Horizon::ShortRun);
    const auto curve = paper_curve(Horizon::ShortRun);
    for (SolveMode mode : {SolveMode::PaperApprox, SolveMode::ExactEquilibrium}) {
        const auto low = discount_price_change(cal, curve, 0.2, mode);
        CHECK(low.delta_p == 0.0);
        CHECK(low.ds_ru == 0.0);
        const auto deep = discount_price_change(cal, curve, 0.8, mode);
        CHECK(deep.delta_p > 0.0);
        CHECK(deep.ds_ru < 0.0);
    }
}

TEST_CASE("discount profit loss is nonincreasing on the spec grid") {
    for (Horizon h : {Horizon::ShortRun, Horizon::LongRun}) {
        const auto cal = paper_market(h);
        const auto curve = paper_curve(h);
        for (SolveMode mode : {SolveMode::PaperApprox, SolveMode::ExactEquilibrium}) {
            double previous = 1.0;
            for (double delta = 0.0; delta <= 0.95 + 1e-12; delta += 0.05) {
                const double profit = discount_outcome(cal, curve, delta, mode).d_profit_ru;
                CHECK(profit <= previous + 1e-9);
                previous = profit;
            }
        }
    }
}

TEST_CASE("exact-mode equilibrium residual stays below 1e-8") {
    for (Horizon h : {Horizon::ShortRun, Horizon::LongRun}) {
        const auto cal = paper_market(h);
        const auto curve = paper_curve(h);
        for (double delta = 0.0; delta <= 0.95 + 1e-12; delta += 0.05) {
            const auto response =
                discount_price_change(cal, curve, delta, SolveMode::ExactEquilibrium);
            const double p = cal.p_star + response.delta_p;
            const double residual =
                cal.demand(p) - cal.row_supply(p) - (cal.s_ru_star + response.ds_ru);
            CHECK(std::abs(residual) < 1e-8);
        }
    }
}

TEST_CASE("a 0.001 USD/b price scan brackets the exact-mode price") {
    const auto cal = paper_market(Horizon::ShortRun);
    const auto curve = paper_curve(Horizon::ShortRun);

    SUBCASE("deep discount") {
        const double delta = 0.85;
        const auto response = discount_price_change(cal, curve, delta, SolveMode::ExactEquilibrium);
        const double p_eq = cal.p_star + response.delta_p;
        auto residual = [&](double p) {
            return cal.demand(p) - cal.row_supply(p) - curve.quantity_at_price((1.0 - delta) * p);
        };
        double p = cal.p_star;
        while (residual(p) > 0.0) p += 0.001;
        CHECK(p_eq >= p - 0.001 - 1e-9);
        CHECK(p_eq <= p + 1e-9);
    }

    SUBCASE("quantity restriction") {
        const double alpha = 0.2;
        const double dp = quantity_price_change(cal, alpha, SolveMode::ExactEquilibrium);
        auto residual = [&](double p) {
            return cal.demand(p) - cal.row_supply(p) - (1.0 - alpha) * cal.s_ru_star;
        };
        double p = cal.p_star;
        while (residual(p) > 0.0) p += 0.001;
        CHECK(cal.p_star + dp >= p - 0.001 - 1e-9);
        CHECK(cal.p_star + dp <= p + 1e-9);
    }
}

TEST_CASE("outcome preconditions: the curve must match the calibration") {
    const auto cal = paper_market(Horizon::ShortRun);
    const auto wrong_total = toy_curve();  // total 3 Mb/d, calibration expects 7.5
    CHECK_THROWS_AS(quantity_outcome(cal, wrong_total, 0.2, SolveMode::PaperApprox),
                    ValidationError);

    // A field priced above p* would sit idle at the baseline.
    const std::vector<FieldRecord> expensive = {{"a", 7.0, 5.0, 0.0}, {"b", 0.5, 200.0, 0.0}};
    const auto idle_curve = build_curve(expensive, Horizon::ShortRun);
    CHECK_THROWS_AS(discount_outcome(cal, idle_curve, 0.1, SolveMode::PaperApprox),
                    ValidationError);
}

TEST_CASE("mode parsing") {
    CHECK(parse_mode("approx") == SolveMode::PaperApprox);
    CHECK(parse_mode("exact") == SolveMode::ExactEquilibrium);
    CHECK_THROWS_AS(parse_mode("fast"), ValidationError);
}
