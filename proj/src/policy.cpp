#include "oilcurb/policy.hpp"

#include <cmath>
#include <limits>

#include "oilcurb/errors.hpp"
#include "oilcurb/welfare.hpp"

namespace oilcurb {

namespace {

constexpr int kMaxIterations = 10000;
constexpr double kPriceRelTol = 1e-10;   // bisection width, relative
constexpr double kResidualTol = 1e-9;    // linearized clearing residual, USD/b scale

/// The model assumes every Russian field produces at the baseline price, so
/// the curve must carry exactly the calibrated export volume, all of it
/// profitable at p*.
void require_curve_matches(const MarketCalibration& cal, const StepSupplyCurve& curve) {
    if (std::abs(curve.total_capacity() - cal.s_ru_star) > 1e-6 * cal.s_ru_star)
        throw ValidationError("supply curve total capacity does not match the calibrated "
                              "Russian export volume");
    if (curve.max_marginal_cost() > cal.p_star)
        throw ValidationError("supply curve has marginal cost above the baseline price; "
                              "the market would not clear at full Russian supply");
}

double elasticity_gap(const MarketCalibration& cal) {
    const double gap = (1.0 - cal.y) * cal.eps_row - cal.eps_d;
    if (!(gap > 0.0))
        throw ValidationError("degenerate elasticities: (1-y) eps_row - eps_d must be > 0");
    return gap;
}

/// Index of the first supply step whose marginal cost lies in
/// (price_lo, price_hi], or -1 when the window is step-free.
int step_in_window(const StepSupplyCurve& curve, double price_lo, double price_hi) {
    const auto& steps = curve.steps();
    for (std::size_t i = 0; i < steps.size(); ++i) {
        if (steps[i].mc > price_hi * (1.0 + 1e-12)) break;
        if (steps[i].mc > price_lo) return static_cast<int>(i);
    }
    return -1;
}

double solve_quantity_exact(const MarketCalibration& cal, double alpha) {
    const double fixed_ru = (1.0 - alpha) * cal.s_ru_star;
    auto residual = [&](double p) { return cal.demand(p) - cal.row_supply(p) - fixed_ru; };

    double lo = cal.p_star;
    if (residual(lo) <= 0.0) return cal.p_star;  // alpha == 0
    double hi = 2.0 * cal.p_star;
    while (residual(hi) > 0.0) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e9 * cal.p_star)
            throw SolverError("quantity equilibrium: no price bracket found");
    }
    for (int i = 0; i < kMaxIterations && hi - lo > kPriceRelTol * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (residual(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

struct DiscountState {
    double p_eq;
    double s_ru_after;
};

/// Full nonlinear clearing D(p) = S_ROW(p) + S_RU((1-delta) p). The residual
/// is strictly decreasing in p, so bisection brackets the root; when the root
/// sits on a supply step, the price is pinned to the step's marginal cost and
/// the marginal field produces the fraction that clears the market.
DiscountState solve_discount_exact(const MarketCalibration& cal, const StepSupplyCurve& curve,
                                   double delta) {
    const double keep = 1.0 - delta;
    auto supply = [&](double p) { return curve.quantity_at_price(keep * p); };
    auto residual = [&](double p) { return cal.demand(p) - cal.row_supply(p) - supply(p); };

    double lo = cal.p_star;
    if (residual(lo) <= 0.0) return {cal.p_star, supply(cal.p_star)};  // supply unchanged
    double hi = 2.0 * cal.p_star;
    while (residual(hi) > 0.0) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e9 * cal.p_star)
            throw SolverError("discount equilibrium: no price bracket found");
    }
    for (int i = 0; i < kMaxIterations && hi - lo > kPriceRelTol * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (residual(mid) > 0.0 ? lo : hi) = mid;
    }

    if (supply(hi) > supply(lo)) {
        // A step lies inside the bracket: ration the marginal field.
        const auto& steps = curve.steps();
        int idx = step_in_window(curve, keep * lo, keep * hi);
        if (idx < 0) throw SolverError("discount equilibrium: bracketed step not found");
        for (; idx + 1 < static_cast<int>(steps.size()); ++idx) {
            // With several steps in the (tiny) window, pick the one whose
            // capacity range contains the required supply.
            const double p_pin = steps[idx].mc / keep;
            if (cal.demand(p_pin) - cal.row_supply(p_pin) <= steps[idx].cum) break;
            if (steps[idx + 1].mc > keep * hi * (1.0 + 1e-12)) break;
        }
        const double p_eq = steps[idx].mc / keep;
        const double required = cal.demand(p_eq) - cal.row_supply(p_eq);
        const double cum_below = idx == 0 ? 0.0 : steps[idx - 1].cum;
        return {p_eq, std::clamp(required, cum_below, steps[idx].cum)};
    }
    const double p_eq = 0.5 * (lo + hi);
    return {p_eq, supply(p_eq)};
}

/// Linearized clearing relation: eps_d dp = (1-y) eps_row dp + y p* dS/S*,
/// with dS read off the exact step curve at the discounted price. A damped
/// fixed point walks dp up to the solution; once the iterates bracket the
/// root, bisection on the monotone residual takes over (the damped map alone
/// settles into a two-cycle around a supply step instead of converging).
/// A root inside a step jump is resolved by rationing the marginal field.
DiscountState solve_discount_approx(const MarketCalibration& cal, const StepSupplyCurve& curve,
                                    double delta) {
    const double keep = 1.0 - delta;
    const double p0 = cal.p_star;
    const double s0 = cal.s_ru_star;
    const double gap = elasticity_gap(cal);

    auto supply_change = [&](double dp) { return curve.quantity_at_price(keep * (p0 + dp)) - s0; };
    auto fp_target = [&](double dp) { return -cal.y * p0 * supply_change(dp) / (s0 * gap); };

    if (fp_target(0.0) <= 0.0) return {p0, s0};  // supply unchanged, no price response

    double dp = 0.0;
    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();
    for (int i = 0; i < kMaxIterations; ++i) {
        const double g = fp_target(dp);
        const double residual = gap * (g - dp);
        if (std::abs(residual) < kResidualTol) return {p0 + dp, s0 + supply_change(dp)};
        if (g > dp)
            lo = std::max(lo, dp);
        else
            hi = std::min(hi, dp);

        if (std::isfinite(hi) && hi - lo < 1e-11 * p0) {
            // The residual jumps across zero at a supply step.
            const int idx = step_in_window(curve, keep * (p0 + lo), keep * (p0 + hi));
            if (idx < 0) throw SolverError("discount approximation: bracketed step not found");
            const auto& step = curve.steps()[idx];
            const double dp_pin = step.mc / keep - p0;
            const double cum_below = idx == 0 ? 0.0 : curve.steps()[idx - 1].cum;
            const double ds = std::clamp(-gap * dp_pin * s0 / (cal.y * p0), cum_below - s0,
                                         step.cum - s0);
            return {p0 + dp_pin, s0 + ds};
        }
        dp = std::isfinite(hi) ? 0.5 * (lo + hi) : 0.5 * (dp + g);
    }
    throw SolverError("discount approximation did not converge within the iteration cap");
}

PolicyOutcome finish_outcome(const MarketCalibration& cal, PolicyOutcome outcome) {
    outcome.p_world = cal.p_star + outcome.delta_p;
    outcome.ds_row = cal.row_supply(outcome.p_world) - cal.s_row_star;
    outcome.dq = outcome.ds_ru + outcome.ds_row;
    const double q_total = cal.q_star + outcome.dq;
    const double s_ru_after = cal.s_ru_star + outcome.ds_ru;
    outcome.p_weighted =
        ((q_total - s_ru_after) * outcome.p_world + s_ru_after * outcome.p_russia) / q_total;
    return outcome;
}

}  // namespace

SolveMode parse_mode(const std::string& text) {
    if (text == "approx" || text == "paper") return SolveMode::PaperApprox;
    if (text == "exact") return SolveMode::ExactEquilibrium;
    throw ValidationError("unknown solve mode '" + text + "' (expected 'approx' or 'exact')");
}

double xi(const MarketCalibration& cal) {
    if (cal.y == 0.0) return 0.0;
    return cal.y / elasticity_gap(cal);
}

double quantity_price_change(const MarketCalibration& cal, double alpha, SolveMode mode) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw ValidationError("quantity restriction extent must be in [0, 1]");
    if (alpha == 0.0) return 0.0;
    if (mode == SolveMode::PaperApprox) return cal.p_star * std::expm1(xi(cal) * alpha);
    return solve_quantity_exact(cal, alpha) - cal.p_star;
}

PolicyOutcome quantity_outcome(const MarketCalibration& cal, const StepSupplyCurve& curve,
                               double alpha, SolveMode mode) {
    require_curve_matches(cal, curve);
    PolicyOutcome outcome;
    outcome.policy = PolicyKind::QuantityRestriction;
    outcome.extent = alpha;
    outcome.mode = mode;
    outcome.delta_p = quantity_price_change(cal, alpha, mode);
    outcome.ds_ru = -alpha * cal.s_ru_star;
    outcome.p_russia = cal.p_star + outcome.delta_p;  // Russia gets the world price

    const double s_after = (1.0 - alpha) * cal.s_ru_star;
    outcome.d_profit_ru = ((1.0 - alpha) * outcome.delta_p - alpha * cal.p_star) * cal.s_ru_star +
                          curve.cost_integral(s_after, cal.s_ru_star);
    outcome.d_cs = cs_change_quantity(cal, outcome.delta_p);
    return finish_outcome(cal, outcome);
}

DiscountResponse discount_price_change(const MarketCalibration& cal, const StepSupplyCurve& curve,
                                       double delta, SolveMode mode) {
    if (!(delta >= 0.0 && delta < 1.0))
        throw ValidationError("price discount extent must be in [0, 1)");
    require_curve_matches(cal, curve);
    if (delta == 0.0) return {0.0, 0.0};
    const DiscountState state = mode == SolveMode::PaperApprox
                                    ? solve_discount_approx(cal, curve, delta)
                                    : solve_discount_exact(cal, curve, delta);
    return {state.p_eq - cal.p_star, state.s_ru_after - cal.s_ru_star};
}

PolicyOutcome discount_outcome(const MarketCalibration& cal, const StepSupplyCurve& curve,
                               double delta, SolveMode mode) {
    const DiscountResponse response = discount_price_change(cal, curve, delta, mode);
    PolicyOutcome outcome;
    outcome.policy = PolicyKind::PriceDiscount;
    outcome.extent = delta;
    outcome.mode = mode;
    outcome.delta_p = response.delta_p;
    outcome.ds_ru = response.ds_ru;
    outcome.p_russia = (1.0 - delta) * (cal.p_star + response.delta_p);

    const double s_after = cal.s_ru_star + response.ds_ru;
    outcome.d_profit_ru =
        ((1.0 - delta) * response.delta_p - delta * cal.p_star) * cal.s_ru_star +
        (1.0 - delta) * (cal.p_star + response.delta_p) * response.ds_ru +
        curve.cost_integral(s_after, cal.s_ru_star);
    outcome.d_cs = cs_change_discount(cal, delta, response.delta_p, s_after);
    return finish_outcome(cal, outcome);
}

}  // namespace oilcurb
