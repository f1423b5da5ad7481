#include "oilcurb/compare.hpp"

#include <cmath>

#include "oilcurb/errors.hpp"

namespace oilcurb {

namespace {

PolicyOutcome evaluate(const MarketCalibration& cal, const StepSupplyCurve& curve,
                       PolicyKind policy, double extent, SolveMode mode) {
    return policy == PolicyKind::QuantityRestriction ? quantity_outcome(cal, curve, extent, mode)
                                                     : discount_outcome(cal, curve, extent, mode);
}

}  // namespace

std::vector<BurdenPoint> burden_frontier(const MarketCalibration& cal, const StepSupplyCurve& curve,
                                         std::span<const double> extents, PolicyKind policy,
                                         SolveMode mode, double world_gdp_usd,
                                         double russia_gdp_usd) {
    if (!(world_gdp_usd > 0.0 && russia_gdp_usd > 0.0))
        throw ValidationError("burden_frontier: GDP scales must be > 0");
    std::vector<BurdenPoint> points;
    points.reserve(extents.size());
    for (double extent : extents) {
        const PolicyOutcome outcome = evaluate(cal, curve, policy, extent, mode);
        BurdenPoint point;
        point.policy = policy;
        point.extent = extent;
        point.importer_surplus_musd_day = outcome.d_cs;
        point.importer_surplus_pct_world_gdp =
            outcome.d_cs * 1e6 * kDaysPerYear / world_gdp_usd * 100.0;
        point.russia_loss_musd_day = outcome.d_profit_ru;
        point.russia_loss_pct_gdp =
            outcome.d_profit_ru * 1e6 * kDaysPerYear / russia_gdp_usd * 100.0;
        points.push_back(point);
    }
    return points;
}

std::vector<IndifferencePoint> indifference_curve(const MarketCalibration& cal,
                                                  const StepSupplyCurve& curve,
                                                  std::span<const double> alpha_grid,
                                                  SolveMode mode, double tolerance_musd_day) {
    constexpr double kDeltaCap = 1.0 - 1e-9;
    auto discount_loss = [&](double delta) {
        return discount_outcome(cal, curve, delta, mode).d_profit_ru;
    };

    std::vector<IndifferencePoint> points;
    points.reserve(alpha_grid.size());
    for (double alpha : alpha_grid) {
        if (!(alpha >= 0.0 && alpha < 1.0))
            throw ValidationError("indifference_curve: alpha grid must lie in [0, 1)");
        const double target = quantity_outcome(cal, curve, alpha, mode).d_profit_ru;

        IndifferencePoint point;
        point.alpha = alpha;
        if (std::abs(discount_loss(0.0) - target) <= tolerance_musd_day) {
            point.delta_equivalent = 0.0;  // alpha == 0 or a vanishing loss
        } else if (target > 0.0) {
            // A mild restriction can profit Russia through the price rise; no
            // discount replicates a gain, so the closest point is delta = 0.
            point.delta_equivalent = 0.0;
            point.saturated = true;
        } else if (discount_loss(kDeltaCap) > target + tolerance_musd_day) {
            point.delta_equivalent = kDeltaCap;
            point.saturated = true;
        } else {
            // The loss is continuous and nonincreasing in delta (the marginal
            // field is rationed fractionally at supply steps), so bisection
            // converges to the smallest delta attaining the target.
            double lo = 0.0;
            double hi = kDeltaCap;
            double mid = hi;
            for (int i = 0; i < 200; ++i) {
                mid = 0.5 * (lo + hi);
                const double loss = discount_loss(mid);
                if (std::abs(loss - target) <= tolerance_musd_day) break;
                (loss > target ? lo : hi) = mid;
            }
            point.delta_equivalent = mid;
            if (std::abs(discount_loss(mid) - target) > tolerance_musd_day) point.saturated = true;
        }
        points.push_back(point);
    }
    return points;
}

}  // namespace oilcurb
