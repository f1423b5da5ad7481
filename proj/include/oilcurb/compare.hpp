#pragma once

#include <span>
#include <vector>

#include "oilcurb/policy.hpp"
#include "oilcurb/welfare.hpp"

namespace oilcurb {

/// One point of the burden frontier: importers' surplus change against
/// Russia's profit loss, in money terms and as GDP shares.
struct BurdenPoint {
    PolicyKind policy = PolicyKind::QuantityRestriction;
    double extent = 0.0;
    double importer_surplus_musd_day = 0.0;
    double importer_surplus_pct_world_gdp = 0.0;
    double russia_loss_musd_day = 0.0;
    double russia_loss_pct_gdp = 0.0;
};

std::vector<BurdenPoint> burden_frontier(const MarketCalibration& cal, const StepSupplyCurve& curve,
                                         std::span<const double> extents, PolicyKind policy,
                                         SolveMode mode, double world_gdp_usd,
                                         double russia_gdp_usd);

struct IndifferencePoint {
    double alpha = 0.0;
    double delta_equivalent = 0.0;
    /// True when no discount in [0, 1) attains the quantity-restriction loss
    /// within tolerance (the discount is capped, or the restriction would
    /// actually profit Russia and no discount can replicate a gain).
    bool saturated = false;
};

/// For each alpha, the discount extent delta inflicting the same profit loss
/// on Russia, found by bisection on the monotone loss curve. Where a kink of
/// the step supply curve makes several discounts attain the target, the
/// smallest is returned.
std::vector<IndifferencePoint> indifference_curve(const MarketCalibration& cal,
                                                  const StepSupplyCurve& curve,
                                                  std::span<const double> alpha_grid,
                                                  SolveMode mode,
                                                  double tolerance_musd_day = 0.1);

}  // namespace oilcurb
