#pragma once

#include <string>

#include "oilcurb/field_supply.hpp"
#include "oilcurb/market.hpp"

namespace oilcurb {

/// PaperApprox uses the log-linear price approximation for the quantity
/// policy and the elasticity-linearized clearing relation (with the exact
/// step supply curve) for the discount policy. ExactEquilibrium solves the
/// full nonlinear market clearing by bracketed bisection.
enum class SolveMode { PaperApprox, ExactEquilibrium };

enum class PolicyKind { QuantityRestriction, PriceDiscount };

inline std::string to_string(SolveMode mode) {
    return mode == SolveMode::PaperApprox ? "approx" : "exact";
}
inline std::string to_string(PolicyKind kind) {
    return kind == PolicyKind::QuantityRestriction ? "quantity" : "discount";
}
SolveMode parse_mode(const std::string& text);

/// Full effect record of one policy point.
struct PolicyOutcome {
    PolicyKind policy = PolicyKind::QuantityRestriction;
    double extent = 0.0;  // alpha for quantity, delta for discount
    SolveMode mode = SolveMode::PaperApprox;

    double delta_p = 0.0;     // world price change, USD/b
    double p_world = 0.0;     // post-policy world price
    double p_russia = 0.0;    // price Russia receives
    double p_weighted = 0.0;  // consumption-weighted average price
    double ds_ru = 0.0;       // change in Russian exports, Mb/d
    double ds_row = 0.0;      // change in ROW supply, Mb/d
    double dq = 0.0;          // change in total quantity (= ds_ru + ds_row)
    double d_profit_ru = 0.0; // change in Russian profit, million USD/day
    double d_cs = 0.0;        // change in global consumer surplus, million USD/day
};

/// Semi-elasticity constant mapping a restriction share to a log price
/// change: xi = y / ((1-y) eps_row - eps_d).
double xi(const MarketCalibration& cal);

/// World price increase caused by restricting Russian exports to (1-alpha)
/// of baseline. Approx mode: p* (e^{xi alpha} - 1). Exact mode: bisection on
/// the market-clearing residual, relative price tolerance 1e-10.
double quantity_price_change(const MarketCalibration& cal, double alpha, SolveMode mode);

PolicyOutcome quantity_outcome(const MarketCalibration& cal, const StepSupplyCurve& curve,
                               double alpha, SolveMode mode);

struct DiscountResponse {
    double delta_p;  // world price change, >= 0
    double ds_ru;    // change in Russian exports, <= 0
};

/// Price and Russian-supply response to a forced discount delta in [0, 1).
/// Russia receives (1-delta) times the world price, so high-cost fields drop
/// out once that falls below their marginal cost. At a step of the supply
/// curve the marginal field is rationed fractionally, which pins the residual
/// to zero even where supply jumps.
DiscountResponse discount_price_change(const MarketCalibration& cal, const StepSupplyCurve& curve,
                                       double delta, SolveMode mode);

PolicyOutcome discount_outcome(const MarketCalibration& cal, const StepSupplyCurve& curve,
                               double delta, SolveMode mode);

}  // namespace oilcurb
