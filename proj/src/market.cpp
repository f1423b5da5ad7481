#include "oilcurb/market.hpp"

#include <cmath>

#include "oilcurb/errors.hpp"

namespace oilcurb {

ElasticityPair preset_elasticities(Horizon horizon) {
    // Short run: inelastic ROW supply and near-inelastic demand.
    return horizon == Horizon::ShortRun ? ElasticityPair{-0.125, 0.0}
                                        : ElasticityPair{-0.45, 0.13};
}

double MarketCalibration::demand(double price) const {
    if (!(price > 0.0)) throw ValidationError("demand: price must be > 0");
    return b_d * std::pow(price, eps_d);
}

double MarketCalibration::row_supply(double price) const {
    if (!(price > 0.0)) throw ValidationError("row_supply: price must be > 0");
    return b_row * std::pow(price, eps_row);
}

MarketCalibration calibrate(double p_star, double q_star, double s_ru_star, Horizon horizon,
                            std::optional<double> eps_d_override,
                            std::optional<double> eps_row_override) {
    if (!(p_star > 0.0 && q_star > 0.0 && s_ru_star > 0.0))
        throw ValidationError("calibrate: p_star, q_star and s_ru_star must be > 0");
    if (!(s_ru_star < q_star))
        throw ValidationError("calibrate: Russian exports must be below world demand");

    const ElasticityPair preset = preset_elasticities(horizon);
    const double eps_d = eps_d_override.value_or(preset.demand);
    const double eps_row = eps_row_override.value_or(preset.row_supply);
    if (!(eps_d < 0.0)) throw ValidationError("calibrate: demand elasticity must be < 0");
    if (eps_d == -1.0)
        throw ValidationError("calibrate: demand elasticity of -1 is not supported "
                              "(the consumer-surplus integral degenerates)");
    if (!(eps_row >= 0.0)) throw ValidationError("calibrate: ROW supply elasticity must be >= 0");

    MarketCalibration cal;
    cal.horizon = horizon;
    cal.p_star = p_star;
    cal.q_star = q_star;
    cal.s_ru_star = s_ru_star;
    cal.s_row_star = q_star - s_ru_star;
    cal.y = s_ru_star / q_star;
    cal.eps_d = eps_d;
    cal.eps_row = eps_row;
    cal.b_d = q_star / std::pow(p_star, eps_d);
    cal.b_row = cal.s_row_star / std::pow(p_star, eps_row);
    return cal;
}

}  // namespace oilcurb
