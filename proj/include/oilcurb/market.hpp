#pragma once

#include <optional>

#include "oilcurb/horizon.hpp"

namespace oilcurb {

/// Constant-elasticity exponents for world demand and rest-of-world supply.
struct ElasticityPair {
    double demand;      // < 0
    double row_supply;  // >= 0
};

ElasticityPair preset_elasticities(Horizon horizon);

/// Baseline state of the world oil market with implied power-law constants.
/// Immutable; demand and row_supply are pure and safe to call concurrently.
///
/// Units: prices USD/b, quantities Mb/d, money flows million USD/day.
struct MarketCalibration {
    Horizon horizon = Horizon::ShortRun;
    double p_star = 0.0;     // baseline world oil price
    double q_star = 0.0;     // world demand
    double s_ru_star = 0.0;  // Russian export supply
    double s_row_star = 0.0; // rest-of-world supply (incl. Russian domestic)
    double y = 0.0;          // Russian share of world supply
    double eps_d = 0.0;      // demand elasticity
    double eps_row = 0.0;    // ROW supply elasticity
    double b_d = 0.0;        // demand constant: demand(p) = b_d * p^eps_d
    double b_row = 0.0;      // ROW constant: row_supply(p) = b_row * p^eps_row

    double demand(double price) const;
    double row_supply(double price) const;
};

/// Computes the power-law constants so that demand(p_star) = q_star and
/// row_supply(p_star) = q_star - s_ru_star exactly. Elasticities come from
/// the horizon presets unless overridden.
MarketCalibration calibrate(double p_star, double q_star, double s_ru_star, Horizon horizon,
                            std::optional<double> eps_d_override = std::nullopt,
                            std::optional<double> eps_row_override = std::nullopt);

}  // namespace oilcurb
