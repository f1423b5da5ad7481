#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "oilcurb/market.hpp"

namespace oilcurb {

inline constexpr double kDaysPerYear = 365.0;

/// World totals used to normalize welfare changes. 2021 values.
inline constexpr double kDefaultWorldOilConsumptionMbd = 94.09;
inline constexpr double kDefaultWorldGdpUsd = 9.688e13;

/// A consuming economy; GDP in USD/year (2021), consumption in Mb/d.
struct RegionProfile {
    std::string name;
    double gdp_usd = 0.0;
    double oil_consumption_mbd = 0.0;
};

struct RegionImpact {
    std::string name;
    double d_cs_musd_per_day = 0.0;
    double pct_of_gdp_per_year = 0.0;  // signed percentage
};

struct RussiaScale {
    double gdp_usd = 0.0;            // per year
    double military_spend_usd = 0.0; // per year
};

struct RussiaImpact {
    double pct_of_gdp = 0.0;
    double pct_of_military_spend = 0.0;
};

/// Consumer-surplus change for a pure price move p* -> p* + delta_p:
/// -B_D/(eps_d+1) [(p*+dp)^{eps_d+1} - p*^{eps_d+1}], million USD/day.
double cs_change_quantity(const MarketCalibration& cal, double delta_p);

/// Consumer-surplus change under a discount: the price term above plus the
/// rebate delta * s_ru_after * (p* + delta_p), assuming every buyer gets a
/// proportional share of the discounted oil.
double cs_change_discount(const MarketCalibration& cal, double delta, double delta_p,
                          double s_ru_after);

/// Apportions a global surplus change across regions by oil-consumption
/// share and scales to percent of regional GDP per year.
std::vector<RegionImpact> regional_breakdown(double global_cs_musd_per_day,
                                             std::span<const RegionProfile> regions,
                                             double world_consumption_mbd);

/// Profit change as share of Russian GDP and military spending.
RussiaImpact russia_scale(double d_profit_musd_per_day, const RussiaScale& scale);

/// Reads `region,gdp_usd,oil_consumption_mbd` rows.
std::vector<RegionProfile> load_regions(std::istream& in);
std::vector<RegionProfile> load_regions_file(const std::string& path);

/// EU, US, India, China with 2021 GDP and oil consumption; mirrors the
/// bundled data/regions_2021.csv.
const std::vector<RegionProfile>& default_regions();

RussiaScale default_russia_scale();

}  // namespace oilcurb
