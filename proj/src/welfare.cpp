#include "oilcurb/welfare.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "oilcurb/errors.hpp"

namespace oilcurb {

double cs_change_quantity(const MarketCalibration& cal, double delta_p) {
    const double p1 = cal.p_star + delta_p;
    if (!(p1 > 0.0)) throw ValidationError("cs_change_quantity: post-change price must be > 0");
    const double e1 = cal.eps_d + 1.0;
    return -cal.b_d / e1 * (std::pow(p1, e1) - std::pow(cal.p_star, e1));
}

double cs_change_discount(const MarketCalibration& cal, double delta, double delta_p,
                          double s_ru_after) {
    if (s_ru_after < -1e-9) throw ValidationError("cs_change_discount: s_ru_after must be >= 0");
    const double rebate = delta * std::max(s_ru_after, 0.0) * (cal.p_star + delta_p);
    return cs_change_quantity(cal, delta_p) + rebate;
}

std::vector<RegionImpact> regional_breakdown(double global_cs_musd_per_day,
                                             std::span<const RegionProfile> regions,
                                             double world_consumption_mbd) {
    if (!(world_consumption_mbd > 0.0))
        throw ValidationError("regional_breakdown: world consumption must be > 0");
    std::vector<RegionImpact> impacts;
    impacts.reserve(regions.size());
    for (const RegionProfile& region : regions) {
        if (!(region.gdp_usd > 0.0))
            throw ValidationError("region '" + region.name + "': GDP must be > 0");
        if (!(region.oil_consumption_mbd > 0.0 &&
              region.oil_consumption_mbd <= world_consumption_mbd))
            throw ValidationError("region '" + region.name +
                                  "': consumption must be in (0, world consumption]");
        RegionImpact impact;
        impact.name = region.name;
        impact.d_cs_musd_per_day =
            global_cs_musd_per_day * region.oil_consumption_mbd / world_consumption_mbd;
        impact.pct_of_gdp_per_year =
            impact.d_cs_musd_per_day * 1e6 * kDaysPerYear / region.gdp_usd * 100.0;
        impacts.push_back(std::move(impact));
    }
    return impacts;
}

RussiaImpact russia_scale(double d_profit_musd_per_day, const RussiaScale& scale) {
    if (!(scale.gdp_usd > 0.0 && scale.military_spend_usd > 0.0))
        throw ValidationError("russia_scale: GDP and military spending must be > 0");
    const double per_year_usd = d_profit_musd_per_day * 1e6 * kDaysPerYear;
    return {per_year_usd / scale.gdp_usd * 100.0, per_year_usd / scale.military_spend_usd * 100.0};
}

namespace {

constexpr const char* kRegionHeader = "region,gdp_usd,oil_consumption_mbd";

double parse_region_cell(const std::string& cell, int line_no, const char* column) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc{} || ptr != cell.data() + cell.size() || !std::isfinite(value))
        throw ValidationError("row " + std::to_string(line_no) + ", column " + column +
                              ": not a finite number: '" + cell + "'");
    return value;
}

}  // namespace

std::vector<RegionProfile> load_regions(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("empty region file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kRegionHeader)
        throw ValidationError(std::string("bad region file header, expected '") + kRegionHeader +
                              "'");
    std::vector<RegionProfile> regions;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string name, gdp, consumption;
        if (!std::getline(ss, name, ',') || !std::getline(ss, gdp, ',') ||
            !std::getline(ss, consumption))
            throw ValidationError("row " + std::to_string(line_no) + ": expected 3 columns");
        RegionProfile region;
        region.name = name;
        region.gdp_usd = parse_region_cell(gdp, line_no, "gdp_usd");
        region.oil_consumption_mbd = parse_region_cell(consumption, line_no, "oil_consumption_mbd");
        if (region.gdp_usd <= 0.0 || region.oil_consumption_mbd <= 0.0)
            throw ValidationError("row " + std::to_string(line_no) + ": values must be > 0");
        regions.push_back(std::move(region));
    }
    if (regions.empty()) throw ValidationError("no region records");
    return regions;
}

std::vector<RegionProfile> load_regions_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open region file: " + path);
    return load_regions(in);
}

const std::vector<RegionProfile>& default_regions() {
    // World Bank GDP (current USD, 2021) and oil consumption for 2021.
    static const std::vector<RegionProfile> regions = {
        {"EU", 1.718e13, 10.48},
        {"US", 2.332e13, 18.68},
        {"India", 3.18e12, 4.88},
        {"China", 1.773e13, 15.44},
    };
    return regions;
}

RussiaScale default_russia_scale() {
    return {1.787e12, 65.3e9};  // pre-war GDP and military spending, USD/year
}

}  // namespace oilcurb
