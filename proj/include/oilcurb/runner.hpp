#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "oilcurb/compare.hpp"
#include "oilcurb/field_supply.hpp"
#include "oilcurb/policy.hpp"
#include "oilcurb/welfare.hpp"

namespace oilcurb {

enum class OutputFormat { Csv, Json };

OutputFormat parse_format(const std::string& text);

/// Fully resolved scenario: calibration, field source, welfare data and run
/// options. Defaults reproduce the short-run baseline with synthetic fields.
struct ScenarioConfig {
    // calibration
    double p_star = 101.33;
    double q_star = 99.0;
    double s_ru_star = 7.5;
    Horizon horizon = Horizon::ShortRun;
    std::optional<double> eps_d;    // elasticity overrides
    std::optional<double> eps_row;

    // field data: a file path, or the synthetic generator when empty
    std::string fields_path;
    SyntheticSpec synthetic;
    std::uint64_t seed = 42;

    // welfare data
    std::string regions_path;  // empty -> bundled defaults
    double world_consumption_mbd = kDefaultWorldOilConsumptionMbd;
    double world_gdp_usd = kDefaultWorldGdpUsd;
    RussiaScale russia = default_russia_scale();

    // run options
    SolveMode mode = SolveMode::PaperApprox;
    OutputFormat format = OutputFormat::Csv;
    std::string output_dir = ".";
    int threads = 0;  // 0 -> OILCURB_THREADS env var, then hardware concurrency
};

/// Parses "start:stop:step" (endpoints inclusive within 1e-12) or a single
/// number into a grid of policy extents in [0, 1).
std::vector<double> parse_grid(const std::string& text);

MarketCalibration make_calibration(const ScenarioConfig& config);
std::vector<FieldRecord> resolve_fields(const ScenarioConfig& config);
std::vector<RegionProfile> resolve_regions(const ScenarioConfig& config);

/// Worker count: explicit flag, then OILCURB_THREADS, then hardware.
int resolve_thread_count(int flag_value);

/// Evaluates one policy outcome per grid point on a worker pool; results are
/// returned in grid order regardless of scheduling.
std::vector<PolicyOutcome> sweep_policy(const MarketCalibration& cal, const StepSupplyCurve& curve,
                                        PolicyKind policy, std::span<const double> grid,
                                        SolveMode mode, int threads);

struct RegionTableRow {
    PolicyKind policy;
    double extent;
    std::string region;
    std::string metric;  // "consumer_surplus" or "profit"
    double musd_per_day;
    double pct_gdp_per_year;
};

std::vector<RegionTableRow> region_table(const ScenarioConfig& config, const MarketCalibration& cal,
                                         const StepSupplyCurve& curve, PolicyKind policy,
                                         std::span<const double> grid);

struct BaselineReport {
    MarketCalibration cal;
    double curve_total_capacity;
    double curve_min_mc;
    double curve_max_mc;
    double baseline_profit_musd_day;  // p* S* minus total extraction cost
};

BaselineReport baseline_report(const MarketCalibration& cal, const StepSupplyCurve& curve);

// Writers. Schemas are stable: columns are never reordered and every cell is
// finite (solver failures throw before anything is written).
void write_outcomes(std::ostream& out, OutputFormat format, std::span<const PolicyOutcome> rows);
void write_baseline(std::ostream& out, OutputFormat format, const BaselineReport& report);
void write_regions(std::ostream& out, OutputFormat format, std::span<const RegionTableRow> rows);
void write_burden(std::ostream& out, OutputFormat format, std::span<const BurdenPoint> rows);
void write_indifference(std::ostream& out, OutputFormat format,
                        std::span<const IndifferencePoint> rows);

/// Shortest representation that round-trips a double, locale-independent.
std::string format_double(double value);

}  // namespace oilcurb
