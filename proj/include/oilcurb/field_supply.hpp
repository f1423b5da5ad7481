#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "oilcurb/horizon.hpp"

namespace oilcurb {

/// One oil field. Capacity is divisible: any fraction of it may produce at
/// the field's unit cost, which is what lets the market clear when demand
/// crosses a step of the supply curve.
struct FieldRecord {
    std::string id;
    double capacity_mbd = 0.0;    // production rate, million barrels/day
    double opex_usd_per_b = 0.0;  // operating cost per barrel
    double capex_usd_per_b = 0.0; // amortized investment cost per barrel
};

/// Unit cost of a barrel from `field` at the given horizon
/// (operating cost only in the short run, plus investment cost in the long run).
double marginal_cost(const FieldRecord& field, Horizon horizon);

struct SupplyStep {
    double mc;   // marginal cost, USD/b
    double cum;  // cumulative capacity at or below this cost, Mb/d
};

/// Step supply curve built from a field list, immutable after construction.
///
/// quantity_at_price is right-continuous: a field whose marginal cost equals
/// the price produces. Its generalized inverse marginal_cost_at_quantity is
/// nondecreasing, and cost_integral evaluates the exact step integral of
/// marginal cost over a capacity interval.
class StepSupplyCurve {
public:
    /// Capacity (Mb/d) of all fields with marginal cost <= price.
    double quantity_at_price(double price) const;

    /// Capacity with marginal cost strictly below price (left limit).
    double quantity_below_price(double price) const;

    /// Marginal cost of the step containing quantity q, q in [0, total].
    double marginal_cost_at_quantity(double quantity) const;

    /// Exact integral of marginal cost over [q0, q1], in million USD/day.
    double cost_integral(double q0, double q1) const;

    double total_capacity() const { return steps_.back().cum; }
    double min_marginal_cost() const { return steps_.front().mc; }
    double max_marginal_cost() const { return steps_.back().mc; }
    const std::vector<SupplyStep>& steps() const { return steps_; }

private:
    explicit StepSupplyCurve(std::vector<SupplyStep> steps) : steps_(std::move(steps)) {}
    friend StepSupplyCurve build_curve(std::span<const FieldRecord> fields, Horizon horizon);

    std::vector<SupplyStep> steps_;
};

/// Sorts fields by horizon-appropriate marginal cost, merges equal-cost
/// fields into one step and accumulates capacities.
StepSupplyCurve build_curve(std::span<const FieldRecord> fields, Horizon horizon);

/// Reads `field_id,capacity_mbd,opex_usd_per_b,capex_usd_per_b` rows.
/// Malformed rows are reported with their line number and column name.
std::vector<FieldRecord> load_fields(std::istream& in);
std::vector<FieldRecord> load_fields_file(const std::string& path);

/// Writes the same format load_fields reads, with round-trip-exact numbers.
void save_fields(std::ostream& out, std::span<const FieldRecord> fields);

/// Shape parameters and calibration targets for the synthetic field set.
///
/// Costs follow a convex ladder over cumulative capacity: cheap, large fields
/// first, then increasingly expensive, smaller ones. The ladder exponents are
/// solved so that the mean marginal cost of the costliest `tail_fraction` of
/// capacity and the maximum marginal cost hit the targets below, at both
/// horizons.
struct SyntheticSpec {
    double total_capacity_mbd = 7.5;
    int field_count = 300;
    double opex_floor = 5.0;          // cheapest operating cost, USD/b
    double capex_floor = 3.0;         // cheapest investment cost, USD/b
    double tail_fraction = 0.2;       // costly-tail share of capacity
    double short_run_tail_mean = 11.0;  // target mean MC of the tail, OPEX only
    double long_run_tail_mean = 23.0;   // target mean MC of the tail, OPEX+CAPEX
    double short_run_max_mc = 25.0;
    double long_run_max_mc = 55.0;
    double capacity_spread = 0.6;     // lognormal sigma of field sizes
    double cost_jitter = 0.02;        // relative scatter around the ladder
};

/// Deterministic for a fixed seed; total capacity matches the spec exactly.
/// Throws ValidationError when the targets are infeasible (e.g. a tail mean
/// outside the floor/max range).
std::vector<FieldRecord> generate_synthetic_fields(const SyntheticSpec& spec, std::uint64_t seed);

}  // namespace oilcurb
