#include "oilcurb/field_supply.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include "oilcurb/errors.hpp"

namespace oilcurb {

double marginal_cost(const FieldRecord& field, Horizon horizon) {
    return horizon == Horizon::ShortRun ? field.opex_usd_per_b
                                        : field.opex_usd_per_b + field.capex_usd_per_b;
}

namespace {

void validate_field(const FieldRecord& field, const std::string& where) {
    if (!(std::isfinite(field.capacity_mbd) && field.capacity_mbd > 0.0))
        throw ValidationError(where + ": capacity must be finite and > 0");
    if (!(std::isfinite(field.opex_usd_per_b) && field.opex_usd_per_b >= 0.0))
        throw ValidationError(where + ": opex must be finite and >= 0");
    if (!(std::isfinite(field.capex_usd_per_b) && field.capex_usd_per_b >= 0.0))
        throw ValidationError(where + ": capex must be finite and >= 0");
}

}  // namespace

StepSupplyCurve build_curve(std::span<const FieldRecord> fields, Horizon horizon) {
    if (fields.empty()) throw ValidationError("build_curve: empty field list");
    std::vector<std::pair<double, double>> ranked;  // (mc, capacity)
    ranked.reserve(fields.size());
    for (const FieldRecord& field : fields) {
        validate_field(field, "field '" + field.id + "'");
        ranked.emplace_back(marginal_cost(field, horizon), field.capacity_mbd);
    }
    std::sort(ranked.begin(), ranked.end());

    std::vector<SupplyStep> steps;
    steps.reserve(ranked.size());
    double cum = 0.0;
    for (const auto& [mc, capacity] : ranked) {
        cum += capacity;
        if (!steps.empty() && steps.back().mc == mc) {
            steps.back().cum = cum;  // merge equal-cost fields into one step
        } else {
            steps.push_back({mc, cum});
        }
    }
    return StepSupplyCurve(std::move(steps));
}

double StepSupplyCurve::quantity_at_price(double price) const {
    if (!(price >= 0.0)) throw ValidationError("quantity_at_price: price must be >= 0");
    auto it = std::upper_bound(steps_.begin(), steps_.end(), price,
                               [](double p, const SupplyStep& s) { return p < s.mc; });
    return it == steps_.begin() ? 0.0 : std::prev(it)->cum;
}

double StepSupplyCurve::quantity_below_price(double price) const {
    auto it = std::lower_bound(steps_.begin(), steps_.end(), price,
                               [](const SupplyStep& s, double p) { return s.mc < p; });
    return it == steps_.begin() ? 0.0 : std::prev(it)->cum;
}

double StepSupplyCurve::marginal_cost_at_quantity(double quantity) const {
    const double total = total_capacity();
    if (!(quantity >= 0.0) || quantity > total * (1.0 + 1e-12))
        throw ValidationError("marginal_cost_at_quantity: quantity outside [0, total]");
    auto it = std::lower_bound(steps_.begin(), steps_.end(), quantity,
                               [](const SupplyStep& s, double q) { return s.cum < q; });
    return it == steps_.end() ? steps_.back().mc : it->mc;
}

double StepSupplyCurve::cost_integral(double q0, double q1) const {
    const double total = total_capacity();
    const double slack = total * 1e-12;
    if (!(q0 >= -slack) || q1 > total + slack)
        throw ValidationError("cost_integral: bounds outside [0, total]");
    if (q0 > q1) throw ValidationError("cost_integral: q0 must be <= q1");
    q0 = std::clamp(q0, 0.0, total);
    q1 = std::clamp(q1, 0.0, total);

    double sum = 0.0;
    double prev = 0.0;
    for (const SupplyStep& step : steps_) {
        if (prev >= q1) break;
        const double lo = std::max(prev, q0);
        const double hi = std::min(step.cum, q1);
        if (hi > lo) sum += step.mc * (hi - lo);
        prev = step.cum;
    }
    return sum;  // Mb/d x USD/b = million USD/day
}

// ---------------------------------------------------------------------------
// file format

namespace {

constexpr const char* kFieldHeader = "field_id,capacity_mbd,opex_usd_per_b,capex_usd_per_b";
constexpr const char* kFieldColumns[] = {"field_id", "capacity_mbd", "opex_usd_per_b",
                                         "capex_usd_per_b"};

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

double parse_cell(const std::string& cell, int line_no, const char* column) {
    double value = 0.0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || !std::isfinite(value))
        throw ValidationError("row " + std::to_string(line_no) + ", column " + column +
                              ": not a finite number: '" + cell + "'");
    return value;
}

}  // namespace

std::vector<FieldRecord> load_fields(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("empty field file");
    if (strip_cr(line) != kFieldHeader)
        throw ValidationError(std::string("bad field file header, expected '") + kFieldHeader +
                              "'");

    std::vector<FieldRecord> fields;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        const auto cells = split_csv(line);
        if (cells.size() != 4)
            throw ValidationError("row " + std::to_string(line_no) + ": expected 4 columns, got " +
                                  std::to_string(cells.size()));
        FieldRecord field;
        field.id = cells[0];
        if (field.id.empty())
            throw ValidationError("row " + std::to_string(line_no) + ", column field_id: empty");
        field.capacity_mbd = parse_cell(cells[1], line_no, kFieldColumns[1]);
        field.opex_usd_per_b = parse_cell(cells[2], line_no, kFieldColumns[2]);
        field.capex_usd_per_b = parse_cell(cells[3], line_no, kFieldColumns[3]);
        if (field.capacity_mbd <= 0.0)
            throw ValidationError("row " + std::to_string(line_no) +
                                  ", column capacity_mbd: must be > 0");
        if (field.opex_usd_per_b < 0.0 || field.capex_usd_per_b < 0.0)
            throw ValidationError("row " + std::to_string(line_no) + ": costs must be >= 0");
        fields.push_back(std::move(field));
    }
    if (fields.empty()) throw ValidationError("no field records");
    return fields;
}

std::vector<FieldRecord> load_fields_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open field file: " + path);
    return load_fields(in);
}

void save_fields(std::ostream& out, std::span<const FieldRecord> fields) {
    out << kFieldHeader << '\n';
    char buf[96];
    for (const FieldRecord& field : fields) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g", field.capacity_mbd,
                      field.opex_usd_per_b, field.capex_usd_per_b);
        out << field.id << ',' << buf << '\n';
    }
}

// ---------------------------------------------------------------------------
// synthetic generator

namespace {

// Fixed transforms over the mt19937_64 bit stream keep the output identical
// across standard libraries.
double uniform01(std::mt19937_64& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

double standard_normal(std::mt19937_64& eng) {
    const double u1 = std::max(uniform01(eng), 1e-300);
    const double u2 = uniform01(eng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

// Mean of floor + (ceiling - floor) x^k over the top `tail` share of [0, 1].
double ladder_tail_mean(double floor, double ceiling, double k, double tail) {
    const double e = (1.0 - std::pow(1.0 - tail, k + 1.0)) / (tail * (k + 1.0));
    return floor + (ceiling - floor) * e;
}

// Exponent k for which the ladder's tail mean hits the target. The mean is
// strictly decreasing in k from `ceiling` (k=0) to `floor` (k->inf).
double solve_tail_exponent(double floor, double ceiling, double tail, double target) {
    double lo = 0.0;
    double hi = 1.0;
    while (ladder_tail_mean(floor, ceiling, hi, tail) > target) {
        hi *= 2.0;
        if (hi > 1e9) throw SolverError("tail-exponent bracket exhausted");
    }
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (ladder_tail_mean(floor, ceiling, mid, tail) > target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// Average ladder value over the cumulative-capacity interval [a, b].
double ladder_average(double floor, double ceiling, double k, double a, double b) {
    auto antiderivative = [&](double x) {
        return floor * x + (ceiling - floor) * std::pow(x, k + 1.0) / (k + 1.0);
    };
    return (antiderivative(b) - antiderivative(a)) / (b - a);
}

void check_targets(const SyntheticSpec& spec, std::span<const FieldRecord> fields) {
    const auto verify = [&](Horizon horizon, double tail_mean_target, double max_target) {
        const StepSupplyCurve curve = build_curve(fields, horizon);
        const double total = curve.total_capacity();
        const double mean =
            curve.cost_integral((1.0 - spec.tail_fraction) * total, total) /
            (spec.tail_fraction * total);
        if (std::abs(mean - tail_mean_target) > 0.2 * tail_mean_target)
            throw SolverError("synthetic calibration missed the tail-mean target");
        if (std::abs(curve.max_marginal_cost() - max_target) > 1e-9)
            throw SolverError("synthetic calibration missed the max-cost target");
    };
    verify(Horizon::ShortRun, spec.short_run_tail_mean, spec.short_run_max_mc);
    verify(Horizon::LongRun, spec.long_run_tail_mean, spec.long_run_max_mc);
}

}  // namespace

std::vector<FieldRecord> generate_synthetic_fields(const SyntheticSpec& spec, std::uint64_t seed) {
    if (!(spec.total_capacity_mbd > 0.0)) throw ValidationError("synthetic: total capacity must be > 0");
    if (spec.field_count < 1) throw ValidationError("synthetic: field count must be >= 1");
    if (!(spec.tail_fraction > 0.0 && spec.tail_fraction < 1.0))
        throw ValidationError("synthetic: tail fraction must be in (0, 1)");
    if (spec.opex_floor < 0.0 || spec.capex_floor < 0.0)
        throw ValidationError("synthetic: cost floors must be >= 0");
    if (!(spec.cost_jitter >= 0.0 && spec.cost_jitter < 0.5))
        throw ValidationError("synthetic: cost jitter must be in [0, 0.5)");
    if (!(spec.capacity_spread >= 0.0)) throw ValidationError("synthetic: capacity spread must be >= 0");

    // Feasibility of the calibration targets.
    const double capex_ceiling = spec.long_run_max_mc - spec.short_run_max_mc;
    const double capex_tail_mean = spec.long_run_tail_mean - spec.short_run_tail_mean;
    if (!(spec.opex_floor < spec.short_run_tail_mean && spec.short_run_tail_mean < spec.short_run_max_mc))
        throw ValidationError("synthetic calibration infeasible: short-run tail mean must lie "
                              "between the opex floor and the short-run max");
    if (!(capex_ceiling > 0.0))
        throw ValidationError("synthetic calibration infeasible: long-run max must exceed short-run max");
    if (!(spec.capex_floor < capex_tail_mean && capex_tail_mean < capex_ceiling))
        throw ValidationError("synthetic calibration infeasible: long-run tail mean out of range");

    const double k_opex = solve_tail_exponent(spec.opex_floor, spec.short_run_max_mc,
                                              spec.tail_fraction, spec.short_run_tail_mean);
    const double k_capex =
        solve_tail_exponent(spec.capex_floor, capex_ceiling, spec.tail_fraction, capex_tail_mean);

    std::mt19937_64 eng(seed);
    const int n = spec.field_count;

    // Field sizes: lognormal weights sorted descending, so the cheap end of
    // the ladder is held by a few giant fields and the costly tail by many
    // small ones. That keeps the step spacing near the top of the curve fine
    // enough for smooth dropout under a price discount.
    std::vector<double> weights(n);
    for (double& w : weights) w = std::exp(spec.capacity_spread * standard_normal(eng));
    std::sort(weights.begin(), weights.end(), std::greater<>());
    const double weight_sum = std::accumulate(weights.begin(), weights.end(), 0.0);

    std::vector<FieldRecord> fields(n);
    const int id_width = std::clamp(static_cast<int>(std::to_string(n).size()), 3, 9);
    double assigned = 0.0;
    double cum_fraction = 0.0;
    for (int i = 0; i < n; ++i) {
        FieldRecord& field = fields[i];
        char id[32];
        std::snprintf(id, sizeof id, "F%0*d", id_width, i + 1);
        field.id = id;

        double capacity = spec.total_capacity_mbd * weights[i] / weight_sum;
        if (i == n - 1) capacity = spec.total_capacity_mbd - assigned;  // exact total
        assigned += capacity;

        const double a = cum_fraction;
        const double b = std::min(1.0, cum_fraction + capacity / spec.total_capacity_mbd);
        cum_fraction = b;

        double opex = ladder_average(spec.opex_floor, spec.short_run_max_mc, k_opex, a, b);
        double capex = ladder_average(spec.capex_floor, capex_ceiling, k_capex, a, b);
        opex *= 1.0 + spec.cost_jitter * (2.0 * uniform01(eng) - 1.0);
        capex *= 1.0 + spec.cost_jitter * (2.0 * uniform01(eng) - 1.0);
        field.opex_usd_per_b = std::min(opex, spec.short_run_max_mc);
        field.capex_usd_per_b = std::min(capex, spec.long_run_max_mc - field.opex_usd_per_b);
    }
    // The costliest field carries the curve maxima exactly.
    fields.back().opex_usd_per_b = spec.short_run_max_mc;
    fields.back().capex_usd_per_b = capex_ceiling;

    check_targets(spec, fields);
    return fields;
}

}  // namespace oilcurb
