#include "oilcurb/runner.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "oilcurb/errors.hpp"

namespace oilcurb {

OutputFormat parse_format(const std::string& text) {
    if (text == "csv") return OutputFormat::Csv;
    if (text == "json") return OutputFormat::Json;
    throw ValidationError("unknown output format '" + text + "' (expected 'csv' or 'json')");
}

std::vector<double> parse_grid(const std::string& text) {
    auto parse_number = [&](const std::string& part) {
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
        if (ec != std::errc{} || ptr != part.data() + part.size() || !std::isfinite(value))
            throw ValidationError("bad grid value '" + part + "' in '" + text + "'");
        return value;
    };

    std::vector<double> grid;
    const auto first_colon = text.find(':');
    if (first_colon == std::string::npos) {
        grid.push_back(parse_number(text));
    } else {
        const auto second_colon = text.find(':', first_colon + 1);
        if (second_colon == std::string::npos)
            throw ValidationError("grid '" + text + "' must be 'start:stop:step' or one value");
        const double start = parse_number(text.substr(0, first_colon));
        const double stop = parse_number(text.substr(first_colon + 1, second_colon - first_colon - 1));
        const double step = parse_number(text.substr(second_colon + 1));
        if (!(step > 0.0) || stop < start)
            throw ValidationError("grid '" + text + "' needs stop >= start and step > 0");
        // Endpoints are inclusive within 1e-12.
        for (int i = 0;; ++i) {
            const double value = start + i * step;
            if (value > stop + 1e-12) break;
            grid.push_back(std::min(value, stop));
        }
    }
    for (double value : grid)
        if (!(value >= 0.0 && value < 1.0))
            throw ValidationError("grid '" + text + "' must lie within [0, 1)");
    return grid;
}

MarketCalibration make_calibration(const ScenarioConfig& config) {
    return calibrate(config.p_star, config.q_star, config.s_ru_star, config.horizon, config.eps_d,
                     config.eps_row);
}

std::vector<FieldRecord> resolve_fields(const ScenarioConfig& config) {
    if (!config.fields_path.empty()) return load_fields_file(config.fields_path);
    SyntheticSpec spec = config.synthetic;
    spec.total_capacity_mbd = config.s_ru_star;  // the curve must carry the calibrated exports
    return generate_synthetic_fields(spec, config.seed);
}

std::vector<RegionProfile> resolve_regions(const ScenarioConfig& config) {
    if (!config.regions_path.empty()) return load_regions_file(config.regions_path);
    return default_regions();
}

int resolve_thread_count(int flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("OILCURB_THREADS")) {
        const int parsed = std::atoi(env);
        if (parsed > 0) return parsed;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

namespace {

/// Runs fn(0..n-1) on `threads` workers. The first exception wins and is
/// rethrown on the caller thread after the pool joins.
template <typename Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
    const int workers = std::max(1, std::min<int>(threads, static_cast<int>(n)));
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(n);  // drain remaining work
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t) pool.emplace_back(work);
    for (std::thread& thread : pool) thread.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace

std::vector<PolicyOutcome> sweep_policy(const MarketCalibration& cal, const StepSupplyCurve& curve,
                                        PolicyKind policy, std::span<const double> grid,
                                        SolveMode mode, int threads) {
    std::vector<PolicyOutcome> outcomes(grid.size());
    parallel_for(grid.size(), threads, [&](std::size_t i) {
        outcomes[i] = policy == PolicyKind::QuantityRestriction
                          ? quantity_outcome(cal, curve, grid[i], mode)
                          : discount_outcome(cal, curve, grid[i], mode);
    });
    return outcomes;
}

std::vector<RegionTableRow> region_table(const ScenarioConfig& config, const MarketCalibration& cal,
                                         const StepSupplyCurve& curve, PolicyKind policy,
                                         std::span<const double> grid) {
    const std::vector<RegionProfile> regions = resolve_regions(config);
    std::vector<RegionTableRow> rows;
    rows.reserve(grid.size() * (regions.size() + 1));
    for (double extent : grid) {
        const PolicyOutcome outcome = policy == PolicyKind::QuantityRestriction
                                          ? quantity_outcome(cal, curve, extent, config.mode)
                                          : discount_outcome(cal, curve, extent, config.mode);
        for (const RegionImpact& impact :
             regional_breakdown(outcome.d_cs, regions, config.world_consumption_mbd)) {
            rows.push_back({policy, extent, impact.name, "consumer_surplus",
                            impact.d_cs_musd_per_day, impact.pct_of_gdp_per_year});
        }
        const RussiaImpact russia = russia_scale(outcome.d_profit_ru, config.russia);
        rows.push_back({policy, extent, "Russia", "profit", outcome.d_profit_ru,
                        russia.pct_of_gdp});
    }
    return rows;
}

BaselineReport baseline_report(const MarketCalibration& cal, const StepSupplyCurve& curve) {
    BaselineReport report;
    report.cal = cal;
    report.curve_total_capacity = curve.total_capacity();
    report.curve_min_mc = curve.min_marginal_cost();
    report.curve_max_mc = curve.max_marginal_cost();
    report.baseline_profit_musd_day =
        cal.p_star * cal.s_ru_star - curve.cost_integral(0.0, curve.total_capacity());
    return report;
}

// ---------------------------------------------------------------------------
// output

std::string format_double(double value) {
    char buf[40];
    const int len = std::snprintf(buf, sizeof buf, "%.12g", value);
    return std::string(buf, static_cast<std::size_t>(len));
}

namespace {

std::string csv_escape(const std::string& cell) {
    if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
    std::string quoted = "\"";
    for (char c : cell) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

using json = nlohmann::json;

json outcome_to_json(const PolicyOutcome& o) {
    return json{{"policy", to_string(o.policy)},
                {"mode", to_string(o.mode)},
                {"extent", o.extent},
                {"delta_p", o.delta_p},
                {"ds_ru", o.ds_ru},
                {"ds_row", o.ds_row},
                {"dq", o.dq},
                {"d_profit_ru", o.d_profit_ru},
                {"d_cs", o.d_cs},
                {"p_world", o.p_world},
                {"p_russia", o.p_russia},
                {"p_weighted", o.p_weighted}};
}

void require_finite(double value) {
    if (!std::isfinite(value)) throw SolverError("non-finite value reached the output stage");
}

}  // namespace

void write_outcomes(std::ostream& out, OutputFormat format, std::span<const PolicyOutcome> rows) {
    for (const PolicyOutcome& o : rows)
        for (double v : {o.extent, o.delta_p, o.ds_ru, o.ds_row, o.dq, o.d_profit_ru, o.d_cs,
                         o.p_world, o.p_russia, o.p_weighted})
            require_finite(v);

    if (format == OutputFormat::Json) {
        json doc = json::array();
        for (const PolicyOutcome& o : rows) doc.push_back(outcome_to_json(o));
        out << doc.dump(2) << '\n';
        return;
    }
    out << "extent,delta_p,ds_ru,ds_row,dq,d_profit_ru,d_cs,p_world,p_russia,p_weighted\n";
    for (const PolicyOutcome& o : rows) {
        out << format_double(o.extent) << ',' << format_double(o.delta_p) << ','
            << format_double(o.ds_ru) << ',' << format_double(o.ds_row) << ','
            << format_double(o.dq) << ',' << format_double(o.d_profit_ru) << ','
            << format_double(o.d_cs) << ',' << format_double(o.p_world) << ','
            << format_double(o.p_russia) << ',' << format_double(o.p_weighted) << '\n';
    }
}

void write_baseline(std::ostream& out, OutputFormat format, const BaselineReport& report) {
    const std::vector<std::pair<std::string, std::string>> entries = {
        {"horizon", to_string(report.cal.horizon)},
        {"p_star", format_double(report.cal.p_star)},
        {"q_star", format_double(report.cal.q_star)},
        {"s_ru_star", format_double(report.cal.s_ru_star)},
        {"s_row_star", format_double(report.cal.s_row_star)},
        {"y", format_double(report.cal.y)},
        {"eps_d", format_double(report.cal.eps_d)},
        {"eps_row", format_double(report.cal.eps_row)},
        {"b_d", format_double(report.cal.b_d)},
        {"b_row", format_double(report.cal.b_row)},
        {"curve_total_capacity", format_double(report.curve_total_capacity)},
        {"curve_min_mc", format_double(report.curve_min_mc)},
        {"curve_max_mc", format_double(report.curve_max_mc)},
        {"baseline_profit_musd_day", format_double(report.baseline_profit_musd_day)},
    };
    if (format == OutputFormat::Json) {
        json doc;
        doc["horizon"] = to_string(report.cal.horizon);
        doc["p_star"] = report.cal.p_star;
        doc["q_star"] = report.cal.q_star;
        doc["s_ru_star"] = report.cal.s_ru_star;
        doc["s_row_star"] = report.cal.s_row_star;
        doc["y"] = report.cal.y;
        doc["eps_d"] = report.cal.eps_d;
        doc["eps_row"] = report.cal.eps_row;
        doc["b_d"] = report.cal.b_d;
        doc["b_row"] = report.cal.b_row;
        doc["curve_total_capacity"] = report.curve_total_capacity;
        doc["curve_min_mc"] = report.curve_min_mc;
        doc["curve_max_mc"] = report.curve_max_mc;
        doc["baseline_profit_musd_day"] = report.baseline_profit_musd_day;
        out << doc.dump(2) << '\n';
        return;
    }
    out << "key,value\n";
    for (const auto& [key, value] : entries) out << key << ',' << value << '\n';
}

void write_regions(std::ostream& out, OutputFormat format, std::span<const RegionTableRow> rows) {
    for (const RegionTableRow& row : rows) {
        require_finite(row.musd_per_day);
        require_finite(row.pct_gdp_per_year);
    }
    if (format == OutputFormat::Json) {
        json doc = json::array();
        for (const RegionTableRow& row : rows)
            doc.push_back(json{{"policy", to_string(row.policy)},
                               {"extent", row.extent},
                               {"region", row.region},
                               {"metric", row.metric},
                               {"musd_per_day", row.musd_per_day},
                               {"pct_gdp_per_year", row.pct_gdp_per_year}});
        out << doc.dump(2) << '\n';
        return;
    }
    out << "policy,extent,region,metric,musd_per_day,pct_gdp_per_year\n";
    for (const RegionTableRow& row : rows) {
        out << to_string(row.policy) << ',' << format_double(row.extent) << ','
            << csv_escape(row.region) << ',' << row.metric << ','
            << format_double(row.musd_per_day) << ',' << format_double(row.pct_gdp_per_year)
            << '\n';
    }
}

void write_burden(std::ostream& out, OutputFormat format, std::span<const BurdenPoint> rows) {
    for (const BurdenPoint& row : rows) {
        require_finite(row.importer_surplus_musd_day);
        require_finite(row.russia_loss_musd_day);
    }
    if (format == OutputFormat::Json) {
        json doc = json::array();
        for (const BurdenPoint& row : rows)
            doc.push_back(json{{"policy", to_string(row.policy)},
                               {"extent", row.extent},
                               {"importer_surplus_musd_day", row.importer_surplus_musd_day},
                               {"importer_surplus_pct_world_gdp", row.importer_surplus_pct_world_gdp},
                               {"russia_loss_musd_day", row.russia_loss_musd_day},
                               {"russia_loss_pct_gdp", row.russia_loss_pct_gdp}});
        out << doc.dump(2) << '\n';
        return;
    }
    out << "policy,extent,importer_surplus_musd_day,importer_surplus_pct_world_gdp,"
           "russia_loss_musd_day,russia_loss_pct_gdp\n";
    for (const BurdenPoint& row : rows) {
        out << to_string(row.policy) << ',' << format_double(row.extent) << ','
            << format_double(row.importer_surplus_musd_day) << ','
            << format_double(row.importer_surplus_pct_world_gdp) << ','
            << format_double(row.russia_loss_musd_day) << ','
            << format_double(row.russia_loss_pct_gdp) << '\n';
    }
}

void write_indifference(std::ostream& out, OutputFormat format,
                        std::span<const IndifferencePoint> rows) {
    if (format == OutputFormat::Json) {
        json doc = json::array();
        for (const IndifferencePoint& row : rows)
            doc.push_back(json{{"alpha", row.alpha},
                               {"delta_equivalent", row.delta_equivalent},
                               {"saturated", row.saturated}});
        out << doc.dump(2) << '\n';
        return;
    }
    out << "alpha,delta_equivalent,saturated\n";
    for (const IndifferencePoint& row : rows) {
        out << format_double(row.alpha) << ',' << format_double(row.delta_equivalent) << ','
            << (row.saturated ? "true" : "false") << '\n';
    }
}

}  // namespace oilcurb
