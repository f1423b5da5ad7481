#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "oilcurb/runner.hpp"

namespace {

using namespace oilcurb;

std::ofstream open_output(const std::string& dir, const std::string& name, OutputFormat format) {
    std::filesystem::path path(dir);
    std::error_code ec;
    std::filesystem::create_directories(path, ec);
    if (ec) throw IoError("cannot create output directory '" + dir + "': " + ec.message());
    path /= name + (format == OutputFormat::Csv ? ".csv" : ".json");
    std::ofstream out(path);
    if (!out) throw IoError("cannot open output file '" + path.string() + "'");
    std::cout << "writing " << path.string() << '\n';
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"oilcurb - partial-equilibrium simulator of quantity restrictions and price "
                 "discounts on Russian oil exports"};
    app.fallthrough();
    app.set_config("--config", "", "Config file (INI; sections name subcommands)");
    app.require_subcommand(1);

    ScenarioConfig config;
    std::string horizon_str = "short";
    std::string mode_str = "approx";
    std::string format_str = "csv";
    double russia_gdp = config.russia.gdp_usd;
    double russia_military = config.russia.military_spend_usd;

    app.add_option("--p-star", config.p_star, "Baseline world oil price, USD/b");
    app.add_option("--q-star", config.q_star, "Baseline world demand, Mb/d");
    app.add_option("--s-ru-star", config.s_ru_star, "Baseline Russian exports, Mb/d");
    app.add_option("--horizon", horizon_str, "Analysis horizon: short|long");
    app.add_option("--eps-d", config.eps_d, "Demand elasticity override");
    app.add_option("--eps-row", config.eps_row, "ROW supply elasticity override");
    app.add_option("--mode", mode_str, "Solver: approx|exact");
    app.add_option("--fields", config.fields_path, "Field data CSV (default: synthetic)");
    app.add_option("--seed", config.seed, "Seed for the synthetic field generator");
    app.add_option("--field-count", config.synthetic.field_count, "Synthetic field count");
    app.add_option("--regions", config.regions_path, "Region data CSV (default: bundled)");
    app.add_option("--world-consumption", config.world_consumption_mbd,
                   "World oil consumption for regional shares, Mb/d");
    app.add_option("--world-gdp", config.world_gdp_usd, "World GDP, USD/year");
    app.add_option("--russia-gdp", russia_gdp, "Russian GDP, USD/year");
    app.add_option("--russia-military", russia_military, "Russian military spending, USD/year");
    app.add_option("--out", config.output_dir, "Output directory");
    app.add_option("--format", format_str, "Output format: csv|json");
    app.add_option("--threads", config.threads, "Worker threads (0 = OILCURB_THREADS or hardware)");

    CLI::App* cmd_baseline = app.add_subcommand("baseline", "Calibration and supply-curve report");

    CLI::App* cmd_quantity = app.add_subcommand("quantity", "Quantity-restriction sweep");
    std::string alpha_grid = "0:0.7:0.01";
    cmd_quantity->add_option("--alpha-grid", alpha_grid, "Extent grid start:stop:step");
    cmd_quantity->add_option("--alpha", alpha_grid, "Single restriction extent")
        ->excludes("--alpha-grid");

    CLI::App* cmd_discount = app.add_subcommand("discount", "Price-discount sweep");
    std::string delta_grid = "0:0.95:0.01";
    cmd_discount->add_option("--delta-grid", delta_grid, "Extent grid start:stop:step");
    cmd_discount->add_option("--delta", delta_grid, "Single discount extent")
        ->excludes("--delta-grid");

    CLI::App* cmd_regions = app.add_subcommand("regions", "Regional welfare table");
    std::string regions_policy = "quantity";
    std::string extent_grid = "0.1:0.7:0.2";
    cmd_regions->add_option("--policy", regions_policy, "quantity|discount");
    cmd_regions->add_option("--extent-grid", extent_grid, "Extent grid start:stop:step");

    CLI::App* cmd_compare = app.add_subcommand("compare", "Burden frontier for both policies");
    std::string compare_grid = "0:0.9:0.01";
    cmd_compare->add_option("--grid", compare_grid, "Extent grid start:stop:step");

    CLI::App* cmd_indiff = app.add_subcommand("indifference", "Russia's policy indifference curve");
    std::string indiff_grid = "0:0.8:0.01";
    cmd_indiff->add_option("--alpha-grid", indiff_grid, "Restriction grid start:stop:step");

    CLI::App* cmd_gen = app.add_subcommand("gen-fields", "Write a synthetic field data file");
    std::string gen_out = "fields.csv";
    cmd_gen->add_option("--out-file", gen_out, "Destination path");
    cmd_gen->add_option("--total-capacity", config.synthetic.total_capacity_mbd,
                        "Total capacity of the generated set, Mb/d");

    try {
        app.parse(argc, argv);

        config.horizon = parse_horizon(horizon_str);
        config.mode = parse_mode(mode_str);
        config.format = parse_format(format_str);
        config.russia = RussiaScale{russia_gdp, russia_military};

        if (cmd_gen->parsed()) {
            const auto fields = generate_synthetic_fields(config.synthetic, config.seed);
            std::ofstream out(gen_out);
            if (!out) throw IoError("cannot open output file '" + gen_out + "'");
            save_fields(out, fields);
            std::cout << "wrote " << fields.size() << " fields to " << gen_out << '\n';
            return 0;
        }

        const MarketCalibration cal = make_calibration(config);
        const std::vector<FieldRecord> fields = resolve_fields(config);
        const StepSupplyCurve curve = build_curve(fields, config.horizon);
        const int threads = resolve_thread_count(config.threads);

        if (cmd_baseline->parsed()) {
            auto out = open_output(config.output_dir, "baseline", config.format);
            write_baseline(out, config.format, baseline_report(cal, curve));
        } else if (cmd_quantity->parsed()) {
            const auto grid = parse_grid(alpha_grid);
            const auto rows =
                sweep_policy(cal, curve, PolicyKind::QuantityRestriction, grid, config.mode, threads);
            auto out = open_output(config.output_dir, "quantity", config.format);
            write_outcomes(out, config.format, rows);
        } else if (cmd_discount->parsed()) {
            const auto grid = parse_grid(delta_grid);
            const auto rows =
                sweep_policy(cal, curve, PolicyKind::PriceDiscount, grid, config.mode, threads);
            auto out = open_output(config.output_dir, "discount", config.format);
            write_outcomes(out, config.format, rows);
        } else if (cmd_regions->parsed()) {
            const PolicyKind policy = regions_policy == "quantity"
                                          ? PolicyKind::QuantityRestriction
                                          : (regions_policy == "discount"
                                                 ? PolicyKind::PriceDiscount
                                                 : throw ValidationError("--policy must be "
                                                                         "'quantity' or 'discount'"));
            const auto grid = parse_grid(extent_grid);
            const auto rows = region_table(config, cal, curve, policy, grid);
            auto out = open_output(config.output_dir, "regions", config.format);
            write_regions(out, config.format, rows);
        } else if (cmd_compare->parsed()) {
            const auto grid = parse_grid(compare_grid);
            std::vector<BurdenPoint> rows =
                burden_frontier(cal, curve, grid, PolicyKind::QuantityRestriction, config.mode,
                                config.world_gdp_usd, config.russia.gdp_usd);
            const std::vector<BurdenPoint> discount_rows =
                burden_frontier(cal, curve, grid, PolicyKind::PriceDiscount, config.mode,
                                config.world_gdp_usd, config.russia.gdp_usd);
            rows.insert(rows.end(), discount_rows.begin(), discount_rows.end());
            auto out = open_output(config.output_dir, "compare", config.format);
            write_burden(out, config.format, rows);
        } else if (cmd_indiff->parsed()) {
            const auto grid = parse_grid(indiff_grid);
            const auto rows = indifference_curve(cal, curve, grid, config.mode);
            auto out = open_output(config.output_dir, "indifference", config.format);
            write_indifference(out, config.format, rows);
        }
        return 0;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ValidationError& e) {
        std::cerr << "oilcurb: invalid input: " << e.what() << '\n';
        return 2;
    } catch (const SolverError& e) {
        std::cerr << "oilcurb: solver error: " << e.what() << '\n';
        return 3;
    } catch (const IoError& e) {
        std::cerr << "oilcurb: I/O error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "oilcurb: error: " << e.what() << '\n';
        return 1;
    }
}
