#include "cli_app.hpp"

#include "esc/errors.hpp"
#include "esc/io.hpp"
#include "esc/scenario.hpp"
#include "esc/standard.hpp"
#include "esc/units.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <optional>
#include <string>

namespace esc::cli {

namespace {

EnergyMatrix load_matrix(const std::string& matrix_path, const std::string& series_path) {
    auto specs = io::load_matrix_config(matrix_path);
    auto series = io::load_series(series_path);
    return {std::move(specs), std::move(series)};
}

void cmd_compute(const std::string& matrix_path, const std::string& series_path,
                 const std::string& at) {
    const EnergyMatrix matrix = load_matrix(matrix_path, series_path);
    const MonetarySnapshot snap = money_supply(matrix, parse_timestamp(at));
    std::cout << io::snapshot_to_json(snap) << '\n';
    std::cerr << "M = " << io::render_number(snap.money.amu) << " " << money_unit_tag
              << ", A_total = " << io::render_number(snap.abundance.magnitude) << " GWy over "
              << snap.per_source.size() << " source(s)\n";
}

void cmd_check_growth(const std::string& matrix_path, const std::string& series_path,
                      const std::string& at, std::optional<double> h_years) {
    const EnergyMatrix matrix = load_matrix(matrix_path, series_path);
    std::optional<Duration> step;
    if (h_years) {
        step = Duration::from_years(*h_years);
        if (!step->positive()) throw ValidationError("--h-years must be positive");
    }
    const GrowthAssessment a = growth_condition(matrix, parse_timestamp(at), step);
    std::cout << io::assessment_to_json(a) << '\n';
    std::cerr << "dM/dt = " << io::render_number(a.money_rate_amu_per_year) << " "
              << money_unit_tag << "/y, growth "
              << (a.overall_growth ? "sustained" : "not sustained") << ", " << a.declining.size()
              << " declining source(s)\n";
}

void cmd_simulate(const std::string& scenario_path, const std::string& out_path,
                  const std::string& format) {
    const Scenario scenario = io::load_scenario(scenario_path);
    const SimulationResult result = simulate(scenario);
    io::write_report(result, out_path,
                     format == "json" ? io::ReportFormat::json : io::ReportFormat::csv);
    std::cerr << "evaluations=" << result.snapshots.size() << " skipped=" << result.skipped.size()
              << " violations=" << result.violations.size() << '\n';
}

void cmd_convert(double value, const std::string& from, const std::string& to) {
    const EnergyQuantity q{value, parse_unit(from)};
    std::cout << format_quantity(convert(q, parse_unit(to))) << '\n';
}

} // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"esctool - energy-supply-capacity monetary standard\n"
                 "Conventions: 1 year = 8760 h; capacity in GWy (annualized); averaging\n"
                 "windows trail their evaluation point; matrix events take effect exactly\n"
                 "at their timestamp (an evaluation at the event instant sees the\n"
                 "post-event matrix)."};
    app.require_subcommand(1);

    std::string matrix_path, series_path, at, scenario_path, out_path;
    std::string format = "csv";
    double value = 0.0;
    std::string from_unit, to_unit;
    std::optional<double> h_years;

    auto* compute = app.add_subcommand(
        "compute", "Money supply M and total abundance at a timestamp (JSON on stdout)");
    compute->add_option("--matrix", matrix_path, "Matrix configuration JSON")->required();
    compute->add_option("--series", series_path, "Capacity series CSV")->required();
    compute->add_option("--at", at, "Evaluation timestamp, YYYY-MM-DDThh:mm:ssZ")->required();

    auto* check = app.add_subcommand(
        "check-growth", "Growth/compensation condition at a timestamp (JSON on stdout)");
    check->add_option("--matrix", matrix_path, "Matrix configuration JSON")->required();
    check->add_option("--series", series_path, "Capacity series CSV")->required();
    check->add_option("--at", at, "Evaluation timestamp, YYYY-MM-DDThh:mm:ssZ")->required();
    check->add_option("--h-years", h_years,
                      "Central-difference half-step in years (default: window/20 per source)");

    auto* sim = app.add_subcommand("simulate", "Sweep a scenario and write a report");
    sim->add_option("--scenario", scenario_path, "Scenario JSON")->required();
    sim->add_option("--out", out_path, "Report output path")->required();
    sim->add_option("--format", format, "Report format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();

    auto* conv = app.add_subcommand("convert", "Convert between energy units (1 GWy = 8760 GWh)");
    conv->add_option("--value", value, "Magnitude to convert")->required();
    conv->add_option("--from", from_unit, "Source unit tag (kWh,MWh,GWh,TWh,GWy,TWy)")->required();
    conv->add_option("--to", to_unit, "Target unit tag")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (compute->parsed())
            cmd_compute(matrix_path, series_path, at);
        else if (check->parsed())
            cmd_check_growth(matrix_path, series_path, at, h_years);
        else if (sim->parsed())
            cmd_simulate(scenario_path, out_path, format);
        else
            cmd_convert(value, from_unit, to_unit);
        return 0;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 2;
    }
}

} // namespace esc::cli
