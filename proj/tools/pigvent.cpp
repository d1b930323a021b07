// pigvent — climate simulation and ventilation control for pig housing.
//
// Exit codes: 0 success, 1 runtime/model error, 2 usage or input error.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pigvent/runner.hpp"
#include "pigvent/scenario.hpp"

namespace {

using namespace pigvent;

struct Options {
    std::string scenario_path;
    std::string out_dir;
    std::string controller = "mpc";
    std::vector<std::string> overrides;
    bool charts = false;
    int workers = 1;
    std::string sweep_param;
    std::vector<double> sweep_values;
};

scenario::Scenario load_with_overrides(const Options& opt)
{
    scenario::Scenario sc = scenario::load_scenario(opt.scenario_path);
    std::vector<std::string> errs;
    for (const auto& ov : opt.overrides) {
        const auto eq = ov.find('=');
        if (eq == std::string::npos) {
            errs.push_back("override '" + ov + "' is not of the form key=value");
            continue;
        }
        if (const auto err = scenario::set_field(sc, ov.substr(0, eq), ov.substr(eq + 1)))
            errs.push_back("override: " + *err);
    }
    for (auto& e : scenario::validate_scenario(sc))
        errs.push_back(std::move(e));
    if (!errs.empty())
        throw scenario::LoadError(std::move(errs));
    return sc;
}

std::filesystem::path resolve_out_dir(const Options& opt)
{
    if (!opt.out_dir.empty())
        return opt.out_dir;
    if (const char* env = std::getenv("PIGVENT_OUT"))
        return env;
    return "out";
}

int run(const std::string& command, const Options& opt)
{
    const auto sc = load_with_overrides(opt);
    const auto out_dir = resolve_out_dir(opt);
    if (command == "simulate") {
        const auto which = opt.controller == "rule" ? runner::Controller::rule
                                                    : runner::Controller::mpc;
        const auto res = runner::simulate(sc, which, out_dir, opt.charts);
        std::printf("comfort_temp_pct = %g\ncomfort_rh_pct = %g\nenergy_kwh = %g\n",
                    res.report.comfort_temp_pct, res.report.comfort_rh_pct,
                    res.report.energy_kwh);
    } else if (command == "validate") {
        const auto res = runner::validate(sc, out_dir, opt.charts);
        std::printf("temperature: rmse = %g, mape = %g %%, sd = %g, r2 = %g\n",
                    res.temperature.rmse, res.temperature.mape_pct, res.temperature.sd,
                    res.temperature.r2);
        std::printf("humidity:    rmse = %g, mape = %g %%, sd = %g, r2 = %g\n",
                    res.humidity.rmse, res.humidity.mape_pct, res.humidity.sd, res.humidity.r2);
    } else if (command == "compare") {
        const auto res = runner::compare(sc, out_dir, opt.charts);
        std::printf("                      MPC      rule-based\n");
        std::printf("comfort_temp_pct   %8.2f   %8.2f\n", res.report.a.comfort_temp_pct,
                    res.report.b.comfort_temp_pct);
        std::printf("comfort_rh_pct     %8.2f   %8.2f\n", res.report.a.comfort_rh_pct,
                    res.report.b.comfort_rh_pct);
        std::printf("energy_kwh         %8.3f   %8.3f\n", res.report.a.energy_kwh,
                    res.report.b.energy_kwh);
    } else {  // sweep
        const auto rows =
            runner::sweep(sc, opt.sweep_param, opt.sweep_values, out_dir, opt.workers);
        std::printf("%zu sweep point(s) written to %s\n", rows.size(),
                    (out_dir / "sweep.csv").string().c_str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Climate simulation and optimal ventilation control for pig housing"};
    app.require_subcommand(1);

    Options opt;
    std::string command;
    for (const char* name : {"simulate", "validate", "compare", "sweep"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--scenario", opt.scenario_path, "Scenario file path")->required();
        sub->add_option("--out", opt.out_dir,
                        "Output directory (default: $PIGVENT_OUT, then ./out)");
        sub->add_option("--override", opt.overrides,
                        "Scenario override, dotted key=value (repeatable)");
        sub->add_flag("--charts", opt.charts, "Also write SVG charts");
        sub->add_option("--workers", opt.workers, "Parallel sweep workers");
        if (std::string(name) == "simulate")
            sub->add_option("--controller", opt.controller, "rule or mpc")
                ->check(CLI::IsMember({"rule", "mpc"}));
        if (std::string(name) == "sweep") {
            sub->add_option("--param", opt.sweep_param, "Dotted scenario field to sweep")
                ->required();
            sub->add_option("--values", opt.sweep_values, "Values to sweep over")->required();
        }
        sub->callback([&command, name]() { command = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        return run(command, opt);
    } catch (const scenario::LoadError& e) {
        for (const auto& f : e.failures)
            std::fprintf(stderr, "error: %s\n", f.c_str());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
