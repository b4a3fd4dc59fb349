#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "riskstat/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{
        "Scenario-based risk statistics: evaluation, randomized axiom "
        "checks, penalty surfaces, and dual reconstruction"};
    app.set_version_flag("--version", std::string(riskstat::kToolVersion));
    app.require_subcommand(1);

    riskstat::RunConfig cfg;
    std::string spec_path, data_path, out_path;

    auto add_common = [&](CLI::App* sub, bool data_required) {
        sub->add_option("--spec", spec_path, "statistic spec (JSON)")
            ->required();
        auto* data = sub->add_option("--data", data_path,
                                     "scenario table (header s1,...,sN)");
        if (data_required) data->required();
        sub->add_option("--trials", cfg.trials, "sampling trials");
        sub->add_option("--tol", cfg.tol, "tolerance");
        sub->add_option("--box", cfg.box, "sampling/search box half-width");
        sub->add_option("--grid-step", cfg.grid_step, "weight grid step");
        sub->add_option("--mode", cfg.mode,
                        "penalty mode: acceptance|conjugate");
        sub->add_option("--seed", cfg.seed, "random seed");
        sub->add_option("--out", out_path, "report path (default: stdout)");
        return sub;
    };

    CLI::App* eval_cmd = add_common(
        app.add_subcommand("eval", "evaluate the statistic on each data row"),
        true);
    CLI::App* check_cmd = add_common(
        app.add_subcommand("check", "randomized axiom verification"), false);
    CLI::App* penalty_cmd = add_common(
        app.add_subcommand("penalty", "penalty values over the weight grid"),
        false);
    CLI::App* reconstruct_cmd = add_common(
        app.add_subcommand("reconstruct",
                           "dual reconstruction at probe rows, with gaps"),
        true);
    CLI::App* lift_cmd = add_common(
        app.add_subcommand("lift-check", "extended-space lift verification"),
        false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (eval_cmd->parsed()) cfg.command = riskstat::Command::eval;
    if (check_cmd->parsed()) cfg.command = riskstat::Command::check;
    if (penalty_cmd->parsed()) cfg.command = riskstat::Command::penalty;
    if (reconstruct_cmd->parsed()) cfg.command = riskstat::Command::reconstruct;
    if (lift_cmd->parsed()) cfg.command = riskstat::Command::lift_check;

    cfg.spec_path = spec_path;
    cfg.data_path = data_path;
    cfg.out_path = out_path;
    return riskstat::run(cfg, std::cout, std::cerr);
}
