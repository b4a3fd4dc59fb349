#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "riskstat/cli.hpp"
#include "riskstat/io.hpp"

using namespace riskstat;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = RISKSTAT_FIXTURE_DIR;
const std::string kBinary = RISKSTAT_CLI_PATH;

struct CliResult {
    int code = 0;
    std::string out;
    std::string err;
};

CliResult run_cli(const RunConfig& cfg) {
    std::ostringstream out, err;
    CliResult r;
    r.code = run(cfg, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

RunConfig base_config(Command command, const std::string& spec) {
    RunConfig cfg;
    cfg.command = command;
    cfg.spec_path = kFixtures / spec;
    cfg.trials = 2000;
    return cfg;
}

nlohmann::json report_of(const CliResult& r) {
    return nlohmann::json::parse(r.out);
}

std::string drop_timestamp(const std::string& text) {
    std::string out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (line.find("\"timestamp\"") == std::string::npos)
            out += line + "\n";
    return out;
}

int subprocess(const std::string& args) {
    const int status =
        std::system((kBinary + " " + args + " >/dev/null 2>&1").c_str());
    REQUIRE(status != -1);
    return WEXITSTATUS(status);
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name)
        : path(fs::temp_directory_path() / name) {
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("eval prints one valued row per scenario") {
    RunConfig cfg = base_config(Command::eval, "entropic.json");
    cfg.data_path = kFixtures / "probes.csv";
    const CliResult r = run_cli(cfg);
    REQUIRE(r.code == 0);
    const nlohmann::json report = report_of(r);
    CHECK(report["tool"] == "riskstat");
    CHECK(report["command"] == "eval");
    CHECK(report["results"]["dimension"] == 2);
    const auto& rows = report["results"]["rows"];
    REQUIRE(rows.size() == 6);
    CHECK(rows[0]["scenarios"] == nlohmann::json({1.0, 2.0}));
    const double expected =
        eval(load_spec(kFixtures / "entropic.json"), ScenarioVector({1.0, 2.0}));
    CHECK(rows[0]["value"].get<double>() == expected);
}

TEST_CASE("check exits zero when every claimed axiom holds") {
    const CliResult r = run_cli(base_config(Command::check, "entropic.json"));
    CHECK(r.code == 0);
    const nlohmann::json report = report_of(r);
    CHECK(report["results"]["claim_violations"].empty());
    CHECK(report["results"]["m1_agreement"] == true);

    CHECK(run_cli(base_config(Command::check, "loss_based.json")).code == 0);
}

TEST_CASE("check exits one when a claimed axiom is refuted") {
    const CliResult r =
        run_cli(base_config(Command::check, "scaled_worst_case.json"));
    CHECK(r.code == 1);
    const nlohmann::json report = report_of(r);
    const auto& violations = report["results"]["claim_violations"];
    REQUIRE(!violations.empty());
    bool mentions_a5 = false;
    for (const auto& v : violations)
        mentions_a5 = mentions_a5 ||
                      v.get<std::string>().rfind("A5", 0) == 0;
    CHECK(mentions_a5);
}

TEST_CASE("check reports unclaimed failures without failing the run") {
    const CliResult r = run_cli(base_config(Command::check, "discounted.json"));
    CHECK(r.code == 0);
    const nlohmann::json report = report_of(r);
    bool saw_failed_a1 = false;
    for (const auto& rep : report["results"]["reports"])
        if (rep["axiom"] == "A1") {
            CHECK(rep["passed"] == false);
            CHECK(!rep["counterexample"].is_null());
            saw_failed_a1 = true;
        }
    CHECK(saw_failed_a1);
    CHECK(report["results"]["claim_violations"].empty());
}

TEST_CASE("malformed data is a usage error") {
    RunConfig cfg = base_config(Command::eval, "worst_case.json");
    cfg.data_path = kFixtures / "ragged.csv";
    const CliResult r = run_cli(cfg);
    CHECK(r.code == 2);
    CHECK(r.err.find("ragged") != std::string::npos);
    CHECK(r.out.empty());
}

TEST_CASE("reconstruct recovers the worst case statistic on the grid") {
    TempDir tmp("riskstat_cli_reconstruct");
    RunConfig cfg = base_config(Command::reconstruct, "worst_case.json");
    cfg.data_path = kFixtures / "probes.csv";
    cfg.grid_step = 0.25;
    cfg.tol = 1e-6;
    cfg.out_path = tmp.path / "report.json";
    const CliResult r = run_cli(cfg);
    REQUIRE(r.code == 0);
    CHECK(r.out.find("report written to") != std::string::npos);

    const nlohmann::json report =
        nlohmann::json::parse(read_text_file(cfg.out_path));
    CHECK(report["results"]["within_tolerance"] == true);
    CHECK(report["results"]["max_gap"].get<double>() <= 1e-6);
    const auto& rows = report["results"]["rows"];
    REQUIRE(rows.size() == 6);
    CHECK(rows[0]["argmax_weight"] == nlohmann::json({1.0, 0.0}));

    // The penalty table sidecar sits next to the report.
    const fs::path sidecar = tmp.path / "report.json.table.csv";
    REQUIRE(fs::exists(sidecar));
    CHECK(load_penalty_table(sidecar).grid.size() == 15);
}

TEST_CASE("reconstruct flags gaps beyond tolerance") {
    TempDir tmp("riskstat_cli_gap");
    RunConfig cfg = base_config(Command::reconstruct, "entropic.json");
    cfg.data_path = kFixtures / "probes.csv";
    cfg.grid_step = 0.5;
    cfg.tol = 1e-9;
    cfg.out_path = tmp.path / "report.json";
    const CliResult r = run_cli(cfg);
    CHECK(r.code == 1);
    const nlohmann::json report =
        nlohmann::json::parse(read_text_file(cfg.out_path));
    CHECK(report["results"]["within_tolerance"] == false);
    CHECK(report["results"]["max_gap"].get<double>() > 1e-9);
}

TEST_CASE("penalty writes its table and echoes the resolved mode") {
    TempDir tmp("riskstat_cli_penalty");
    RunConfig cfg = base_config(Command::penalty, "worst_case.json");
    cfg.grid_step = 0.5;
    cfg.mode = "paper";  // accepted alias for the acceptance-set formula
    cfg.out_path = tmp.path / "penalty.json";
    const CliResult r = run_cli(cfg);
    REQUIRE(r.code == 0);
    const nlohmann::json report =
        nlohmann::json::parse(read_text_file(cfg.out_path));
    CHECK(report["results"]["mode"] == "acceptance");
    CHECK(report["results"]["entries"] == 6);
    const PenaltySurface table =
        load_penalty_table(tmp.path / "penalty.json.table.csv");
    CHECK(table.grid.size() == 6);
    CHECK(table.mode == PenaltyMode::acceptance);
}

TEST_CASE("lift-check asserts only what the statistic claims") {
    CHECK(run_cli(base_config(Command::lift_check, "worst_case.json")).code ==
          0);
    RunConfig cfg = base_config(Command::lift_check, "scaled_worst_case.json");
    cfg.trials = 1000;
    const CliResult r = run_cli(cfg);
    CHECK(r.code == 1);
    const nlohmann::json report = report_of(r);
    CHECK(report["results"]["assertion_failures"] ==
          nlohmann::json({"A2-lift"}));
}

TEST_CASE("usage errors exit with code two") {
    RunConfig cfg;
    cfg.command = Command::check;
    CHECK(run_cli(cfg).code == 2);  // no spec

    cfg = base_config(Command::check, "worst_case.json");
    cfg.mode = "primal";
    CHECK(run_cli(cfg).code == 2);

    cfg = base_config(Command::check, "worst_case.json");
    cfg.grid_step = 0.0;
    CHECK(run_cli(cfg).code == 2);

    cfg = base_config(Command::check, "worst_case.json");
    cfg.trials = 0;
    CHECK(run_cli(cfg).code == 2);

    cfg = base_config(Command::check, "worst_case.json");
    cfg.tol = 0.0;
    CHECK(run_cli(cfg).code == 2);

    cfg = base_config(Command::check, "worst_case.json");
    cfg.box = -1.0;
    CHECK(run_cli(cfg).code == 2);

    cfg = base_config(Command::eval, "worst_case.json");
    CHECK(run_cli(cfg).code == 2);  // eval needs data

    cfg = base_config(Command::check, "missing.json");
    const CliResult r = run_cli(cfg);
    CHECK(r.code == 2);
    CHECK(r.err.rfind("error:", 0) == 0);
}

TEST_CASE("reports are byte stable apart from the timestamp") {
    RunConfig cfg = base_config(Command::check, "discounted.json");
    cfg.trials = 1000;
    cfg.seed = 7;
    const CliResult a = run_cli(cfg);
    const CliResult b = run_cli(cfg);
    CHECK(a.code == b.code);
    CHECK(drop_timestamp(a.out) == drop_timestamp(b.out));
    CHECK(drop_timestamp(a.out).find("\"timestamp\"") == std::string::npos);
    CHECK(a.out.find("\"timestamp\"") != std::string::npos);
}

TEST_CASE("command names match the command line surface") {
    CHECK(command_name(Command::eval) == "eval");
    CHECK(command_name(Command::check) == "check");
    CHECK(command_name(Command::penalty) == "penalty");
    CHECK(command_name(Command::reconstruct) == "reconstruct");
    CHECK(command_name(Command::lift_check) == "lift-check");
}

TEST_CASE("the installed binary maps argument errors to exit two") {
    CHECK(subprocess("") == 2);
    CHECK(subprocess("check") == 2);  // missing --spec
    CHECK(subprocess("frobnicate") == 2);
    CHECK(subprocess("--version") == 0);
    CHECK(subprocess("--help") == 0);
    const std::string spec = (kFixtures / "worst_case.json").string();
    const std::string data = (kFixtures / "probes.csv").string();
    CHECK(subprocess("eval --spec " + spec + " --data " + data) == 0);
    CHECK(subprocess("check --spec " + spec + " --trials 500") == 0);
    CHECK(subprocess("check --spec " + spec + " --trials 0") == 2);
}
