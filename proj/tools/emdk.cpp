/// emdk: scenario-driven front end for the electromagnetic drive-form toolkit.
///
///   emdk run <scenario.json>        execute the scenario's tasks and print a JSON report
///   emdk classify <scenario.json>   classify the scenario's medium only
///   emdk selftest                   run the identity suite, round trips and a variation check
///
/// Exit codes: 0 success, 2 validation error, 3 numerical failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "emdk/errors.hpp"
#include "emdk/report.hpp"
#include "emdk/scenario.hpp"

namespace {

int write_report(const emdk::RunOutcome& outcome, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << outcome.report;
        std::cout.flush();
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "emdk: cannot write report to '" << out_path << "'\n";
            return emdk::kExitValidation;
        }
        out << outcome.report;
    }
    if (outcome.exit_code != emdk::kExitOk) std::cerr << "emdk: numerical checks failed (see report status)\n";
    return outcome.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"emdk: electromagnetic drive forms, constitutive tensors and stress-energy-momentum in media"};
    app.require_subcommand(1);

    std::string out_path;
    std::optional<std::uint64_t> seed;
    bool strict = false;
    std::optional<double> fd_step;
    double tol_classify = 1e-10;
    bool inject_flip = false;

    app.add_option("--out", out_path, "Write the report to this file instead of standard output");
    app.add_option("--seed", seed, "Seed for random draws (classifier jitter, sampled variations, self-test)");
    app.add_flag("--strict", strict, "Treat residuals above their thresholds as numerical failures (exit 3)");
    app.add_option("--fd-step", fd_step, "Finite-difference step overriding the stencil and variation steps")
        ->check(CLI::PositiveNumber);
    app.add_option("--tol-classify", tol_classify, "Relative tolerance of the intrinsic classifier")
        ->check(CLI::PositiveNumber);

    std::string scenario_path;
    CLI::App* run = app.add_subcommand("run", "Run the tasks listed in a scenario file");
    run->add_option("scenario", scenario_path, "Scenario JSON file")->required();
    CLI::App* classify = app.add_subcommand("classify", "Classify the medium of a scenario file");
    classify->add_option("scenario", scenario_path, "Scenario JSON file")->required();
    CLI::App* selftest = app.add_subcommand("selftest", "Run the built-in identity and round-trip checks");
    selftest->add_flag("--inject-convention-flip", inject_flip,
                       "Debug: evaluate the identities with a wrong metric signature (must fail)");

    // options given after the subcommand name are accepted as well
    for (CLI::App* sub : {run, classify, selftest}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? emdk::kExitOk : emdk::kExitValidation;
    }

    emdk::RunOptions options;
    options.seed = seed;
    options.strict = strict;
    options.fd_step = fd_step;
    options.tol_classify = tol_classify;
    options.inject_convention_flip = inject_flip;

    try {
        if (*selftest) return write_report(emdk::run_selftest_report(options), out_path);
        const emdk::Scenario scenario = emdk::load_scenario(scenario_path);
        if (*classify) return write_report(emdk::classify_scenario(scenario, options), out_path);
        return write_report(emdk::run_scenario(scenario, options), out_path);
    } catch (const emdk::ValidationError& e) {
        std::cerr << "emdk: validation error: " << e.what() << "\n";
        return emdk::kExitValidation;
    } catch (const emdk::NumericalError& e) {
        std::cerr << "emdk: numerical failure: " << e.what() << "\n";
        return emdk::kExitNumerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "emdk: validation error: " << e.what() << "\n";
        return emdk::kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "emdk: numerical failure: " << e.what() << "\n";
        return emdk::kExitNumerical;
    }
}
