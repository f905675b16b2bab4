// ivbs: estimate interval probabilities from interval-valued belief
// structures.
//
//   ivbs validate <file>
//   ivbs estimate <file> [--alpha 1,2,3] [--seed N] [--restarts N] [--workers N] [--out report.txt]
//   ivbs verify [--fixtures <dir>] [--seed N] [--restarts N] [--workers N]
//
// Exit codes: 0 success, 1 validation/verification failure, 2 usage or
// parse error.

#include <fstream>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "ivbs/error.hpp"
#include "ivbs/estimator.hpp"
#include "ivbs/io.hpp"
#include "ivbs/verify.hpp"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

int cmd_validate(const std::string& path)
{
    const auto obs = ivbs::load_observations(path);
    bool all_ok = true;
    for (std::size_t k = 0; k < obs.size(); ++k) {
        const auto report = ivbs::validate(obs[k]);
        std::cout << "observation " << obs.labels()[k] << ": " << (report.ok() ? "valid" : "INVALID") << '\n';
        for (const auto& v : report.violations) {
            std::cout << "  violation: " << v.message << '\n';
        }
        for (const auto& w : report.warnings) {
            std::cout << "  warning: " << w << '\n';
        }
        all_ok = all_ok && report.ok();
    }
    std::cout << obs.size() << " observations, " << (all_ok ? "all valid" : "some invalid") << '\n';
    return all_ok ? 0 : kExitFailure;
}

int cmd_estimate(const std::string& path, const std::vector<double>& alphas, const ivbs::EstimatorConfig& config,
                 const std::string& out)
{
    const std::string text = ivbs::read_file(path);
    const auto obs = ivbs::parse_observations(text);
    try {
        obs.require_valid();
    } catch (const ivbs::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    const auto rows = ivbs::alpha_sweep(obs, alphas, config);
    std::cout << ivbs::format_table(obs.frame(), rows);
    if (!out.empty()) {
        std::ofstream file(out, std::ios::binary);
        file << ivbs::format_report({ivbs::content_digest(text), config.seed, config.restarts}, obs.frame(), rows);
        if (!file) {
            throw ivbs::Error("cannot write '" + out + "'");
        }
    }
    return 0;
}

int cmd_verify(const ivbs::VerifyOptions& options)
{
    const auto results = ivbs::run_acceptance(options, [](const ivbs::CriterionResult& r) {
        std::cout << ivbs::format_criterion(r) << std::endl;
    });
    const auto failed = std::count_if(results.begin(), results.end(), [](const auto& r) { return !r.passed; });
    std::cout << results.size() - static_cast<std::size_t>(failed) << "/" << results.size() << " criteria passed\n";
    return failed ? kExitFailure : 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Interval-valued belief structure parameter estimation"};
    app.require_subcommand(1);

    std::string file;
    auto* validate = app.add_subcommand("validate", "Check every observation in a file");
    validate->add_option("file", file, "Observation file")->required();

    std::vector<double> alphas{1, 2, 3, 4, 5};
    ivbs::EstimatorConfig config;
    config.workers = 0;
    std::string out;
    auto* estimate = app.add_subcommand("estimate", "Estimate interval probabilities for each alpha");
    estimate->add_option("file", file, "Observation file")->required();
    estimate->add_option("--alpha", alphas, "Comma-separated alpha values (each >= 1)")
        ->delimiter(',')
        ->check(CLI::Range(1.0, std::numeric_limits<double>::max()));
    estimate->add_option("--seed", config.seed, "Base random seed")->capture_default_str();
    estimate->add_option("--restarts", config.restarts, "Search restarts per alpha")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    estimate->add_option("--workers", config.workers, "Worker threads (0 = all processors)");
    estimate->add_option("--out", out, "Write the structured report here");

    ivbs::VerifyOptions verify_options;
    verify_options.fixtures = IVBS_DEFAULT_FIXTURES;
    std::string fixtures = verify_options.fixtures.string();
    auto* verify = app.add_subcommand("verify", "Run the reproduction checks against bundled fixtures");
    verify->add_option("--fixtures", fixtures, "Fixture directory")->capture_default_str();
    verify->add_option("--seed", verify_options.seed, "Base random seed")->capture_default_str();
    verify->add_option("--restarts", verify_options.restarts, "Search restarts per estimate")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    verify->add_option("--workers", verify_options.workers, "Worker threads (0 = all processors)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*validate) {
            return cmd_validate(file);
        }
        if (*estimate) {
            return cmd_estimate(file, alphas, config, out);
        }
        verify_options.fixtures = fixtures;
        return cmd_verify(verify_options);
    } catch (const ivbs::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}
