// Command-line driver: runs a theta sweep of the threshold model, writes one
// plot-ready curve file per requested J variant plus a JSON summary with the
// full count tables. Optionally writes the oracle's expected curves in the
// same format for overlay plotting.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <system_error>
#include <vector>

#include <CLI11.hpp>

#include "ebsim/io.hpp"
#include "ebsim/model.hpp"
#include "ebsim/oracle.hpp"
#include "ebsim/simulate.hpp"

namespace fs = std::filesystem;

namespace {

std::vector<double> theta_grid_degrees(double start, double end, double step) {
    const auto count = static_cast<std::size_t>(std::floor((end - start) / step + 1e-9)) + 1;
    std::vector<double> grid;
    grid.reserve(count);
    for (std::size_t i = 0; i < count; ++i) grid.push_back(start + static_cast<double>(i) * step);
    return grid;
}

std::vector<ebsim::io::CurvePoint> simulated_curve(const std::vector<double>& theta_deg,
                                                   const std::vector<ebsim::SweepResult>& results,
                                                   ebsim::oracle::JMode mode) {
    std::vector<ebsim::io::CurvePoint> curve;
    curve.reserve(results.size());
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto j = mode == ebsim::oracle::JMode::full ? results[i].j_full
                                                          : results[i].j_deleted;
        curve.push_back({theta_deg[i], j});
    }
    return curve;
}

std::vector<ebsim::io::CurvePoint> oracle_curve(const std::vector<double>& theta_deg,
                                                ebsim::Threshold threshold, std::uint64_t trials,
                                                ebsim::oracle::JMode mode) {
    std::vector<ebsim::io::CurvePoint> curve;
    curve.reserve(theta_deg.size());
    for (const double deg : theta_deg) {
        const double expected =
            ebsim::oracle::expected_j(deg * ebsim::kPi / 180.0, threshold, trials, mode);
        curve.push_back({deg, std::llround(expected)});
    }
    return curve;
}

}  // namespace

int main(int argc, char** argv) {
    ebsim::io::SummaryConfig config;

    CLI::App app{
        "Monte Carlo sweep of a threshold local-hidden-variable model against the "
        "Eberhard inequality, with a quadrature oracle for the expected counts."};
    app.add_option("--theta-start", config.theta_start_deg, "First theta, degrees")
        ->capture_default_str();
    app.add_option("--theta-end", config.theta_end_deg, "Last theta, degrees")
        ->capture_default_str();
    app.add_option("--theta-step", config.theta_step_deg, "Theta grid step, degrees")
        ->capture_default_str();
    app.add_option("--threshold", config.threshold, "Detection threshold V, in [-1, 0]")
        ->capture_default_str();
    app.add_option("--trials", config.trials, "Trials per theta point")->capture_default_str();
    app.add_option("--seed", config.seed, "Random stream seed")->capture_default_str();
    app.add_option("--mode", config.mode, "Which J curves to write")
        ->check(CLI::IsMember({"full", "deleted-singles", "both"}))
        ->capture_default_str();
    app.add_option("--allocation", config.allocation, "Setting-pair allocation per trial")
        ->check(CLI::IsMember({"equal", "random"}))
        ->capture_default_str();
    app.add_option("--output-dir", config.output_dir, "Directory for output files")
        ->capture_default_str();
    app.add_flag("--emit-oracle", config.emit_oracle,
                 "Also write the oracle's expected-J curves");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& help) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& err) {
        std::cerr << "error: " << err.what() << "\n\n" << app.help();
        return 1;
    }

    const auto usage_error = [&](const std::string& message) {
        std::cerr << "error: " << message << "\n\n" << app.help();
        return 1;
    };
    if (!(config.theta_step_deg > 0.0)) return usage_error("--theta-step must be positive");
    if (config.theta_start_deg > config.theta_end_deg) {
        return usage_error("--theta-start must not exceed --theta-end");
    }
    if (config.trials == 0) return usage_error("--trials must be positive");
    if (config.threshold < -1.0 || config.threshold > 0.0) {
        return usage_error("--threshold must lie in [-1, 0]");
    }
    if (config.allocation == "equal" && config.trials % 4 != 0) {
        return usage_error("--trials must be divisible by 4 under equal allocation");
    }

    const auto theta_deg = theta_grid_degrees(config.theta_start_deg, config.theta_end_deg,
                                              config.theta_step_deg);

    ebsim::RunConfig run;
    run.theta_list.reserve(theta_deg.size());
    for (const double deg : theta_deg) run.theta_list.push_back(deg * ebsim::kPi / 180.0);
    run.threshold = ebsim::Threshold(config.threshold);
    run.trials_total = config.trials;
    run.seed = config.seed;
    run.allocation = config.allocation == "equal" ? ebsim::Allocation::equal_per_pair
                                                  : ebsim::Allocation::random_pair;

    const auto results = ebsim::sweep(run);

    const bool want_full = config.mode == "full" || config.mode == "both";
    const bool want_deleted = config.mode == "deleted-singles" || config.mode == "both";
    const fs::path out_dir = config.output_dir;

    std::vector<fs::path> written;
    try {
        fs::create_directories(out_dir);

        const auto write_curve = [&](const std::vector<ebsim::io::CurvePoint>& curve,
                                     const char* name) {
            const fs::path path = out_dir / name;
            written.push_back(path);  // tracked first so partial writes get removed
            ebsim::io::emit_datafile(curve, path);
            std::cout << "wrote " << path.string() << "\n";
        };

        if (want_full) {
            write_curve(simulated_curve(theta_deg, results, ebsim::oracle::JMode::full),
                        "eberhard_full.dat");
        }
        if (want_deleted) {
            write_curve(simulated_curve(theta_deg, results, ebsim::oracle::JMode::deleted_singles),
                        "eberhard_deleted.dat");
        }
        if (config.emit_oracle) {
            if (want_full) {
                write_curve(oracle_curve(theta_deg, run.threshold, config.trials,
                                         ebsim::oracle::JMode::full),
                            "oracle_full.dat");
            }
            if (want_deleted) {
                write_curve(oracle_curve(theta_deg, run.threshold, config.trials,
                                         ebsim::oracle::JMode::deleted_singles),
                            "oracle_deleted.dat");
            }
        }

        const fs::path summary_path = out_dir / "summary.json";
        const auto summary = ebsim::io::summary_to_json(config, results, theta_deg);
        written.push_back(summary_path);
        ebsim::io::write_file(summary_path, summary.dump(2) + "\n");
        std::cout << "wrote " << summary_path.string() << "\n";
    } catch (const std::exception& err) {
        for (const auto& path : written) {
            std::error_code ec;
            fs::remove(path, ec);
        }
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    }
    return 0;
}
