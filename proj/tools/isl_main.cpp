#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

#include "isl/scenario.hpp"

int main(int argc, char** argv) {
    CLI::App app{"induced-structure verification on implicit submanifolds"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::int64_t seed = -1;
    int points = -1;
    double tol_alg = -1, tol_fd = -1, fd_step = -1;
    std::string format, out_path;

    CLI::App* verify = app.add_subcommand("verify", "run a scenario and report residuals");
    verify->add_option("--scenario", scenario_path, "scenario json file")
        ->required()
        ->envname("ISL_SCENARIO");
    verify->add_option("--seed", seed, "override the sampling seed")->envname("ISL_SEED");
    verify->add_option("--points", points, "override the sample count")->envname("ISL_POINTS");
    verify->add_option("--tol-alg", tol_alg, "override the algebraic tolerance")
        ->envname("ISL_TOL_ALG");
    verify->add_option("--tol-fd", tol_fd, "override the finite-difference tolerance")
        ->envname("ISL_TOL_FD");
    verify->add_option("--fd-step", fd_step, "override the finite-difference step")
        ->envname("ISL_FD_STEP");
    verify->add_option("--format", format, "text, json or csv")->envname("ISL_FORMAT");
    verify->add_option("--out", out_path, "write the report to a file")->envname("ISL_OUT");

    CLI::App* suites = app.add_subcommand("list-suites", "print the available suites");
    CLI::App* gallery = app.add_subcommand("list-gallery", "print the gallery ids");

    CLI11_PARSE(app, argc, argv);

    try {
        if (suites->parsed()) {
            for (const auto& [name, what] : isl::list_suites())
                std::printf("%-12s %s\n", name.c_str(), what.c_str());
            return 0;
        }
        if (gallery->parsed()) {
            for (const auto& [name, what] : isl::list_gallery())
                std::printf("%-6s %s\n", name.c_str(), what.c_str());
            return 0;
        }
        isl::Scenario sc = isl::Scenario::from_file(scenario_path);
        if (seed >= 0) sc.seed = static_cast<std::uint64_t>(seed);
        if (points > 0) sc.count = points;
        if (tol_alg > 0) sc.tol_alg = tol_alg;
        if (tol_fd > 0) sc.tol_fd = tol_fd;
        if (fd_step > 0) sc.fd_step = fd_step;
        if (!format.empty()) sc.format = format;
        if (!out_path.empty()) sc.out_path = out_path;

        isl::RunResult result = isl::run_scenario(sc);
        if (sc.out_path.empty())
            isl::emit_report(result, sc.format, std::cout);
        else
            isl::emit_report_file(result, sc.format, sc.out_path);
        return result.exit_code;
    } catch (const isl::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
