#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <string>

#include <CLI11.hpp>
#ifdef _OPENMP
#include <omp.h>
#endif

#include "warpcert/pipeline.hpp"

namespace {

void print_summary(const warpcert::CertificationReport& rep, bool quiet) {
    if (quiet) return;
    for (const auto& st : rep.stages)
        std::printf("  stage %-10s %s\n", st.name.c_str(), st.pass ? "pass" : "FAIL");
    for (const auto& f : rep.failing_checks) std::printf("  ! %s\n", f.c_str());
    std::printf("verdict: %s\n", rep.pass ? "pass" : "fail");
}

} // namespace

int main(int argc, char** argv) {
#ifdef _OPENMP
    if (const char* env = std::getenv("WARPCERT_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) omp_set_num_threads(n);
    }
#endif

    CLI::App app{"warpcert: builds doubly warped metrics of positive Ricci curvature,"
                 " certifies the curvature and boundary conditions on a grid, and"
                 " certifies Morse index one of the model hypersurface spectrum"};
    app.require_subcommand(0, 1);

    bool print_default = false;
    app.add_flag("--print-default-config", print_default,
                 "print a commented config template and exit");

    std::string config_path;
    std::string out_dir;
    std::string format;
    std::uint64_t seed = 0;
    bool seed_set = false;
    bool quiet = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "config file (JSON, comments allowed)");
        sub->add_option("--out", out_dir, "output directory (overrides config)");
        sub->add_option("--format", format, "json|csv|both (overrides config)");
        sub->add_option("--seed", seed, "RNG seed (overrides config)")
            ->each([&seed_set](const std::string&) { seed_set = true; });
        sub->add_flag("--quiet", quiet, "suppress the human-readable summary");
        return sub;
    };

    CLI::App* cmd_construct =
        add_common(app.add_subcommand("construct", "solve the profile ODE and glue the cap"));
    CLI::App* cmd_certify = add_common(app.add_subcommand(
        "certify", "construct, then certify curvature positivity and the slab normalization"));
    CLI::App* cmd_spectrum =
        add_common(app.add_subcommand("spectrum", "compute the model hypersurface spectrum"));
    CLI::App* cmd_sweep =
        add_common(app.add_subcommand("sweep", "run the configured parameter sweep"));
    CLI::App* cmd_all =
        add_common(app.add_subcommand("all", "full pipeline with certification report"));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    if (print_default) {
        std::fputs(warpcert::default_config_text().c_str(), stdout);
        return 0;
    }
    if (app.get_subcommands().empty()) {
        std::fputs(app.help().c_str(), stdout);
        return 2;
    }

    try {
        warpcert::PipelineConfig cfg;
        if (!config_path.empty()) cfg = warpcert::load_config(config_path);
        if (!out_dir.empty()) cfg.output.dir = out_dir;
        if (!format.empty()) {
            if (format == "json") cfg.output.format = warpcert::OutputFormat::json;
            else if (format == "csv") cfg.output.format = warpcert::OutputFormat::csv;
            else if (format == "both") cfg.output.format = warpcert::OutputFormat::both;
            else throw warpcert::Error("unknown --format '" + format + "'");
        }
        if (seed_set) cfg.seed = seed;

        if (cmd_sweep->parsed()) {
            const auto rows = warpcert::run_sweep(cfg);
            std::filesystem::create_directories(cfg.output.dir);
            warpcert::write_sweep_csv(cfg.output.dir + "/summary.csv", rows);
            int failed = 0;
            for (const auto& r : rows) failed += r.pass ? 0 : 1;
            if (!quiet)
                std::printf("sweep: %zu runs, %d failed -> %s/summary.csv\n", rows.size(),
                            failed, cfg.output.dir.c_str());
            return failed == 0 ? 0 : 1;
        }

        warpcert::PipelineScope scope = warpcert::PipelineScope::all;
        if (cmd_construct->parsed()) scope = warpcert::PipelineScope::construct;
        else if (cmd_certify->parsed()) scope = warpcert::PipelineScope::certify;
        else if (cmd_spectrum->parsed()) scope = warpcert::PipelineScope::spectrum;
        else if (cmd_all->parsed()) scope = warpcert::PipelineScope::all;

        const auto rep = warpcert::run_pipeline(cfg, scope);
        warpcert::write_outputs(rep, cfg.output);
        print_summary(rep, quiet);
        if (rep.pass) return 0;
        return rep.numerical_error ? 3 : 1;
    } catch (const warpcert::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 3;
    }
}
