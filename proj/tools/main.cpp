// Benchmark CLI: runs configured experiments, parameter sweeps, reference
// generation, and standalone KL estimation.  Exit codes: 0 success, 1 invalid
// input, 2 runtime sampler failure.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <omp.h>

#include "zodps/config.hpp"
#include "zodps/csv.hpp"
#include "zodps/errors.hpp"
#include "zodps/experiments.hpp"

namespace {

struct GlobalOpts {
    std::string config_path;
    std::string preset_name;
    std::string out_dir;
    std::string reference;
    std::optional<std::uint64_t> seed;
    bool paper_scale = false;
    bool serial = false;
    int threads = 0;
};

zodps::ExperimentConfig resolve(const GlobalOpts& g, const char* fallback_preset) {
    zodps::ExperimentConfig cfg;
    if (!g.config_path.empty())
        cfg = zodps::load_config(g.config_path);
    else if (!g.preset_name.empty())
        cfg = zodps::preset(g.preset_name, g.paper_scale);
    else if (fallback_preset)
        cfg = zodps::preset(fallback_preset, g.paper_scale);
    else
        throw zodps::ValidationError("provide --config PATH or --preset NAME");

    if (g.seed) cfg.seeds = {*g.seed};
    if (!g.out_dir.empty()) cfg.output.directory = g.out_dir;
    if (!g.reference.empty()) cfg.eval.reference = g.reference;
    return cfg;
}

int thread_count(const GlobalOpts& g) {
    if (const char* env = std::getenv("ZODPS_THREADS"); env && *env) {
        char* end = nullptr;
        const long n = std::strtol(env, &end, 10);
        if (end == nullptr || *end != '\0' || n < 1)
            throw zodps::ValidationError("ZODPS_THREADS must be a positive integer");
        return static_cast<int>(n);
    }
    return g.threads;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"zeroth-order diffusive proximal sampler benchmark"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--config", g.config_path, "experiment config JSON file");
    app.add_option("--preset", g.preset_name, "named parameter set (see print-presets)");
    app.add_option("--seed", g.seed, "replace the config's seed list with one seed");
    app.add_option("--out", g.out_dir, "output directory (overrides the config)");
    app.add_option("--reference", g.reference, "reference ensemble CSV for KL curves");
    app.add_flag("--paper-scale", g.paper_scale,
                 "full published budgets instead of the trimmed desk defaults");
    app.add_option("--threads", g.threads, "OpenMP thread count (ZODPS_THREADS wins)");
    app.add_flag("--serial", g.serial, "run the serial reference implementation");

    CLI::App* cmd_run =
        app.add_subcommand("run", "run one experiment across its seed list");
    CLI::App* cmd_sweep_h =
        app.add_subcommand("sweep-h", "repeat the experiment over sweep.h_values");
    CLI::App* cmd_sweep_mn = app.add_subcommand(
        "sweep-mn", "repeat the experiment over particle/interim pairs");

    CLI::App* cmd_make_ref = app.add_subcommand(
        "make-reference", "long proximal run producing a reference ensemble CSV");
    std::string ref_file;
    bool ref_exact = false;
    cmd_make_ref->add_option("--file", ref_file,
                             "reference CSV path (default <out>/reference.csv)");
    cmd_make_ref->add_flag(
        "--exact", ref_exact,
        "draw the reference from the target's closed-form sampler instead of "
        "a chain (gaussian-lasso only)");

    CLI::App* cmd_estimate =
        app.add_subcommand("estimate-kl", "KL estimate between two ensemble CSVs");
    std::string sample_path, against_path;
    int knn_k = 4;
    cmd_estimate->add_option("sample", sample_path, "evaluation ensemble CSV")
        ->required();
    cmd_estimate->add_option("reference", against_path, "reference ensemble CSV")
        ->required();
    cmd_estimate->add_option("--k", knn_k, "nearest-neighbor order");

    CLI::App* cmd_presets =
        app.add_subcommand("print-presets", "dump every named preset as config JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        const int threads = thread_count(g);
        if (threads > 0) omp_set_num_threads(threads);
        const zodps::Exec exec = g.serial ? zodps::Exec::serial : zodps::Exec::parallel;

        if (cmd_run->parsed()) {
            const zodps::ExperimentConfig cfg = resolve(g, nullptr);
            zodps::run_experiment(cfg, exec);
            std::cout << "wrote " << cfg.output.directory << "\n";
        } else if (cmd_sweep_h->parsed()) {
            const zodps::ExperimentConfig cfg = resolve(g, "sweep-h");
            zodps::sweep_step_size(cfg, exec);
            std::cout << "wrote " << cfg.output.directory << "\n";
        } else if (cmd_sweep_mn->parsed()) {
            const zodps::ExperimentConfig cfg = resolve(g, "sweep-mn");
            zodps::sweep_particle_interim(cfg, exec);
            std::cout << "wrote " << cfg.output.directory << "\n";
        } else if (cmd_make_ref->parsed()) {
            const zodps::ExperimentConfig cfg = resolve(g, "lasso-reference");
            const std::string file =
                ref_file.empty() ? cfg.output.directory + "/reference.csv" : ref_file;
            if (ref_exact) {
                const zodps::ReferenceResult res =
                    zodps::generate_exact_reference(cfg, file);
                std::cout << "wrote " << file << " (" << res.ensemble.n()
                          << " particles, exact draws)\n";
            } else {
                const zodps::ReferenceResult res =
                    zodps::generate_reference(cfg, file, exec);
                std::cout << "wrote " << file << " (" << res.ensemble.n()
                          << " particles, " << res.rejections << " rejections)\n";
            }
        } else if (cmd_estimate->parsed()) {
            const zodps::KlEstimate kl =
                zodps::estimate_kl_files(sample_path, against_path, knn_k, exec);
            std::cout << zodps::csv::format_double(kl.value) << "\n";
        } else if (cmd_presets->parsed()) {
            for (const std::string& name : zodps::preset_names())
                std::cout << "== " << name << " ==\n"
                          << zodps::dump_config(zodps::preset(name, g.paper_scale))
                          << "\n";
        }
    } catch (const zodps::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
