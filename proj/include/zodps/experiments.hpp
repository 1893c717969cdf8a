#pragma once

/**
 * Experiment orchestration: runs a configured sampler across a seed list,
 * evaluates KL / occupancy at the configured cadence, and emits per-seed
 * record CSVs, final-ensemble CSVs, a cross-seed aggregate CSV, and an SVG
 * convergence plot.  Sweeps repeat that per variant and add a combined
 * long-format CSV and chart.  Everything is deterministic in (config, seed):
 * rerunning a config produces byte-identical files.
 */

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zodps/config.hpp"
#include "zodps/diagnostics.hpp"
#include "zodps/ensemble.hpp"
#include "zodps/exec.hpp"
#include "zodps/records.hpp"

namespace zodps {

/// n i.i.d. N(0, I_dim) rows, one init stream per particle.
Ensemble standard_normal_ensemble(int n, int dim, std::uint64_t seed);

/// One seed's trajectory.  On a mid-run sampler error the partial records
/// survive in `out` (completed stays false) and the error propagates.
struct SeedRun {
    std::vector<RunRecord> records;
    Ensemble final_ensemble;
    Ensemble final_pooled;  // last pooling window, feeds the histogram output
    bool completed = false;
};

void run_single_seed(const ExperimentConfig& cfg, std::uint64_t seed,
                     const Ensemble* reference, SeedRun& out,
                     Exec exec = Exec::parallel);

/// One aggregate row per recorded iteration; optional fields mirror the
/// per-seed records (KL only at evaluation points, occupancy only for tori).
/// kl_var is the sample variance across seeds (0 with a single seed).
struct AggregatePoint {
    int iteration = 0;
    std::optional<double> kl_mean;
    std::optional<double> kl_var;
    std::optional<double> occ_t1_mean;
    std::optional<double> occ_t2_mean;
    std::optional<double> occ_out_mean;
    double degenerate_mean = 0.0;
};

struct SeriesResult {
    std::string label;      // empty for plain runs; "h=0.05" / "N=100,M=1000" in sweeps
    std::string directory;  // where this series' files were written
    std::vector<SeedRun> seed_runs;
    std::vector<AggregatePoint> aggregate;
};

struct ExperimentResult {
    std::vector<SeriesResult> series;  // one entry per sweep variant
};

ExperimentResult run_experiment(const ExperimentConfig& cfg, Exec exec = Exec::parallel);

/// The exact config a sweep runs for one variant (sweep lists cleared, the
/// varied parameter substituted, output redirected to a subdirectory).
ExperimentConfig sweep_variant_h(const ExperimentConfig& base, double h);
ExperimentConfig sweep_variant_nm(const ExperimentConfig& base, int particles, int interim);

/// Lists come from base.sweep; a single-entry list degenerates to
/// run_experiment in the variant subdirectory.
ExperimentResult sweep_step_size(const ExperimentConfig& base, Exec exec = Exec::parallel);
ExperimentResult sweep_particle_interim(const ExperimentConfig& base,
                                        Exec exec = Exec::parallel);

/**
 * Long single-chain proximal run: cfg.reference.burn_in updates discarded,
 * then cfg.reference.size states uniformly thinned from the next
 * cfg.reference.collect updates, written to `path` as an ensemble CSV with
 * generation metadata; the full config goes to path + ".config.json".
 */
struct ReferenceResult {
    Ensemble ensemble;
    long rejections = 0;
    long clamps = 0;
};
ReferenceResult generate_reference(const ExperimentConfig& cfg, const std::string& path,
                                   Exec exec = Exec::parallel);

/**
 * Reference ensemble drawn from the target's closed-form sampler instead of
 * a long chain (currently only the gaussian-lasso target has one; other
 * targets raise ValidationError).  A single finite chain cannot cross
 * between this target's two far-apart modes at the benchmark step size, so
 * its reference under-represents one mode; the closed-form draws carry the
 * exact component split.  cfg.reference.size rows are drawn with the first
 * configured seed, and the same CSV metadata + side-car config are written
 * as for generate_reference.
 */
ReferenceResult generate_exact_reference(const ExperimentConfig& cfg,
                                         const std::string& path);

/// KL estimate between two stored ensembles (sample vs reference).
KlEstimate estimate_kl_files(const std::string& sample_path,
                             const std::string& reference_path, int k = 4,
                             Exec exec = Exec::parallel);

} // namespace zodps
