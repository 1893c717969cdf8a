#pragma once

/**
 * Experiment configuration: a single JSON document with nested sections, one
 * per module, plus presets reproducing the two benchmark parameter sets at
 * desk scale (paper scale behind a flag).  Parsing is strict — unknown keys
 * and malformed values are validation errors, so a typo cannot silently fall
 * back to a default.  The canonical dump (sorted keys, shortest-round-trip
 * numbers) is hashed into every output file's metadata.
 */

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zodps/baselines.hpp"
#include "zodps/potentials.hpp"
#include "zodps/sampler.hpp"

namespace zodps {

enum class ExperimentKind { lasso, tori, sweep_h, sweep_mn, custom };
enum class SamplerKind { zodps, rgo, inout, zodps_no_interaction };

const char* to_string(ExperimentKind k);
const char* to_string(SamplerKind k);
ExperimentKind experiment_from_string(const std::string& s);  // throws ValidationError
SamplerKind sampler_from_string(const std::string& s);        // throws ValidationError

/// Marginal histogram of one coordinate of the final pooled ensemble.
struct HistogramSpec {
    int coordinate = 0;
    int bins = 60;
    double lo = -3.0;
    double hi = 3.0;
};

struct EvalConfig {
    std::string reference;   // ensemble CSV path; empty disables KL evaluation
    int cadence = 10;        // evaluate when iteration % cadence == 0
    int pooling_window = 10; // recorded ensembles pooled per evaluation
    int k = 4;               // nearest-neighbour order of the KL estimator
    std::optional<HistogramSpec> histogram;
    void validate() const;
};

struct OutputConfig {
    std::string directory = "out";
    // Off by default so reruns are byte-identical; timings go in when asked.
    bool record_wall_time = false;
    void validate() const;
};

/// Long-run generation counts for make-reference (single proximal chain).
struct ReferenceConfig {
    int burn_in = 20000;
    int collect = 80000;
    int size = 1000;  // uniformly thinned from the collection phase
    void validate() const;
};

struct SweepConfig {
    std::vector<double> h_values;                            // sweep-h
    std::vector<std::pair<int, int>> particle_interim_pairs; // sweep-mn (N, M)
};

/// Two-tori geometry; symmetry axes are parallel to the third coordinate.
struct ToriGeometry {
    Torus t1{{10.0, 0.0, 0.0}, 10.0, 1.0};
    Torus t2{{-13.0, 0.0, 0.0}, 3.0, 1.0};
    double penalty = 100.0;
    ToriDomain domain() const { return ToriDomain(t1, t2); }
    void validate() const;
};

struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::custom;
    SamplerKind sampler = SamplerKind::zodps;

    /// "lasso", "tori", "quadratic:D", or "flat:D".
    std::string target = "lasso";

    int iterations = 300;  // authoritative; zodps.iterations is overwritten
    int chains = 100;      // independent chains for zodps-no-interaction
    std::vector<std::uint64_t> seeds = {1};

    ZodpsConfig zodps;
    RgoConfig rgo;
    InOutConfig inout;
    GaussianLassoTarget::Params lasso;
    ToriGeometry tori;
    SweepConfig sweep;
    ReferenceConfig reference;
    EvalConfig eval;
    OutputConfig output;

    void validate() const;  // throws ValidationError
};

/// Canonical JSON text: sorted keys, every field present, numbers in
/// shortest-round-trip form.  parse_config(dump_config(c)) reproduces c.
/// zodps.custom_schedule is API-only and never serialized.
std::string dump_config(const ExperimentConfig& cfg);
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);
void save_config(const std::string& path, const ExperimentConfig& cfg);

/// FNV-1a over the canonical dump; hex form goes into CSV metadata.
std::uint64_t config_hash(const ExperimentConfig& cfg);
std::string config_hash_hex(const ExperimentConfig& cfg);

enum class TargetKind { lasso, tori, quadratic, flat };
struct TargetSpec {
    TargetKind kind;
    int dim;  // the :D suffix for quadratic/flat; 0 for lasso/tori
};
TargetSpec parse_target_name(const std::string& name);  // throws ValidationError

/// Ambient dimension of the configured target.
int target_dim(const ExperimentConfig& cfg);

/// Instantiates the configured potential (lasso/tori params come from cfg).
std::unique_ptr<PotentialOracle> make_target(const ExperimentConfig& cfg);

/**
 * Named parameter sets mirroring the benchmark tables.  Desk scale trims the
 * interim-sample and reference-generation budgets for CI; `paper_scale`
 * restores the published values.
 */
ExperimentConfig preset(const std::string& name, bool paper_scale = false);
std::vector<std::string> preset_names();

} // namespace zodps
