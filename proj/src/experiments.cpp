#include "zodps/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <utility>

#include "zodps/baselines.hpp"
#include "zodps/csv.hpp"
#include "zodps/errors.hpp"
#include "zodps/rng.hpp"
#include "zodps/sampler.hpp"
#include "zodps/svg.hpp"

namespace zodps {

namespace fs = std::filesystem;

Ensemble standard_normal_ensemble(int n, int dim, std::uint64_t seed) {
    Ensemble out(n, dim);
    for (int i = 0; i < n; ++i) {
        RandomStream rs(SeedSpec{seed, 0, static_cast<std::uint32_t>(i), 0,
                                 Purpose::init_ensemble});
        rs.normals(out.particle(i));
    }
    return out;
}

namespace {

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (const double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double sample_var_of(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    const double m = mean_of(v);
    double s = 0.0;
    for (const double x : v) s += (x - m) * (x - m);
    return s / static_cast<double>(v.size() - 1);
}

/// Accumulates one seed's records: pooling-window ring, KL at the evaluation
/// cadence, occupancy for the tori target, optional wall clock.
class Recorder {
public:
    Recorder(const ExperimentConfig& cfg, const Ensemble* reference,
             const ToriDomain* domain, SeedRun& out, Exec exec)
        : cfg_(cfg), reference_(reference), domain_(domain), out_(out), exec_(exec),
          start_(std::chrono::steady_clock::now()) {}

    void observe(int iteration, const Ensemble& ensemble, long degenerate,
                 std::optional<long> rgo_rejections) {
        history_.push_back(ensemble);
        if (static_cast<int>(history_.size()) > cfg_.eval.pooling_window)
            history_.erase(history_.begin());

        RunRecord rec;
        rec.iteration = iteration;
        if (cfg_.output.record_wall_time)
            rec.wall_time =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
                    .count();
        rec.degenerate_events = degenerate;
        rec.rgo_rejections = rgo_rejections;
        if (domain_) rec.occupancy = torus_occupancy(ensemble, *domain_);
        if (reference_ && iteration % cfg_.eval.cadence == 0) {
            const PooledEnsemble pooled = pool_particles(history_, cfg_.eval.pooling_window);
            try {
                rec.kl = knn_kl(pooled.particles, *reference_, cfg_.eval.k, exec_).value;
            } catch (const std::invalid_argument& e) {
                // Mid-run evaluation failure (e.g. the ensemble shrank below
                // k+1 particles) is a runtime error, not an input error.
                throw std::runtime_error(std::string("KL evaluation failed at iteration ") +
                                         std::to_string(iteration) + ": " + e.what());
            }
        }
        out_.records.push_back(std::move(rec));
    }

    Ensemble pooled() const {
        return pool_particles(history_, cfg_.eval.pooling_window).particles;
    }

private:
    const ExperimentConfig& cfg_;
    const Ensemble* reference_;
    const ToriDomain* domain_;
    SeedRun& out_;
    Exec exec_;
    std::chrono::steady_clock::time_point start_;
    std::vector<Ensemble> history_;
};

void drive_zodps(const ExperimentConfig& cfg, std::uint64_t seed,
                 const PotentialOracle& oracle, Recorder& rec, SeedRun& out, Exec exec) {
    ZodpsConfig z = cfg.zodps;
    z.iterations = cfg.iterations;
    z.seed = seed;
    const Ensemble init = standard_normal_ensemble(z.particles, oracle.dim(), seed);
    ZodpsResult res = run_zodps(
        z, oracle, init,
        [&](const ZodpsIteration& it, const Ensemble& e) {
            rec.observe(it.iteration, e, it.degenerate_events, std::nullopt);
        },
        exec);
    out.final_ensemble = std::move(res.final_ensemble);
}

void drive_no_interaction(const ExperimentConfig& cfg, std::uint64_t seed,
                          const PotentialOracle& oracle, Recorder& rec, SeedRun& out,
                          Exec exec) {
    const int chains = cfg.chains;
    const int d = oracle.dim();

    // Chains are plain single-particle runs under derived master seeds; their
    // per-iteration snapshots are assembled into ensemble-shaped records so
    // the diagnostics are directly comparable with the interacting run.
    std::vector<std::vector<Ensemble>> snapshots(chains);
    std::vector<std::vector<long>> degenerate(chains);
    for (int c = 0; c < chains; ++c) {
        ZodpsConfig z = cfg.zodps;
        z.iterations = cfg.iterations;
        z.seed = derive_chain_seed(seed, static_cast<std::uint32_t>(c));
        const Ensemble init = standard_normal_ensemble(1, d, z.seed);
        snapshots[c].reserve(cfg.iterations);
        degenerate[c].reserve(cfg.iterations);
        run_zodps(
            z, oracle, init,
            [&](const ZodpsIteration& it, const Ensemble& e) {
                snapshots[c].push_back(e);
                degenerate[c].push_back(it.degenerate_events);
            },
            exec);
    }

    for (int i = 0; i < cfg.iterations; ++i) {
        Ensemble assembled(chains, d);
        long events = 0;
        for (int c = 0; c < chains; ++c) {
            std::memcpy(assembled.row(c), snapshots[c][i].row(0), sizeof(double) * d);
            events += degenerate[c][i];
        }
        rec.observe(i + 1, assembled, events, std::nullopt);
        if (i + 1 == cfg.iterations) out.final_ensemble = std::move(assembled);
    }
}

void drive_rgo(const ExperimentConfig& cfg, std::uint64_t seed,
               const PotentialOracle& oracle, Recorder& rec, SeedRun& out, Exec exec) {
    RgoConfig rc = cfg.rgo;
    rc.seed = seed;
    const Ensemble init = standard_normal_ensemble(rc.chains, oracle.dim(), seed);
    ProximalResult res = proximal_run(
        rc, oracle, init, cfg.iterations,
        [&](const Ensemble& e, const ProximalRecord& pr) {
            // Records carry the raw update count so thinned proximal curves
            // line up with other samplers at equal iteration numbers.
            rec.observe(pr.iteration * rc.thinning, e, 0, pr.rejections);
        },
        exec);
    out.final_ensemble = std::move(res.final_ensemble);
}

void drive_inout(const ExperimentConfig& cfg, std::uint64_t seed,
                 const ToriDomain& domain, Recorder& rec, SeedRun& out, Exec exec) {
    InOutConfig ic = cfg.inout;
    ic.seed = seed;
    const Ensemble init = standard_normal_ensemble(ic.chains, 3, seed);
    InOutResult res = in_and_out_run(
        ic, domain, init, cfg.iterations,
        [&](const Ensemble& e, const InOutRecord& ir) {
            rec.observe(ir.iteration, e, 0, std::nullopt);
        },
        exec);
    out.final_ensemble = std::move(res.final_ensemble);
}

// ---- file emission ------------------------------------------------------

csv::Metadata base_metadata(const ExperimentConfig& cfg, std::uint64_t seed) {
    return {{"seed", std::to_string(seed)},
            {"config", config_hash_hex(cfg)},
            {"sampler", to_string(cfg.sampler)}};
}

void write_histogram_file(const std::string& path, const Ensemble& pooled,
                          const HistogramSpec& spec, const csv::Metadata& meta) {
    const std::vector<long> counts =
        marginal_histogram(pooled, spec.coordinate, spec.bins, spec.lo, spec.hi);
    std::ofstream outf(path, std::ios::binary);
    if (!outf) throw ValidationError("cannot open for writing: " + path);
    for (const auto& [k, v] : meta) outf << "# " << k << ": " << v << "\n";
    outf << "# coordinate: " << spec.coordinate << "\n";
    outf << "lo,hi,count\n";
    const double width = (spec.hi - spec.lo) / spec.bins;
    for (int b = 0; b < spec.bins; ++b)
        outf << csv::format_double(spec.lo + b * width) << ','
             << csv::format_double(spec.lo + (b + 1) * width) << ',' << counts[b]
             << "\n";
    if (!outf.good()) throw ValidationError("write failed: " + path);
}

void write_seed_outputs(const ExperimentConfig& cfg, std::uint64_t seed,
                        const SeedRun& run, const std::string& dir) {
    const std::string tag = std::to_string(seed);
    csv::Metadata meta = base_metadata(cfg, seed);
    csv::write_run_records(dir + "/records_seed" + tag + ".csv", run.records, meta);
    if (!run.completed) return;

    csv::Metadata ens_meta = meta;
    ens_meta.emplace_back("iteration", std::to_string(cfg.iterations));
    csv::write_ensemble(dir + "/final_seed" + tag + ".csv", run.final_ensemble, ens_meta);
    if (cfg.eval.histogram)
        write_histogram_file(dir + "/histogram_seed" + tag + ".csv", run.final_pooled,
                             *cfg.eval.histogram, meta);
}

std::string opt_cell(const std::optional<double>& v) {
    return v ? csv::format_double(*v) : std::string();
}

void write_aggregate_csv(const std::string& path, const ExperimentConfig& cfg,
                         std::span<const AggregatePoint> agg) {
    std::ofstream outf(path, std::ios::binary);
    if (!outf) throw ValidationError("cannot open for writing: " + path);
    outf << "# config: " << config_hash_hex(cfg) << "\n";
    outf << "# seeds: " << cfg.seeds.size() << "\n";
    outf << "iteration,kl_mean,kl_var,occ_t1_mean,occ_t2_mean,occ_out_mean,"
            "degenerate_mean\n";
    for (const AggregatePoint& p : agg)
        outf << p.iteration << ',' << opt_cell(p.kl_mean) << ',' << opt_cell(p.kl_var)
             << ',' << opt_cell(p.occ_t1_mean) << ',' << opt_cell(p.occ_t2_mean) << ','
             << opt_cell(p.occ_out_mean) << ',' << csv::format_double(p.degenerate_mean)
             << "\n";
    if (!outf.good()) throw ValidationError("write failed: " + path);
}

/// KL curve with a one-standard-deviation band when available; occupancy
/// curves otherwise; degenerate-event counts as a last resort, so every run
/// leaves a plot.
svg::Series kl_series(std::span<const AggregatePoint> agg, const std::string& label,
                      std::size_t color_index) {
    svg::Series s;
    s.label = label;
    s.color = svg::series_color(color_index);
    for (const AggregatePoint& p : agg) {
        if (!p.kl_mean) continue;
        s.x.push_back(p.iteration);
        s.y.push_back(*p.kl_mean);
        const double sd = p.kl_var ? std::sqrt(*p.kl_var) : 0.0;
        s.band_low.push_back(*p.kl_mean - sd);
        s.band_high.push_back(*p.kl_mean + sd);
    }
    return s;
}

void write_convergence_svg(const std::string& path, const ExperimentConfig& cfg,
                           std::span<const AggregatePoint> agg) {
    svg::ChartSpec spec;
    spec.x_label = "iteration";
    const std::string name =
        std::string(to_string(cfg.experiment)) + " / " + to_string(cfg.sampler);

    std::vector<svg::Series> series;
    svg::Series kl = kl_series(agg, "KL estimate", 0);
    if (!kl.x.empty()) {
        spec.title = name + ": KL vs reference";
        spec.y_label = "KL estimate (nats)";
        series.push_back(std::move(kl));
    } else if (!agg.empty() && agg.front().occ_t1_mean) {
        spec.title = name + ": torus occupancy";
        spec.y_label = "mean particles";
        const char* labels[3] = {"T1", "T2", "outside"};
        for (int which = 0; which < 3; ++which) {
            svg::Series s;
            s.label = labels[which];
            s.color = svg::series_color(which);
            for (const AggregatePoint& p : agg) {
                const std::optional<double>& v = which == 0   ? p.occ_t1_mean
                                                 : which == 1 ? p.occ_t2_mean
                                                              : p.occ_out_mean;
                if (!v) continue;
                s.x.push_back(p.iteration);
                s.y.push_back(*v);
            }
            series.push_back(std::move(s));
        }
    } else {
        spec.title = name + ": degenerate interim batches";
        spec.y_label = "mean events";
        svg::Series s;
        s.label = "degenerate";
        s.color = svg::series_color(0);
        for (const AggregatePoint& p : agg) {
            s.x.push_back(p.iteration);
            s.y.push_back(p.degenerate_mean);
        }
        series.push_back(std::move(s));
    }
    svg::write_chart(path, spec, series);
}

std::vector<AggregatePoint> aggregate_runs(const std::vector<SeedRun>& runs) {
    std::vector<AggregatePoint> out;
    if (runs.empty()) return out;
    const std::size_t rows = runs.front().records.size();
    for (const SeedRun& r : runs)
        if (r.records.size() != rows)
            throw std::logic_error("aggregate: seed runs recorded different lengths");

    out.reserve(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        AggregatePoint p;
        p.iteration = runs.front().records[i].iteration;
        std::vector<double> kls, t1, t2, outside, degen;
        for (const SeedRun& r : runs) {
            const RunRecord& rec = r.records[i];
            if (rec.iteration != p.iteration)
                throw std::logic_error("aggregate: seed runs disagree on iterations");
            if (rec.kl) kls.push_back(*rec.kl);
            if (rec.occupancy) {
                t1.push_back(static_cast<double>(rec.occupancy->t1));
                t2.push_back(static_cast<double>(rec.occupancy->t2));
                outside.push_back(static_cast<double>(rec.occupancy->outside));
            }
            degen.push_back(static_cast<double>(rec.degenerate_events));
        }
        if (!kls.empty()) {
            if (kls.size() != runs.size())
                throw std::logic_error("aggregate: KL present for only some seeds");
            p.kl_mean = mean_of(kls);
            p.kl_var = sample_var_of(kls);
        }
        if (!t1.empty()) {
            if (t1.size() != runs.size())
                throw std::logic_error("aggregate: occupancy present for only some seeds");
            p.occ_t1_mean = mean_of(t1);
            p.occ_t2_mean = mean_of(t2);
            p.occ_out_mean = mean_of(outside);
        }
        p.degenerate_mean = mean_of(degen);
        out.push_back(std::move(p));
    }
    return out;
}

void ensure_directory(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw ValidationError("cannot create output directory '" + dir +
                              "': " + ec.message());
}

Ensemble load_reference(const ExperimentConfig& cfg) {
    Ensemble ref = csv::read_ensemble(cfg.eval.reference).ensemble;
    if (ref.dim() != target_dim(cfg))
        throw ValidationError("reference dimension " + std::to_string(ref.dim()) +
                              " does not match the target dimension " +
                              std::to_string(target_dim(cfg)));
    if (ref.n() <= cfg.eval.k)
        throw ValidationError("reference has too few particles for k = " +
                              std::to_string(cfg.eval.k));
    return ref;
}

} // namespace

void run_single_seed(const ExperimentConfig& cfg, std::uint64_t seed,
                     const Ensemble* reference, SeedRun& out, Exec exec) {
    cfg.validate();
    const std::unique_ptr<PotentialOracle> oracle = make_target(cfg);
    if (reference && reference->dim() != oracle->dim())
        throw ValidationError("reference dimension does not match the target");

    const bool on_tori = parse_target_name(cfg.target).kind == TargetKind::tori;
    const ToriDomain domain = cfg.tori.domain();
    Recorder rec(cfg, reference, on_tori ? &domain : nullptr, out, exec);

    switch (cfg.sampler) {
        case SamplerKind::zodps:
            drive_zodps(cfg, seed, *oracle, rec, out, exec);
            break;
        case SamplerKind::zodps_no_interaction:
            drive_no_interaction(cfg, seed, *oracle, rec, out, exec);
            break;
        case SamplerKind::rgo:
            drive_rgo(cfg, seed, *oracle, rec, out, exec);
            break;
        case SamplerKind::inout:
            drive_inout(cfg, seed, domain, rec, out, exec);
            break;
    }
    out.final_pooled = rec.pooled();
    out.completed = true;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, Exec exec) {
    cfg.validate();
    const std::string dir = cfg.output.directory;
    ensure_directory(dir);
    save_config(dir + "/config.json", cfg);

    Ensemble reference;
    const bool have_ref = !cfg.eval.reference.empty();
    if (have_ref) reference = load_reference(cfg);

    SeriesResult series;
    series.directory = dir;
    for (const std::uint64_t seed : cfg.seeds) {
        SeedRun run;
        try {
            run_single_seed(cfg, seed, have_ref ? &reference : nullptr, run, exec);
        } catch (...) {
            // Flush what this seed produced before the error surfaces.
            write_seed_outputs(cfg, seed, run, dir);
            throw;
        }
        write_seed_outputs(cfg, seed, run, dir);
        series.seed_runs.push_back(std::move(run));
    }
    series.aggregate = aggregate_runs(series.seed_runs);
    write_aggregate_csv(dir + "/aggregate.csv", cfg, series.aggregate);
    write_convergence_svg(dir + "/convergence.svg", cfg, series.aggregate);

    ExperimentResult result;
    result.series.push_back(std::move(series));
    return result;
}

ExperimentConfig sweep_variant_h(const ExperimentConfig& base, double h) {
    ExperimentConfig v = base;
    v.experiment = ExperimentKind::custom;
    v.sweep = SweepConfig{};
    v.zodps.h = h;
    v.output.directory = base.output.directory + "/h_" + csv::format_double(h);
    return v;
}

ExperimentConfig sweep_variant_nm(const ExperimentConfig& base, int particles,
                                  int interim) {
    ExperimentConfig v = base;
    v.experiment = ExperimentKind::custom;
    v.sweep = SweepConfig{};
    v.zodps.particles = particles;
    v.zodps.interim = interim;
    v.output.directory = base.output.directory + "/n" + std::to_string(particles) +
                         "_m" + std::to_string(interim);
    return v;
}

namespace {

void write_sweep_csv(const std::string& path, const ExperimentConfig& base,
                     std::span<const SeriesResult> series) {
    std::ofstream outf(path, std::ios::binary);
    if (!outf) throw ValidationError("cannot open for writing: " + path);
    outf << "# config: " << config_hash_hex(base) << "\n";
    outf << "# seeds: " << base.seeds.size() << "\n";
    outf << "series,iteration,kl_mean,kl_var\n";
    for (const SeriesResult& s : series)
        for (const AggregatePoint& p : s.aggregate)
            outf << s.label << ',' << p.iteration << ',' << opt_cell(p.kl_mean) << ','
                 << opt_cell(p.kl_var) << "\n";
    if (!outf.good()) throw ValidationError("write failed: " + path);
}

void write_sweep_svg(const std::string& path, const std::string& title,
                     std::span<const SeriesResult> series) {
    svg::ChartSpec spec;
    spec.title = title;
    spec.x_label = "iteration";
    spec.y_label = "KL estimate (nats)";
    std::vector<svg::Series> lines;
    for (std::size_t i = 0; i < series.size(); ++i) {
        svg::Series s = kl_series(series[i].aggregate, series[i].label, i);
        if (!s.x.empty()) lines.push_back(std::move(s));
    }
    if (lines.empty()) {
        // No KL anywhere (no reference configured): plot degenerate counts so
        // the sweep still leaves a chart.
        spec.y_label = "mean degenerate events";
        for (std::size_t i = 0; i < series.size(); ++i) {
            svg::Series s;
            s.label = series[i].label;
            s.color = svg::series_color(i);
            for (const AggregatePoint& p : series[i].aggregate) {
                s.x.push_back(p.iteration);
                s.y.push_back(p.degenerate_mean);
            }
            lines.push_back(std::move(s));
        }
    }
    svg::write_chart(path, spec, lines);
}

} // namespace

ExperimentResult sweep_step_size(const ExperimentConfig& base, Exec exec) {
    if (base.sweep.h_values.empty())
        throw ValidationError("sweep-h requires a nonempty sweep.h_values list");
    for (const double h : base.sweep.h_values)
        if (!(h > 0.0)) throw ValidationError("sweep.h_values entries must be positive");
    for (const double h : base.sweep.h_values)
        sweep_variant_h(base, h).validate();  // reject everything before any run

    ensure_directory(base.output.directory);
    save_config(base.output.directory + "/config.json", base);

    ExperimentResult result;
    for (const double h : base.sweep.h_values) {
        ExperimentResult sub = run_experiment(sweep_variant_h(base, h), exec);
        sub.series.front().label = "h=" + csv::format_double(h);
        result.series.push_back(std::move(sub.series.front()));
    }
    write_sweep_csv(base.output.directory + "/sweep.csv", base, result.series);
    write_sweep_svg(base.output.directory + "/sweep.svg", "step-size sweep",
                    result.series);
    return result;
}

ExperimentResult sweep_particle_interim(const ExperimentConfig& base, Exec exec) {
    const auto& pairs = base.sweep.particle_interim_pairs;
    if (pairs.empty())
        throw ValidationError("sweep-mn requires a nonempty particle/interim pair list");
    const long long product = 1LL * pairs.front().first * pairs.front().second;
    for (const auto& [n, m] : pairs) {
        if (n < 1 || m < 1)
            throw ValidationError("sweep pairs must have positive particles and interim");
        if (1LL * n * m != product)
            throw ValidationError(
                "sweep.particle_interim_pairs must share one particles*interim product");
    }
    for (const auto& [n, m] : pairs) sweep_variant_nm(base, n, m).validate();

    ensure_directory(base.output.directory);
    save_config(base.output.directory + "/config.json", base);

    ExperimentResult result;
    for (const auto& [n, m] : pairs) {
        ExperimentResult sub = run_experiment(sweep_variant_nm(base, n, m), exec);
        sub.series.front().label =
            "N=" + std::to_string(n) + ",M=" + std::to_string(m);
        result.series.push_back(std::move(sub.series.front()));
    }
    write_sweep_csv(base.output.directory + "/sweep.csv", base, result.series);
    write_sweep_svg(base.output.directory + "/sweep.svg", "particle/interim sweep",
                    result.series);
    return result;
}

ReferenceResult generate_reference(const ExperimentConfig& cfg, const std::string& path,
                                   Exec exec) {
    (void)exec;  // a single chain is inherently sequential
    cfg.validate();
    const std::unique_ptr<PotentialOracle> oracle = make_target(cfg);
    const int d = oracle->dim();
    const std::uint64_t seed = cfg.seeds.front();

    RgoConfig rc = cfg.rgo;
    rc.chains = 1;
    rc.seed = seed;
    rc.validate();

    const long burn = cfg.reference.burn_in;
    const long collect = cfg.reference.collect;
    const long size = cfg.reference.size;
    // Pick the state after updates burn + 1 + floor(j * collect / size),
    // j = 0..size-1: uniform thinning over the collection phase.
    std::vector<long> picks(size);
    for (long j = 0; j < size; ++j) picks[j] = burn + 1 + j * collect / size;

    std::vector<double> x(d);
    {
        const Ensemble init = standard_normal_ensemble(1, d, seed);
        std::copy(init.row(0), init.row(0) + d, x.begin());
    }

    Ensemble refs(static_cast<int>(size), d);
    std::size_t next = 0;
    RgoStepStats stats;
    const double step_sd = std::sqrt(rc.eta);
    const long total = burn + collect;
    for (long u = 1; u <= total; ++u) {
        const auto iter = static_cast<std::uint32_t>(u);
        const std::vector<double> y =
            gaussian_draw(x, step_sd, SeedSpec{seed, iter, 0, 0, Purpose::rgo_forward});
        x = rgo_step(y, rc, *oracle, SeedSpec{seed, iter, 0, 0, Purpose::rgo_proposal},
                     &stats);
        while (next < picks.size() && picks[next] == u) {
            std::copy(x.begin(), x.end(), refs.row(static_cast<int>(next)));
            ++next;
        }
    }
    if (next != picks.size())
        throw std::logic_error("reference thinning missed a pick");

    const fs::path parent = fs::path(path).parent_path();
    if (!parent.empty()) ensure_directory(parent.string());
    csv::Metadata meta = {{"seed", std::to_string(seed)},
                          {"config", config_hash_hex(cfg)},
                          {"iteration", std::to_string(total)},
                          {"target", cfg.target},
                          {"burn_in", std::to_string(burn)},
                          {"collect", std::to_string(collect)},
                          {"size", std::to_string(size)}};
    csv::write_ensemble(path, refs, meta);
    save_config(path + ".config.json", cfg);

    ReferenceResult result;
    result.ensemble = std::move(refs);
    result.rejections = stats.rejections;
    result.clamps = stats.clamps;
    return result;
}

ReferenceResult generate_exact_reference(const ExperimentConfig& cfg,
                                         const std::string& path) {
    cfg.validate();
    const std::unique_ptr<PotentialOracle> oracle = make_target(cfg);
    const auto* lasso = dynamic_cast<const GaussianLassoTarget*>(oracle.get());
    if (lasso == nullptr)
        throw ValidationError("exact reference: target '" + cfg.target +
                              "' has no closed-form sampler (only gaussian-lasso does)");
    const std::uint64_t seed = cfg.seeds.front();
    Ensemble refs = lasso->exact_sample(cfg.reference.size, seed);

    const fs::path parent = fs::path(path).parent_path();
    if (!parent.empty()) ensure_directory(parent.string());
    const csv::Metadata meta = {{"seed", std::to_string(seed)},
                                {"config", config_hash_hex(cfg)},
                                {"target", cfg.target},
                                {"size", std::to_string(cfg.reference.size)},
                                {"method", "exact-mixture"}};
    csv::write_ensemble(path, refs, meta);
    save_config(path + ".config.json", cfg);

    ReferenceResult result;
    result.ensemble = std::move(refs);
    return result;
}

KlEstimate estimate_kl_files(const std::string& sample_path,
                             const std::string& reference_path, int k, Exec exec) {
    const Ensemble p = csv::read_ensemble(sample_path).ensemble;
    const Ensemble q = csv::read_ensemble(reference_path).ensemble;
    return knn_kl(p, q, k, exec);
}

} // namespace zodps
