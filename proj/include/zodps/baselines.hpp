#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "zodps/ensemble.hpp"
#include "zodps/exec.hpp"
#include "zodps/potentials.hpp"
#include "zodps/rng.hpp"

namespace zodps {

/**
 * Proximal sampler driven by a rejection-sampling restricted Gaussian
 * oracle.  One raw update per chain is
 *
 *   y ~ N(x, eta I),   x <- sample of  pi(x | y) ~ exp(-f(x) - |x-y|^2/(2 eta)).
 *
 * The oracle draw first locates x* = argmin f(x) + |x-y|^2/(2 eta) with a
 * derivative-free simplex search, then rejection-samples with proposal
 * N(x*, eta I) and acceptance exp(-(f(x) - f(x*) - u.(x-x*) - slack)),
 * where u = (y - x*)/eta is the subgradient of f at the optimum.  The
 * linear term recenters the proposal onto y, so accepted draws follow the
 * conditional exactly whenever the tangent plane at x* minorizes f.
 * Acceptance values above one are clamped and counted: a nonzero clamp
 * count flags minorant violations (non-convex potential, or the simplex
 * search stopping short), i.e. the draw is only approximately exact.
 */
struct RgoConfig {
    double eta = 1.0 / 135.0;     // proximal step size
    int chains = 100;             // independent chains
    int thinning = 10;            // raw updates per reported iteration
    long max_rejections = 100000; // per-oracle-call rejection budget
    int optimizer_budget = 200;   // objective evaluations for the local search
    double slack = 0.0;           // raises the acceptance minorant
    std::uint64_t seed = 0;

    void validate() const;  // throws ValidationError
};

struct RgoStepStats {
    long rejections = 0;      // rejected proposals (accumulates across calls)
    long clamps = 0;          // acceptance probabilities clamped to 1
    long optimizer_evals = 0; // local-search objective evaluations
};

/**
 * One restricted-Gaussian-oracle draw for the proximal target centered at y.
 * `where` addresses the randomness; its purpose field is ignored (proposal
 * and accept streams are derived internally).  Throws RgoStuckError once
 * cfg.max_rejections proposals have been rejected.
 */
std::vector<double> rgo_step(std::span<const double> y, const RgoConfig& cfg,
                             const PotentialOracle& oracle, const SeedSpec& where,
                             RgoStepStats* stats = nullptr);

struct ProximalRecord {
    int iteration = 0;   // 1-based reported (thinned) iteration
    int survivors = 0;   // chains still alive
    long rejections = 0; // oracle rejections within this reported block
    long clamps = 0;     // acceptance clamps within this reported block
};

using ProximalObserver = std::function<void(const Ensemble&, const ProximalRecord&)>;

struct ProximalResult {
    Ensemble final_ensemble;          // surviving chains, original order
    std::vector<int> aborted_chains;  // chains that exhausted max_rejections
    long total_rejections = 0;
    long total_clamps = 0;
};

/**
 * Runs `updates` raw proximal updates on cfg.chains independent chains
 * (init must hold one row per chain).  The observer fires after every
 * cfg.thinning-th update, i.e. floor(updates / thinning) times, with the
 * surviving ensemble.  A chain whose oracle call exhausts its rejection
 * budget is dropped; the run continues on the remaining chains.
 */
ProximalResult proximal_run(const RgoConfig& cfg, const PotentialOracle& oracle,
                            const Ensemble& init, int updates,
                            const ProximalObserver& observer = ProximalObserver(),
                            Exec exec = Exec::parallel);

/**
 * In-and-Out sampler for uniform sampling over a membership domain.
 * One update: y ~ N(x, h I), then up to `retries` draws x' ~ N(y, h I);
 * the first draw inside the domain is the new state.  A particle whose
 * retries all miss is discarded.
 */
struct InOutConfig {
    double h = 1.0;       // proposal variance
    long retries = 10000; // resampling attempts per update
    int chains = 1000;
    std::uint64_t seed = 0;

    void validate() const;  // throws ValidationError
};

using Membership = std::function<bool(std::span<const double>)>;

/// One In-and-Out update; nullopt means the particle is discarded.
std::optional<std::vector<double>> in_and_out_step(std::span<const double> x,
                                                   const InOutConfig& cfg,
                                                   const Membership& member,
                                                   const SeedSpec& where);

struct InOutRecord {
    int iteration = 0;
    int survivors = 0;
    long discarded_so_far = 0;
};

using InOutObserver = std::function<void(const Ensemble&, const InOutRecord&)>;

struct InOutResult {
    Ensemble final_ensemble;            // survivors, original chain order
    std::vector<int> surviving_chains;  // original chain index per surviving row
    long discarded = 0;
    int iterations_run = 0;  // < requested iff every chain was discarded
};

/**
 * Iterates in_and_out_step over cfg.chains chains (init holds one row per
 * chain).  Discarded chains shrink the ensemble; the observer receives the
 * surviving ensemble after every iteration.  An empty ensemble ends the run
 * right after its observer call.
 */
InOutResult in_and_out_run(const InOutConfig& cfg, const Membership& member,
                           const Ensemble& init, int iterations,
                           const InOutObserver& observer = InOutObserver(),
                           Exec exec = Exec::parallel);

/// Convenience overloads for the two-tori benchmark geometry.
std::optional<std::vector<double>> in_and_out_step(std::span<const double> x,
                                                   const InOutConfig& cfg,
                                                   const ToriDomain& domain,
                                                   const SeedSpec& where);
InOutResult in_and_out_run(const InOutConfig& cfg, const ToriDomain& domain,
                           const Ensemble& init, int iterations,
                           const InOutObserver& observer = InOutObserver(),
                           Exec exec = Exec::parallel);

} // namespace zodps
