#pragma once

/**
 * Diffusive proximal sampler with a zeroth-order (evaluation-only) score
 * estimator.
 *
 * One outer iteration maps the particle ensemble X through
 *
 *   forward:  Y = X + sqrt(h) xi,   Z_T = X + sqrt(h) xi'
 *   reverse:  for t = T..1, an Euler-Maruyama substep of the time-reversed
 *             heat flow whose score is estimated by reweighting interim
 *             samples from a Gaussian-mixture posterior around Y.
 *
 * All randomness is addressed by (seed, iteration, particle, substep,
 * purpose), so runs are reproducible bit-for-bit at any thread count.
 */

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "zodps/ensemble.hpp"
#include "zodps/exec.hpp"
#include "zodps/potentials.hpp"
#include "zodps/rng.hpp"
#include "zodps/schedule.hpp"

namespace zodps {

struct ZodpsConfig {
    double h = 0.1;           // forward perturbation variance (macro step)
    int iterations = 300;     // outer iterations K
    int substeps = 10;        // reverse discretization T
    int particles = 100;      // ensemble size N
    int interim = 1000;       // interim samples per score estimate M
    double sigma_min2 = 0.0;  // variance floor of the linear schedule
    std::uint64_t seed = 0;

    /// Explicit ladder overriding the default linear one; must still end at h
    /// with `substeps` steps.
    std::optional<NoiseSchedule> custom_schedule;

    NoiseSchedule schedule() const;
    void validate() const;  // throws ValidationError
};

/// Forward half-step: both perturbations use independent streams, so
/// Y != Z_T almost surely even though they share the mean X.
struct ForwardResult {
    Ensemble y;  // mixture centers for the reverse flow
    Ensemble z;  // initial reverse state Z_T
};
ForwardResult forward_step(const Ensemble& x, double h, std::uint64_t seed,
                           std::uint32_t iteration, Exec exec = Exec::parallel);

/// log (1/N) sum_i N(y; x_i, h I_d)
double mixture_log_density(std::span<const double> y, const Ensemble& x, double h);

/// Batched over query rows; out.size() == queries.n().
void mixture_log_density_batch(const Ensemble& queries, const Ensemble& x, double h,
                               std::span<double> out, Exec exec = Exec::parallel);

/**
 * Parameters of the exact posterior mixture
 *   p(x | z) ∝ sum_j w_j(z) N(x; m_j(z), sigma-bar^2 I)
 * for prior component N(y_j, h I) seen through the Gaussian channel of
 * variance sigma_t^2:
 *   sigma-bar^2 = h sigma_t^2 / (h + sigma_t^2)
 *   m_j(z)      = (sigma_t^2 y_j + h z) / (h + sigma_t^2)
 *   w_j(z)      ∝ N(z; y_j, (h + sigma_t^2) I) / q_hat(y_j | X)
 * log_weights are normalized (their logsumexp is zero).
 */
struct PosteriorMixture {
    double variance = 0.0;            // sigma-bar^2
    std::vector<double> means;        // N x d, row-major
    std::vector<double> log_weights;  // N, normalized
};

PosteriorMixture posterior_params(std::span<const double> z, const Ensemble& y,
                                  const Ensemble& x, double h, double sigma_t2);

/// Same, with the mixture log densities log q_hat(y_j | X) precomputed
/// (they do not depend on z or sigma_t^2, so callers hoist them).
PosteriorMixture posterior_params(std::span<const double> z, const Ensemble& y,
                                  double h, double sigma_t2,
                                  std::span<const double> log_qhat);

struct ScoreEstimate {
    std::vector<double> drift;  // estimated score at z; zero when degenerate
    bool degenerate = false;    // every interim weight vanished
};

/**
 * Zeroth-order score estimate at a single point: draw `interim` samples from
 * the posterior mixture, reweight by exp(-f), average the whitened
 * displacements.  Consumes the posterior_component / posterior_interim
 * streams at the given address.
 */
ScoreEstimate estimate_score(std::span<const double> z, const Ensemble& y,
                             const Ensemble& x, double h, double sigma_t2, int interim,
                             const PotentialOracle& oracle, const SeedSpec& address,
                             Exec exec = Exec::serial);

struct ReverseStats {
    long degenerate_events = 0;
    long particle_substeps = 0;
};

/**
 * One reverse substep t -> t-1 applied to every particle of zt in place.
 * This is the hot kernel: interim sampling per particle, one batched oracle
 * call of size N*M, then the reweighted drift and the Euler-Maruyama update.
 */
ReverseStats reverse_substep(Ensemble& zt, const Ensemble& y,
                             std::span<const double> log_qhat, double h,
                             const NoiseSchedule& schedule, int t, int interim,
                             const PotentialOracle& oracle, std::uint64_t seed,
                             std::uint32_t iteration, Exec exec = Exec::parallel);

/// Full reverse pass t = T..1.  z holds Z_T on entry and Z_0 on exit.
ReverseStats reverse_step(Ensemble& z, const Ensemble& y, const Ensemble& x,
                          const ZodpsConfig& cfg, const PotentialOracle& oracle,
                          std::uint32_t iteration, Exec exec = Exec::parallel);

struct ZodpsIteration {
    int iteration = 0;            // 1-based count of completed outer iterations
    long degenerate_events = 0;   // within this iteration
};
using ZodpsObserver = std::function<void(const ZodpsIteration&, const Ensemble&)>;

struct ZodpsResult {
    Ensemble final_ensemble;
    long degenerate_events = 0;
    long particle_substeps = 0;
};

/// K outer iterations from `init` (which must match cfg.particles and the
/// oracle dimension).  The observer sees the ensemble after each iteration.
ZodpsResult run_zodps(const ZodpsConfig& cfg, const PotentialOracle& oracle,
                      const Ensemble& init, const ZodpsObserver& observer = {},
                      Exec exec = Exec::parallel);

} // namespace zodps
