#include "zodps/sampler.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "zodps/errors.hpp"
#include "zodps/numeric.hpp"

namespace zodps {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

inline double sq_dist(std::span<const double> a, const double* b, int d) {
    double s = 0.0;
    for (int k = 0; k < d; ++k) {
        const double diff = a[static_cast<std::size_t>(k)] - b[k];
        s += diff * diff;
    }
    return s;
}

// Shared core of posterior_params and the substep kernel; writes the
// UNnormalized log weights and the component means, returns their logsumexp.
double posterior_into(std::span<const double> z, const Ensemble& y, double h,
                      double sigma_t2, std::span<const double> log_qhat,
                      std::span<double> means, std::span<double> log_weights) {
    const int n = y.n();
    const int d = y.dim();
    const double conv = h + sigma_t2;
    const double log_norm = -0.5 * d * std::log(2.0 * std::numbers::pi * conv);
    for (int j = 0; j < n; ++j) {
        const double* yj = y.row(j);
        log_weights[static_cast<std::size_t>(j)] =
            log_norm - sq_dist(z, yj, d) / (2.0 * conv) -
            log_qhat[static_cast<std::size_t>(j)];
        double* mj = means.data() + static_cast<std::size_t>(j) * d;
        for (int k = 0; k < d; ++k)
            mj[k] = (sigma_t2 * yj[k] + h * z[static_cast<std::size_t>(k)]) / conv;
    }
    return logsumexp(log_weights);
}

// Softmax-weighted displacement average; returns true when every interim
// weight vanished (drift left at zero).  The summation order is fixed so
// serial and parallel runs agree bitwise.
bool drift_from_interim(std::span<const double> points, std::span<const double> f_values,
                        std::span<const double> z, double sigma_t2,
                        std::span<double> drift) {
    const int m = static_cast<int>(f_values.size());
    const int d = static_cast<int>(z.size());
    double vmax = kNegInf;
    for (double f : f_values) {
        if (std::isnan(f))
            throw std::invalid_argument("oracle returned NaN in a score estimate");
        vmax = std::max(vmax, -f);
    }
    std::fill(drift.begin(), drift.end(), 0.0);
    if (vmax == kNegInf) return true;
    double total = 0.0;
    for (int l = 0; l < m; ++l) {
        const double w = std::exp(-f_values[static_cast<std::size_t>(l)] - vmax);
        total += w;
        const double* pt = points.data() + static_cast<std::size_t>(l) * d;
        for (int k = 0; k < d; ++k)
            drift[static_cast<std::size_t>(k)] += w * (pt[k] - z[static_cast<std::size_t>(k)]);
    }
    const double inv = 1.0 / (total * sigma_t2);
    for (int k = 0; k < d; ++k) drift[static_cast<std::size_t>(k)] *= inv;
    return false;
}

// Per-thread workspace of the substep kernel.
struct Scratch {
    Scratch(int n_centers, int d)
        : means(static_cast<std::size_t>(n_centers) * d),
          log_weights(static_cast<std::size_t>(n_centers)),
          drift(static_cast<std::size_t>(d)) {}
    std::vector<double> means;
    std::vector<double> log_weights;
    std::vector<double> drift;
    std::vector<int> picks;
};

} // namespace

NoiseSchedule ZodpsConfig::schedule() const {
    if (custom_schedule) return *custom_schedule;
    return NoiseSchedule::linear(sigma_min2, h, substeps);
}

void ZodpsConfig::validate() const {
    if (!(h > 0.0)) throw ValidationError("zodps config: h must be > 0");
    if (iterations < 0) throw ValidationError("zodps config: negative iteration count");
    if (substeps < 1) throw ValidationError("zodps config: substeps must be >= 1");
    if (particles < 1) throw ValidationError("zodps config: particles must be >= 1");
    if (interim < 1) throw ValidationError("zodps config: interim samples must be >= 1");
    if (!(sigma_min2 >= 0.0) || sigma_min2 >= h)
        throw ValidationError("zodps config: need 0 <= sigma_min2 < h");
    if (custom_schedule) {
        if (custom_schedule->steps() != substeps)
            throw ValidationError("zodps config: custom schedule has wrong step count");
        if (custom_schedule->terminal() != h)
            throw ValidationError("zodps config: custom schedule must end at h");
    } else {
        (void)schedule();  // let NoiseSchedule's own checks run
    }
}

ForwardResult forward_step(const Ensemble& x, double h, std::uint64_t seed,
                           std::uint32_t iteration, Exec exec) {
    if (!(h >= 0.0)) throw std::invalid_argument("forward_step: h must be >= 0");
    const int n = x.n();
    const int d = x.dim();
    ForwardResult out{Ensemble(n, d), Ensemble(n, d)};
    const double s = std::sqrt(h);
    auto body = [&](int i) {
        const std::uint32_t p = static_cast<std::uint32_t>(i);
        RandomStream ry(SeedSpec{seed, iteration, p, 0, Purpose::forward_y});
        RandomStream rz(SeedSpec{seed, iteration, p, 0, Purpose::forward_z});
        gaussian_draw(x.particle(i), s, ry, out.y.particle(i));
        gaussian_draw(x.particle(i), s, rz, out.z.particle(i));
    };
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (int i = 0; i < n; ++i) body(i);
    } else {
        for (int i = 0; i < n; ++i) body(i);
    }
    return out;
}

double mixture_log_density(std::span<const double> y, const Ensemble& x, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("mixture_log_density: h must be > 0");
    const int n = x.n();
    const int d = x.dim();
    if (n < 1) throw std::invalid_argument("mixture_log_density: empty ensemble");
    if (static_cast<int>(y.size()) != d)
        throw std::invalid_argument("mixture_log_density: dimension mismatch");
    double emax = kNegInf;
    for (int i = 0; i < n; ++i) emax = std::max(emax, -sq_dist(y, x.row(i), d));
    double acc = 0.0;
    for (int i = 0; i < n; ++i)
        acc += std::exp((-sq_dist(y, x.row(i), d) - emax) / (2.0 * h));
    return emax / (2.0 * h) + std::log(acc) -
           0.5 * d * std::log(2.0 * std::numbers::pi * h) -
           std::log(static_cast<double>(n));
}

void mixture_log_density_batch(const Ensemble& queries, const Ensemble& x, double h,
                               std::span<double> out, Exec exec) {
    if (static_cast<int>(out.size()) != queries.n())
        throw std::invalid_argument("mixture_log_density_batch: output size mismatch");
    const int q = queries.n();
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (int i = 0; i < q; ++i)
            out[static_cast<std::size_t>(i)] = mixture_log_density(queries.particle(i), x, h);
    } else {
        for (int i = 0; i < q; ++i)
            out[static_cast<std::size_t>(i)] = mixture_log_density(queries.particle(i), x, h);
    }
}

PosteriorMixture posterior_params(std::span<const double> z, const Ensemble& y,
                                  double h, double sigma_t2,
                                  std::span<const double> log_qhat) {
    if (!(h > 0.0)) throw std::invalid_argument("posterior_params: h must be > 0");
    if (!(sigma_t2 > 0.0))
        throw ScheduleError("posterior_params: sigma_t^2 must be strictly positive");
    const int n = y.n();
    const int d = y.dim();
    if (n < 1) throw std::invalid_argument("posterior_params: empty center ensemble");
    if (static_cast<int>(z.size()) != d)
        throw std::invalid_argument("posterior_params: dimension mismatch");
    if (static_cast<int>(log_qhat.size()) != n)
        throw std::invalid_argument("posterior_params: log_qhat size mismatch");
    PosteriorMixture out;
    out.variance = h * sigma_t2 / (h + sigma_t2);
    out.means.resize(static_cast<std::size_t>(n) * d);
    out.log_weights.resize(static_cast<std::size_t>(n));
    const double lse = posterior_into(z, y, h, sigma_t2, log_qhat, out.means, out.log_weights);
    for (double& w : out.log_weights) w -= lse;
    return out;
}

PosteriorMixture posterior_params(std::span<const double> z, const Ensemble& y,
                                  const Ensemble& x, double h, double sigma_t2) {
    std::vector<double> lq(static_cast<std::size_t>(y.n()));
    mixture_log_density_batch(y, x, h, lq, Exec::serial);
    return posterior_params(z, y, h, sigma_t2, lq);
}

ScoreEstimate estimate_score(std::span<const double> z, const Ensemble& y,
                             const Ensemble& x, double h, double sigma_t2, int interim,
                             const PotentialOracle& oracle, const SeedSpec& address,
                             Exec exec) {
    if (interim < 1) throw std::invalid_argument("estimate_score: interim must be >= 1");
    const int d = y.dim();
    const PosteriorMixture post = posterior_params(z, y, x, h, sigma_t2);

    RandomStream comp(SeedSpec{address.master_seed, address.iteration, address.particle,
                               address.substep, Purpose::posterior_component});
    RandomStream gauss(SeedSpec{address.master_seed, address.iteration, address.particle,
                                address.substep, Purpose::posterior_interim});
    const std::vector<int> picks = categorical_sample(post.log_weights, interim, comp);

    std::vector<double> points(static_cast<std::size_t>(interim) * d);
    const double sbar = std::sqrt(post.variance);
    for (int l = 0; l < interim; ++l) {
        const double* mj = post.means.data() + static_cast<std::size_t>(picks[l]) * d;
        gaussian_draw(std::span<const double>(mj, static_cast<std::size_t>(d)), sbar, gauss,
                      std::span<double>(points.data() + static_cast<std::size_t>(l) * d,
                                        static_cast<std::size_t>(d)));
    }

    std::vector<double> f_values(static_cast<std::size_t>(interim));
    oracle.evaluate_batch(points, f_values, exec);

    ScoreEstimate est;
    est.drift.assign(static_cast<std::size_t>(d), 0.0);
    est.degenerate = drift_from_interim(points, f_values, z, sigma_t2, est.drift);
    return est;
}

ReverseStats reverse_substep(Ensemble& zt, const Ensemble& y,
                             std::span<const double> log_qhat, double h,
                             const NoiseSchedule& schedule, int t, int interim,
                             const PotentialOracle& oracle, std::uint64_t seed,
                             std::uint32_t iteration, Exec exec) {
    const int n = zt.n();
    const int d = zt.dim();
    const int m = interim;
    const double sigma_t2 = schedule.variance(t);
    if (!(sigma_t2 > 0.0))
        throw ScheduleError("reverse_substep: sigma_t^2 must be strictly positive");
    const double delta = schedule.delta(t);
    const double sqrt_delta = std::sqrt(delta);
    const double sbar = std::sqrt(h * sigma_t2 / (h + sigma_t2));

    std::vector<double> points(static_cast<std::size_t>(n) * m * d);
    std::vector<double> f_values(static_cast<std::size_t>(n) * m);

    // Phase A: per-particle posterior + interim draws into the shared buffer.
    auto sample_particle = [&](int i, Scratch& s) {
        const std::span<const double> zi = zt.particle(i);
        const double lse =
            posterior_into(zi, y, h, sigma_t2, log_qhat, s.means, s.log_weights);
        for (double& w : s.log_weights) w -= lse;
        RandomStream comp(SeedSpec{seed, iteration, static_cast<std::uint32_t>(i),
                                   static_cast<std::uint32_t>(t),
                                   Purpose::posterior_component});
        RandomStream gauss(SeedSpec{seed, iteration, static_cast<std::uint32_t>(i),
                                    static_cast<std::uint32_t>(t),
                                    Purpose::posterior_interim});
        s.picks = categorical_sample(s.log_weights, m, comp);
        double* base = points.data() + static_cast<std::size_t>(i) * m * d;
        for (int l = 0; l < m; ++l) {
            const double* mj = s.means.data() + static_cast<std::size_t>(s.picks[l]) * d;
            gaussian_draw(std::span<const double>(mj, static_cast<std::size_t>(d)), sbar,
                          gauss,
                          std::span<double>(base + static_cast<std::size_t>(l) * d,
                                            static_cast<std::size_t>(d)));
        }
    };

    // Phase C: reweighted drift + Euler-Maruyama update in place.
    auto update_particle = [&](int i, Scratch& s) -> long {
        const std::span<const double> pts(
            points.data() + static_cast<std::size_t>(i) * m * d,
            static_cast<std::size_t>(m) * d);
        const std::span<const double> fv(f_values.data() + static_cast<std::size_t>(i) * m,
                                         static_cast<std::size_t>(m));
        std::span<double> zi = zt.particle(i);
        const bool degenerate = drift_from_interim(pts, fv, zi, sigma_t2, s.drift);
        RandomStream eul(SeedSpec{seed, iteration, static_cast<std::uint32_t>(i),
                                  static_cast<std::uint32_t>(t), Purpose::euler_noise});
        for (int k = 0; k < d; ++k)
            zi[static_cast<std::size_t>(k)] +=
                delta * s.drift[static_cast<std::size_t>(k)] + sqrt_delta * eul.normal();
        return degenerate ? 1 : 0;
    };

    long degenerate = 0;
    if (exec == Exec::parallel) {
#pragma omp parallel
        {
            Scratch s(y.n(), d);
#pragma omp for schedule(static)
            for (int i = 0; i < n; ++i) sample_particle(i, s);
        }
        oracle.evaluate_batch(points, f_values, Exec::parallel);
#pragma omp parallel
        {
            Scratch s(y.n(), d);
            long local = 0;
#pragma omp for schedule(static)
            for (int i = 0; i < n; ++i) local += update_particle(i, s);
#pragma omp atomic
            degenerate += local;
        }
    } else {
        Scratch s(y.n(), d);
        for (int i = 0; i < n; ++i) sample_particle(i, s);
        oracle.evaluate_batch(points, f_values, Exec::serial);
        for (int i = 0; i < n; ++i) degenerate += update_particle(i, s);
    }
    return ReverseStats{degenerate, n};
}

ReverseStats reverse_step(Ensemble& z, const Ensemble& y, const Ensemble& x,
                          const ZodpsConfig& cfg, const PotentialOracle& oracle,
                          std::uint32_t iteration, Exec exec) {
    const NoiseSchedule sched = cfg.schedule();
    std::vector<double> log_qhat(static_cast<std::size_t>(y.n()));
    mixture_log_density_batch(y, x, cfg.h, log_qhat, exec);
    ReverseStats total;
    for (int t = sched.steps(); t >= 1; --t) {
        const ReverseStats s = reverse_substep(z, y, log_qhat, cfg.h, sched, t,
                                               cfg.interim, oracle, cfg.seed, iteration, exec);
        total.degenerate_events += s.degenerate_events;
        total.particle_substeps += s.particle_substeps;
    }
    return total;
}

ZodpsResult run_zodps(const ZodpsConfig& cfg, const PotentialOracle& oracle,
                      const Ensemble& init, const ZodpsObserver& observer, Exec exec) {
    cfg.validate();
    if (init.n() != cfg.particles)
        throw ValidationError("run_zodps: init ensemble size != cfg.particles");
    if (init.dim() != oracle.dim())
        throw ValidationError("run_zodps: init dimension != oracle dimension");
    init.validate_finite();

    ZodpsResult result;
    Ensemble x = init;
    for (int k = 0; k < cfg.iterations; ++k) {
        ForwardResult fw = forward_step(x, cfg.h, cfg.seed,
                                        static_cast<std::uint32_t>(k), exec);
        const ReverseStats stats = reverse_step(fw.z, fw.y, x, cfg, oracle,
                                                static_cast<std::uint32_t>(k), exec);
        x = std::move(fw.z);
        x.validate_finite();
        result.degenerate_events += stats.degenerate_events;
        result.particle_substeps += stats.particle_substeps;
        if (observer) observer(ZodpsIteration{k + 1, stats.degenerate_events}, x);
    }
    result.final_ensemble = std::move(x);
    return result;
}

} // namespace zodps
