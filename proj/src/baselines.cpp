#include "zodps/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "zodps/errors.hpp"
#include "zodps/optimize.hpp"

namespace zodps {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Ensemble surviving_rows(const Ensemble& x, const std::vector<char>& alive) {
    std::vector<int> keep;
    keep.reserve(static_cast<std::size_t>(x.n()));
    for (int c = 0; c < x.n(); ++c)
        if (alive[static_cast<std::size_t>(c)]) keep.push_back(c);
    return x.subset(keep);
}

} // namespace

void RgoConfig::validate() const {
    if (!(eta > 0.0) || !std::isfinite(eta))
        throw ValidationError("rgo: eta must be positive and finite");
    if (chains < 1) throw ValidationError("rgo: need at least one chain");
    if (thinning < 1) throw ValidationError("rgo: thinning must be >= 1");
    if (max_rejections < 1) throw ValidationError("rgo: max_rejections must be >= 1");
    if (optimizer_budget < 1) throw ValidationError("rgo: optimizer budget must be >= 1");
    if (!(slack >= 0.0) || !std::isfinite(slack))
        throw ValidationError("rgo: slack must be finite and >= 0");
}

std::vector<double> rgo_step(std::span<const double> y, const RgoConfig& cfg,
                             const PotentialOracle& oracle, const SeedSpec& where,
                             RgoStepStats* stats) {
    cfg.validate();
    const int d = oracle.dim();
    if (static_cast<int>(y.size()) != d)
        throw std::invalid_argument("rgo_step: point dimension does not match the oracle");

    // Proximal objective g(x) = f(x) + |x - y|^2 / (2 eta), minimized
    // derivative-free from the start y with a sqrt(eta)-sized simplex.
    const double inv_two_eta = 1.0 / (2.0 * cfg.eta);
    auto objective = [&](std::span<const double> p) {
        double q = 0.0;
        for (int j = 0; j < d; ++j) {
            const double dj = p[static_cast<std::size_t>(j)] - y[static_cast<std::size_t>(j)];
            q += dj * dj;
        }
        return oracle(p) + q * inv_two_eta;
    };
    const NelderMeadResult opt =
        nelder_mead(objective, y, std::sqrt(cfg.eta), cfg.optimizer_budget);
    const double f_star = oracle(opt.point);

    // At the proximal optimum x* the objective's stationarity gives the
    // subgradient u = (y - x*) / eta of f, available without derivatives.
    // Proposals come from N(x*, eta I) and are accepted against the affine
    // minorant f(x*) + u.(x - x*): the accepted law is then exactly
    // proportional to exp(-f(x) - |x - y|^2 / (2 eta)), because the linear
    // term recenters the proposal Gaussian back onto y.  The minorant can
    // only be violated where f dips below its tangent plane (non-convexity,
    // or an inexact optimum); those draws are clamped and counted.
    RandomStream propose(SeedSpec{where.master_seed, where.iteration, where.particle,
                                  where.substep, Purpose::rgo_proposal});
    RandomStream accept(SeedSpec{where.master_seed, where.iteration, where.particle,
                                 where.substep, Purpose::rgo_accept});
    const double sd = std::sqrt(cfg.eta);
    const double inv_eta = 1.0 / cfg.eta;
    std::vector<double> x(static_cast<std::size_t>(d));
    long rejections = 0;
    long clamps = 0;
    for (;;) {
        gaussian_draw(opt.point, sd, propose, x);
        const double fx = oracle(x);
        // +inf / NaN potential value means zero target density there.
        double log_accept = -kInf;
        if (!std::isnan(fx) && fx < kInf) {
            double minorant = f_star;
            for (int j = 0; j < d; ++j) {
                const auto sj = static_cast<std::size_t>(j);
                minorant += (y[sj] - opt.point[sj]) * inv_eta * (x[sj] - opt.point[sj]);
            }
            log_accept = -(fx - minorant - cfg.slack);
            if (log_accept > 0.0) {
                ++clamps;
                log_accept = 0.0;
            }
        }
        if (accept.uniform() < std::exp(log_accept)) break;
        ++rejections;
        if (rejections >= cfg.max_rejections) {
            if (stats) {
                stats->rejections += rejections;
                stats->clamps += clamps;
                stats->optimizer_evals += opt.evals;
            }
            throw RgoStuckError(rejections,
                                "rgo_step: rejection budget exhausted; eta is too "
                                "large for this potential");
        }
    }
    if (stats) {
        stats->rejections += rejections;
        stats->clamps += clamps;
        stats->optimizer_evals += opt.evals;
    }
    return x;
}

ProximalResult proximal_run(const RgoConfig& cfg, const PotentialOracle& oracle,
                            const Ensemble& init, int updates,
                            const ProximalObserver& observer, Exec exec) {
    cfg.validate();
    if (updates < 0) throw ValidationError("proximal_run: negative update count");
    if (init.n() != cfg.chains)
        throw ValidationError("proximal_run: init must hold one row per chain");
    if (init.dim() != oracle.dim())
        throw ValidationError("proximal_run: init dimension does not match the oracle");
    init.validate_finite();

    Ensemble x = init;
    const std::size_t nc = static_cast<std::size_t>(cfg.chains);
    std::vector<char> alive(nc, 1);
    std::vector<RgoStepStats> stats(nc);

    long done = 0;
    int reported = 0;
    long seen_rejections = 0;
    long seen_clamps = 0;
    while (done < updates) {
        const long block = std::min<long>(cfg.thinning, updates - done);
        auto body = [&](int c) {
            const std::size_t ci = static_cast<std::size_t>(c);
            if (!alive[ci]) return;
            std::vector<double> cur(x.particle(c).begin(), x.particle(c).end());
            for (long b = 0; b < block; ++b) {
                const std::uint32_t u = static_cast<std::uint32_t>(done + b + 1);
                const SeedSpec fwd{cfg.seed, u, static_cast<std::uint32_t>(c), 0,
                                   Purpose::rgo_forward};
                const std::vector<double> y = gaussian_draw(cur, std::sqrt(cfg.eta), fwd);
                try {
                    cur = rgo_step(y, cfg, oracle,
                                   SeedSpec{cfg.seed, u, static_cast<std::uint32_t>(c), 0,
                                            Purpose::rgo_proposal},
                                   &stats[ci]);
                } catch (const RgoStuckError&) {
                    alive[ci] = 0;
                    return;  // chain dropped; the rest keep running
                }
            }
            std::copy(cur.begin(), cur.end(), x.row(c));
        };
        if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
            for (int c = 0; c < cfg.chains; ++c) body(c);
        } else {
            for (int c = 0; c < cfg.chains; ++c) body(c);
        }
        done += block;

        if (block == cfg.thinning) {
            ++reported;
            if (observer) {
                long rej = 0;
                long clamp = 0;
                for (const RgoStepStats& s : stats) {
                    rej += s.rejections;
                    clamp += s.clamps;
                }
                const Ensemble surv = surviving_rows(x, alive);
                observer(surv, ProximalRecord{reported, surv.n(), rej - seen_rejections,
                                              clamp - seen_clamps});
                seen_rejections = rej;
                seen_clamps = clamp;
            }
        }
    }

    ProximalResult out;
    out.final_ensemble = surviving_rows(x, alive);
    for (int c = 0; c < cfg.chains; ++c)
        if (!alive[static_cast<std::size_t>(c)]) out.aborted_chains.push_back(c);
    for (const RgoStepStats& s : stats) {
        out.total_rejections += s.rejections;
        out.total_clamps += s.clamps;
    }
    return out;
}

void InOutConfig::validate() const {
    if (!(h > 0.0) || !std::isfinite(h))
        throw ValidationError("in-and-out: h must be positive and finite");
    if (retries < 1) throw ValidationError("in-and-out: retries must be >= 1");
    if (chains < 1) throw ValidationError("in-and-out: need at least one chain");
}

std::optional<std::vector<double>> in_and_out_step(std::span<const double> x,
                                                   const InOutConfig& cfg,
                                                   const Membership& member,
                                                   const SeedSpec& where) {
    cfg.validate();
    const double sd = std::sqrt(cfg.h);
    RandomStream forward(SeedSpec{where.master_seed, where.iteration, where.particle,
                                  where.substep, Purpose::inout_proposal});
    std::vector<double> y(x.size());
    gaussian_draw(x, sd, forward, y);

    RandomStream resample(SeedSpec{where.master_seed, where.iteration, where.particle,
                                   where.substep, Purpose::inout_resample});
    std::vector<double> candidate(x.size());
    for (long r = 0; r < cfg.retries; ++r) {
        gaussian_draw(y, sd, resample, candidate);
        if (member(candidate)) return candidate;
    }
    return std::nullopt;
}

InOutResult in_and_out_run(const InOutConfig& cfg, const Membership& member,
                           const Ensemble& init, int iterations,
                           const InOutObserver& observer, Exec exec) {
    cfg.validate();
    if (iterations < 0) throw ValidationError("in_and_out_run: negative iteration count");
    if (init.n() != cfg.chains)
        throw ValidationError("in_and_out_run: init must hold one row per chain");
    init.validate_finite();

    const int d = init.dim();
    Ensemble cur = init;
    std::vector<int> ids(static_cast<std::size_t>(cfg.chains));
    std::iota(ids.begin(), ids.end(), 0);

    InOutResult out;
    for (int k = 1; k <= iterations; ++k) {
        const int n = cur.n();
        Ensemble next(n, d);
        std::vector<char> ok(static_cast<std::size_t>(n), 0);
        auto body = [&](int i) {
            const std::size_t ii = static_cast<std::size_t>(i);
            // Streams are keyed by the original chain id so discards elsewhere
            // never shift this chain's randomness.
            const SeedSpec where{cfg.seed, static_cast<std::uint32_t>(k),
                                 static_cast<std::uint32_t>(ids[ii]), 0,
                                 Purpose::inout_proposal};
            const auto stepped = in_and_out_step(cur.particle(i), cfg, member, where);
            if (stepped) {
                std::copy(stepped->begin(), stepped->end(), next.row(i));
                ok[ii] = 1;
            }
        };
        if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
            for (int i = 0; i < n; ++i) body(i);
        } else {
            for (int i = 0; i < n; ++i) body(i);
        }

        std::vector<int> keep;
        std::vector<int> kept_ids;
        keep.reserve(static_cast<std::size_t>(n));
        kept_ids.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            if (ok[static_cast<std::size_t>(i)]) {
                keep.push_back(i);
                kept_ids.push_back(ids[static_cast<std::size_t>(i)]);
            }
        }
        out.discarded += n - static_cast<int>(keep.size());
        cur = next.subset(keep);
        ids = std::move(kept_ids);
        out.iterations_run = k;
        if (observer) observer(cur, InOutRecord{k, cur.n(), out.discarded});
        if (cur.empty()) break;
    }
    out.final_ensemble = std::move(cur);
    out.surviving_chains = std::move(ids);
    return out;
}

std::optional<std::vector<double>> in_and_out_step(std::span<const double> x,
                                                   const InOutConfig& cfg,
                                                   const ToriDomain& domain,
                                                   const SeedSpec& where) {
    return in_and_out_step(
        x, cfg, [&domain](std::span<const double> p) { return domain.member(p); }, where);
}

InOutResult in_and_out_run(const InOutConfig& cfg, const ToriDomain& domain,
                           const Ensemble& init, int iterations,
                           const InOutObserver& observer, Exec exec) {
    return in_and_out_run(
        cfg, [&domain](std::span<const double> p) { return domain.member(p); }, init,
        iterations, observer, exec);
}

} // namespace zodps
