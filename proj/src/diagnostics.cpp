#include "zodps/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "zodps/errors.hpp"

namespace zodps {

namespace {

constexpr double kDistanceFloor = 1e-12;

double sq_dist(const double* a, const double* b, int d) {
    double s = 0.0;
    for (int j = 0; j < d; ++j) {
        const double diff = a[j] - b[j];
        s += diff * diff;
    }
    return s;
}

// Index of some point in `set` at squared distance <= eps2 from query row `qi`
// of `from` (used only to name an offending pair in the degenerate error).
int zero_neighbor(const Ensemble& from, int qi, const Ensemble& set, bool exclude_self) {
    for (int j = 0; j < set.n(); ++j) {
        if (exclude_self && j == qi) continue;
        if (sq_dist(from.row(qi), set.row(j), from.dim()) <= kDistanceFloor * kDistanceFloor)
            return j;
    }
    return -1;
}

} // namespace

std::vector<double> kth_neighbor_distances(const Ensemble& from, const Ensemble& to,
                                           int k, bool exclude_self, Exec exec) {
    const int n = from.n();
    const int m = to.n();
    const int d = from.dim();
    if (to.dim() != d)
        throw std::invalid_argument(
            "kth_neighbor_distances: sample sets disagree on dimension");
    if (k < 1) throw std::invalid_argument("kth_neighbor_distances: k must be >= 1");
    if (exclude_self && n != m)
        throw std::invalid_argument(
            "kth_neighbor_distances: exclude_self assumes identical sets");
    if (m - (exclude_self ? 1 : 0) < k)
        throw std::invalid_argument("kth_neighbor_distances: fewer than k neighbors");

    std::vector<double> out(static_cast<std::size_t>(n));
    auto body = [&](int i) {
        std::vector<double> dist(static_cast<std::size_t>(m));
        for (int j = 0; j < m; ++j)
            dist[static_cast<std::size_t>(j)] = sq_dist(from.row(i), to.row(j), d);
        if (exclude_self)  // self is not a neighbor
            dist[static_cast<std::size_t>(i)] = std::numeric_limits<double>::infinity();
        std::nth_element(dist.begin(), dist.begin() + (k - 1), dist.end());
        out[static_cast<std::size_t>(i)] =
            std::sqrt(dist[static_cast<std::size_t>(k - 1)]);
    };
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (int i = 0; i < n; ++i) body(i);
    } else {
        for (int i = 0; i < n; ++i) body(i);
    }
    return out;
}

KlEstimate knn_kl(const Ensemble& samples_p, const Ensemble& samples_q, int k, Exec exec) {
    const int n = samples_p.n();
    const int m = samples_q.n();
    const int d = samples_p.dim();
    if (samples_q.dim() != d)
        throw std::invalid_argument("knn_kl: sample sets disagree on dimension");
    if (k < 1) throw std::invalid_argument("knn_kl: k must be >= 1");
    if (n <= k)
        throw std::invalid_argument("knn_kl: need more than k evaluation samples");
    if (m < k) throw std::invalid_argument("knn_kl: need at least k reference samples");

    const std::vector<double> rhos = kth_neighbor_distances(samples_p, samples_p, k,
                                                            /*exclude_self=*/true, exec);
    const std::vector<double> nus = kth_neighbor_distances(samples_p, samples_q, k,
                                                           /*exclude_self=*/false, exec);

    std::vector<double> terms(static_cast<std::size_t>(n));
    std::vector<signed char> rho_floored(static_cast<std::size_t>(n), 0);
    std::vector<signed char> nu_floored(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        const std::size_t ii = static_cast<std::size_t>(i);
        double rho = rhos[ii];
        double nu = nus[ii];
        if (rho < kDistanceFloor) {
            rho = kDistanceFloor;
            rho_floored[ii] = 1;
        }
        if (nu < kDistanceFloor) {
            nu = kDistanceFloor;
            nu_floored[ii] = 1;
        }
        terms[ii] = std::log(nu / rho);
    }

    KlEstimate est;
    est.n = n;
    est.m = m;
    est.k = k;
    bool all_rho = true;
    bool all_nu = true;
    for (int i = 0; i < n; ++i) {
        est.floored += rho_floored[static_cast<std::size_t>(i)];
        est.floored += nu_floored[static_cast<std::size_t>(i)];
        all_rho = all_rho && rho_floored[static_cast<std::size_t>(i)];
        all_nu = all_nu && nu_floored[static_cast<std::size_t>(i)];
    }
    if (all_rho) {
        throw DegenerateGeometryError(
            0, zero_neighbor(samples_p, 0, samples_p, true),
            "knn_kl: every within-sample neighbor distance is zero (all evaluation "
            "points coincide)");
    }
    if (all_nu) {
        throw DegenerateGeometryError(
            0, zero_neighbor(samples_p, 0, samples_q, false),
            "knn_kl: every reference neighbor distance is zero (reference points "
            "coincide with the queries)");
    }

    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += terms[static_cast<std::size_t>(i)];
    est.value = (static_cast<double>(d) / n) * acc +
                std::log(static_cast<double>(m) / (n - 1.0));
    return est;
}

std::vector<long> marginal_histogram(const Ensemble& samples, int coordinate, int bins,
                                     double lo, double hi) {
    if (bins < 1) throw std::invalid_argument("marginal_histogram: bins must be >= 1");
    if (coordinate < 0 || coordinate >= samples.dim())
        throw std::invalid_argument("marginal_histogram: coordinate out of range");
    if (!(lo < hi)) throw std::invalid_argument("marginal_histogram: empty range");

    std::vector<long> counts(static_cast<std::size_t>(bins), 0);
    const double width = (hi - lo) / bins;
    for (int i = 0; i < samples.n(); ++i) {
        const double v = samples.at(i, coordinate);
        if (!(v >= lo) || !(v < hi)) continue;
        int b = static_cast<int>((v - lo) / width);
        if (b >= bins) b = bins - 1;  // guards rounding at the top edge
        ++counts[static_cast<std::size_t>(b)];
    }
    return counts;
}

Occupancy torus_occupancy(const Ensemble& samples, const ToriDomain& domain) {
    if (samples.dim() != 3)
        throw std::invalid_argument("torus_occupancy: samples must be 3-dimensional");
    Occupancy occ;
    for (int i = 0; i < samples.n(); ++i) {
        const auto x = samples.particle(i);
        if (domain.in_t1(x))
            ++occ.t1;
        else if (domain.in_t2(x))
            ++occ.t2;
        else
            ++occ.outside;
    }
    return occ;
}

PooledEnsemble pool_particles(const std::vector<Ensemble>& history, int window) {
    if (window < 1) throw std::invalid_argument("pool_particles: window must be >= 1");
    if (history.empty()) throw std::invalid_argument("pool_particles: empty history");
    PooledEnsemble out;
    const int avail = static_cast<int>(history.size());
    const int use = std::min(window, avail);
    out.window_used = use;
    out.short_window = use < window;
    out.particles = Ensemble(0, history.back().dim());
    for (int i = avail - use; i < avail; ++i)
        out.particles.append(history[static_cast<std::size_t>(i)]);
    return out;
}

} // namespace zodps
