#pragma once

#include <vector>

#include "zodps/ensemble.hpp"
#include "zodps/exec.hpp"
#include "zodps/potentials.hpp"

namespace zodps {

struct KlEstimate {
    double value = 0.0;  // nats
    int n = 0;           // evaluation sample count
    int m = 0;           // reference sample count
    int k = 0;           // neighbor order
    long floored = 0;    // k-th neighbor distances clamped to the 1e-12 floor
};

/**
 * Two-sample k-nearest-neighbor estimate of D(p || q):
 *
 *   (d/n) * sum_i log(nu_k(i) / rho_k(i)) + log(m / (n-1))
 *
 * where rho_k(i) is the distance from p-sample i to its k-th nearest
 * neighbor within p (itself excluded) and nu_k(i) the k-th nearest within q.
 * Distances are exact brute-force Euclidean (the sizes used here make an
 * index pointless).  Zero k-th-neighbor distances (duplicate points, e.g.
 * from pooled deterministic restarts) are floored at 1e-12 and counted in
 * `floored`; if every query on one side collapses to zero the sample set is
 * degenerate and DegenerateGeometryError names an offending pair instead.
 */
KlEstimate knn_kl(const Ensemble& samples_p, const Ensemble& samples_q, int k = 4,
                  Exec exec = Exec::parallel);

/**
 * For each row of `from`, the Euclidean distance to its k-th nearest row of
 * `to`, unfloored.  With exclude_self the sets must have equal size and entry
 * i skips to-row i (the convention for within-sample distances).  These are
 * exactly the rho (exclude_self) and nu quantities of knn_kl.
 */
std::vector<double> kth_neighbor_distances(const Ensemble& from, const Ensemble& to,
                                           int k, bool exclude_self,
                                           Exec exec = Exec::parallel);

/**
 * Counts of coordinate `coordinate` over `bins` uniform cells of [lo, hi);
 * samples outside the range are not counted.
 */
std::vector<long> marginal_histogram(const Ensemble& samples, int coordinate, int bins,
                                     double lo, double hi);

struct Occupancy {
    long t1 = 0;
    long t2 = 0;
    long outside = 0;
};

/// Partition counts over the two tori; the three fields sum to samples.n().
Occupancy torus_occupancy(const Ensemble& samples, const ToriDomain& domain);

struct PooledEnsemble {
    Ensemble particles;
    int window_used = 0;        // snapshots actually pooled
    bool short_window = false;  // fewer snapshots were available than requested
};

/**
 * Concatenates the last `window` snapshots of `history` (oldest first) into
 * one evaluation ensemble.  A history shorter than the window pools whatever
 * is there and sets short_window.
 */
PooledEnsemble pool_particles(const std::vector<Ensemble>& history, int window);

} // namespace zodps
