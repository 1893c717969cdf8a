#pragma once

#include <functional>
#include <span>
#include <vector>

namespace zodps {

struct NelderMeadResult {
    std::vector<double> point;  // best point ever evaluated
    double value = 0.0;
    int evals = 0;  // objective evaluations actually spent
};

/**
 * Derivative-free simplex minimization (Nelder-Mead with the standard
 * reflection / expansion / contraction / shrink coefficients 1, 2, 1/2, 1/2).
 *
 * The initial simplex is `start` plus one vertex displaced by `scale` along
 * each axis.  The search stops once `max_evals` objective evaluations have
 * been spent or the simplex values have collapsed to one level; whatever
 * point evaluated best so far is returned, so the result never regresses
 * behind the start.  NaN objective values are treated as +inf.  The routine
 * is fully deterministic.
 */
NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& fn,
                             std::span<const double> start, double scale, int max_evals);

} // namespace zodps
