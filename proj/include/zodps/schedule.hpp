#pragma once

#include <vector>

namespace zodps {

/**
 * Strictly increasing noise-variance ladder sigma_0^2 < ... < sigma_T^2 used
 * by the reverse flow.  The terminal variance is the macro step size h of the
 * forward perturbation; that coupling is what validate() in the sampler config
 * checks.  Index t runs over [0, T].
 */
class NoiseSchedule {
public:
    /// Linear interpolation from sigma_min2 (at t=0) to h (exactly, at t=T).
    static NoiseSchedule linear(double sigma_min2, double h, int steps);

    explicit NoiseSchedule(std::vector<double> variances);

    int steps() const { return static_cast<int>(var_.size()) - 1; }  // T
    double variance(int t) const;                                    // sigma_t^2
    double delta(int t) const;  // sigma_t^2 - sigma_{t-1}^2, t in [1, T]
    double terminal() const { return var_.back(); }

    /// Same shape, terminal variance moved to new_h (all entries scaled
    /// by new_h / terminal()); used by the step-size sweep.
    NoiseSchedule rescaled(double new_h) const;

    const std::vector<double>& variances() const { return var_; }

private:
    std::vector<double> var_;
};

} // namespace zodps
