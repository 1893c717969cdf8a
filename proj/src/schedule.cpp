#include "zodps/schedule.hpp"

#include <cmath>

#include "zodps/errors.hpp"

namespace zodps {

NoiseSchedule NoiseSchedule::linear(double sigma_min2, double h, int steps) {
    if (steps < 1) throw ScheduleError("NoiseSchedule: need at least one step");
    if (!(h > 0.0)) throw ScheduleError("NoiseSchedule: terminal variance must be > 0");
    if (!(sigma_min2 >= 0.0) || sigma_min2 >= h)
        throw ScheduleError("NoiseSchedule: need 0 <= sigma_min2 < h");
    std::vector<double> v(static_cast<std::size_t>(steps) + 1);
    for (int t = 0; t <= steps; ++t)
        v[static_cast<std::size_t>(t)] =
            sigma_min2 + (h - sigma_min2) * (static_cast<double>(t) / steps);
    v.back() = h;  // exact terminal regardless of rounding
    return NoiseSchedule(std::move(v));
}

NoiseSchedule::NoiseSchedule(std::vector<double> variances) : var_(std::move(variances)) {
    if (var_.size() < 2) throw ScheduleError("NoiseSchedule: need at least two levels");
    if (!(var_.front() >= 0.0)) throw ScheduleError("NoiseSchedule: negative variance");
    for (std::size_t t = 1; t < var_.size(); ++t) {
        if (!std::isfinite(var_[t]) || !(var_[t] > var_[t - 1]))
            throw ScheduleError("NoiseSchedule: variances must be strictly increasing");
    }
}

double NoiseSchedule::variance(int t) const {
    if (t < 0 || t > steps()) throw ScheduleError("NoiseSchedule: index out of range");
    return var_[static_cast<std::size_t>(t)];
}

double NoiseSchedule::delta(int t) const {
    if (t < 1 || t > steps()) throw ScheduleError("NoiseSchedule: delta index out of range");
    return var_[static_cast<std::size_t>(t)] - var_[static_cast<std::size_t>(t) - 1];
}

NoiseSchedule NoiseSchedule::rescaled(double new_h) const {
    if (!(new_h > 0.0)) throw ScheduleError("NoiseSchedule: rescale target must be > 0");
    const double ratio = new_h / terminal();
    std::vector<double> v(var_.size());
    for (std::size_t t = 0; t < var_.size(); ++t) v[t] = var_[t] * ratio;
    v.back() = new_h;
    return NoiseSchedule(std::move(v));
}

} // namespace zodps
