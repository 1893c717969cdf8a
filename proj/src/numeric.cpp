#include "zodps/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "zodps/errors.hpp"

namespace zodps {

double logsumexp(std::span<const double> values) {
    if (values.empty())
        throw DegenerateWeightsError("logsumexp: empty input");
    double vmax = -std::numeric_limits<double>::infinity();
    for (double v : values) vmax = std::max(vmax, v);
    if (vmax == -std::numeric_limits<double>::infinity())
        throw DegenerateWeightsError("logsumexp: all weights are -inf");
    double acc = 0.0;
    for (double v : values) acc += std::exp(v - vmax);
    return vmax + std::log(acc);
}

void softmax_from_log(std::span<const double> log_values, std::span<double> out) {
    if (log_values.size() != out.size())
        throw std::invalid_argument("softmax_from_log: size mismatch");
    if (log_values.empty())
        throw DegenerateWeightsError("softmax_from_log: empty input");
    double vmax = -std::numeric_limits<double>::infinity();
    for (double v : log_values) vmax = std::max(vmax, v);
    if (vmax == -std::numeric_limits<double>::infinity())
        throw DegenerateWeightsError("softmax_from_log: all weights are -inf");
    double acc = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = std::exp(log_values[i] - vmax);
        acc += out[i];
    }
    const double inv = 1.0 / acc;
    for (double& w : out) w *= inv;
}

std::vector<int> categorical_sample(std::span<const double> log_weights, int count,
                                    RandomStream& rs) {
    if (count < 0)
        throw std::invalid_argument("categorical_sample: negative count");
    const std::size_t n = log_weights.size();
    std::vector<double> cdf(n);
    softmax_from_log(log_weights, cdf);  // degenerate input throws here
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += cdf[i];
        cdf[i] = acc;
    }
    cdf[n - 1] = 1.0;  // guard against accumulated rounding
    std::vector<int> idx(static_cast<std::size_t>(count));
    for (int m = 0; m < count; ++m) {
        const double u = rs.uniform();  // in [0, 1)
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        idx[static_cast<std::size_t>(m)] = static_cast<int>(it - cdf.begin());
    }
    return idx;
}

} // namespace zodps
