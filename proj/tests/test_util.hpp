#pragma once

// Shared helpers for the test binaries only.

#include <cmath>
#include <numeric>
#include <span>
#include <vector>

namespace testutil {

inline bool same_bits(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return false;
    return true;
}

inline double mean(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

inline double variance(std::span<const double> v) {
    const double m = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s / static_cast<double>(v.size() - 1);
}

inline double central_moment(std::span<const double> v, int p) {
    const double m = mean(v);
    double s = 0.0;
    for (double x : v) s += std::pow(x - m, p);
    return s / static_cast<double>(v.size());
}

} // namespace testutil
