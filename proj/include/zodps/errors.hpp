#pragma once

#include <stdexcept>
#include <string>

namespace zodps {

// All weights of a normalized quantity are -inf (empty softmax / logsumexp).
class DegenerateWeightsError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Noise-variance schedule violates its contract (not strictly increasing,
// zero variance where a positive one is required, ...).
class ScheduleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Restricted-Gaussian-oracle rejection loop exhausted its budget.
class RgoStuckError : public std::runtime_error {
public:
    RgoStuckError(long rejections_, const std::string& what_)
        : std::runtime_error(what_), rejections(rejections_) {}
    long rejections;
};

// k-NN geometry collapsed (all neighbor distances zero even before flooring).
class DegenerateGeometryError : public std::runtime_error {
public:
    DegenerateGeometryError(int query_, int neighbor_, const std::string& what_)
        : std::runtime_error(what_), query(query_), neighbor(neighbor_) {}
    int query;
    int neighbor;
};

// Config / CLI input rejected before any sampling started.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace zodps
