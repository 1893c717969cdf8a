#pragma once

#include <optional>

#include "zodps/diagnostics.hpp"

namespace zodps {

/**
 * One reported iteration of any sampler run.  Exactly mirrors the run-record
 * CSV schema: iteration, wall_time, kl, kl_variance, occ_t1, occ_t2, occ_out,
 * degenerate_events, rgo_rejections.  Optional fields serialize as empty
 * cells.  wall_time is populated only when the run opts into timing capture
 * (timed cells would break byte-identical reruns); kl_variance is populated
 * in cross-seed aggregate files.
 */
struct RunRecord {
    int iteration = 0;
    std::optional<double> wall_time;  // seconds since the run started
    std::optional<double> kl;
    std::optional<double> kl_variance;
    std::optional<Occupancy> occupancy;
    long degenerate_events = 0;
    std::optional<long> rgo_rejections;
};

} // namespace zodps
