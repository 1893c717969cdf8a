#pragma once

namespace zodps {

// Every data-parallel kernel exists twice: a plain-loop serial reference and
// an OpenMP version.  Results are bit-identical by construction (disjoint
// outputs, per-particle streams, fixed-order inner reductions), which the
// parallel-consistency tests assert.
enum class Exec {
    serial,    // reference implementation, no OpenMP
    parallel,  // OpenMP worksharing, thread count from omp
};

/// Number of threads the parallel path will use right now.
int exec_threads();

/// Clamp OpenMP to n threads (n >= 1).  No-op when built without OpenMP.
void set_exec_threads(int n);

} // namespace zodps
