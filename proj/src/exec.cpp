#include "zodps/exec.hpp"

#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace zodps {

int exec_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

void set_exec_threads(int n) {
    if (n < 1) throw std::invalid_argument("set_exec_threads: need n >= 1");
#ifdef _OPENMP
    omp_set_num_threads(n);
#else
    (void)n;
#endif
}

} // namespace zodps
