// Serial vs OpenMP timing for the data-parallel kernels.  Every kernel is
// run with both execution policies on identical inputs; the table reports
// the best-of-repeats wall time for each, the speedup, and whether the two
// outputs matched bit for bit (they must — the parallel paths are required
// to be reorderings of independent work, not numerically different code).
//
//   zodps_bench            full-size kernels
//   zodps_bench --quick    trimmed sizes, used as a smoke test by ctest
//   zodps_bench --repeat R best-of-R timing (default 3)

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zodps/baselines.hpp"
#include "zodps/config.hpp"
#include "zodps/diagnostics.hpp"
#include "zodps/ensemble.hpp"
#include "zodps/experiments.hpp"
#include "zodps/potentials.hpp"
#include "zodps/sampler.hpp"

using namespace zodps;
using Clock = std::chrono::steady_clock;

namespace {

struct RowResult {
    double serial = 0.0;
    double parallel = 0.0;
    bool identical = false;
};

double best_of(int repeats, const std::function<void()>& fn) {
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
        const auto t0 = Clock::now();
        fn();
        const double s = std::chrono::duration<double>(Clock::now() - t0).count();
        if (s < best) best = s;
    }
    return best;
}

bool same_bytes(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return false;
    return true;
}

void print_row(const char* name, const RowResult& r) {
    std::printf("%-28s %10.4fs %10.4fs %7.2fx   %s\n", name, r.serial, r.parallel,
                r.serial / r.parallel, r.identical ? "bitwise-equal" : "MISMATCH");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"serial vs OpenMP kernel timings"};
    bool quick = false;
    int repeats = 3;
    app.add_flag("--quick", quick, "trimmed sizes (smoke-test scale)");
    app.add_option("--repeat", repeats, "timing repeats, best is reported")
        ->check(CLI::PositiveNumber);
    CLI11_PARSE(app, argc, argv);

    std::printf("threads: %d (serial column forces 1)\n\n", omp_get_max_threads());
    std::printf("%-28s %11s %11s %8s   %s\n", "kernel", "serial", "parallel",
                "speedup", "outputs");

    bool all_equal = true;

    {  // Reverse-diffusion outer iterations on the benchmark mixture.
        ExperimentConfig cfg = preset("lasso-zodps");
        cfg.zodps.iterations = quick ? 1 : 4;
        cfg.zodps.interim = quick ? 100 : 1000;
        cfg.zodps.seed = 5;
        const std::unique_ptr<PotentialOracle> target = make_target(cfg);
        const Ensemble init =
            standard_normal_ensemble(cfg.zodps.particles, target->dim(), 5);
        std::vector<double> out_serial, out_parallel;
        auto run = [&](Exec exec, std::vector<double>& sink) {
            const ZodpsResult res = run_zodps(cfg.zodps, *target, init, {}, exec);
            sink.assign(res.final_ensemble.flat().begin(),
                        res.final_ensemble.flat().end());
        };
        RowResult r;
        r.serial = best_of(repeats, [&] { run(Exec::serial, out_serial); });
        r.parallel = best_of(repeats, [&] { run(Exec::parallel, out_parallel); });
        r.identical = same_bytes(out_serial, out_parallel);
        all_equal = all_equal && r.identical;
        print_row(quick ? "zodps iteration (trimmed)" : "zodps iterations x4", r);
    }

    {  // Proximal-oracle chains on the same target.
        ExperimentConfig cfg = preset("lasso-rgo");
        const std::unique_ptr<PotentialOracle> target = make_target(cfg);
        RgoConfig rc = cfg.rgo;
        rc.seed = 5;
        const int updates = quick ? 20 : 200;
        const Ensemble init = standard_normal_ensemble(rc.chains, target->dim(), 5);
        std::vector<double> out_serial, out_parallel;
        auto run = [&](Exec exec, std::vector<double>& sink) {
            const ProximalResult res =
                proximal_run(rc, *target, init, updates, ProximalObserver(), exec);
            sink.assign(res.final_ensemble.flat().begin(),
                        res.final_ensemble.flat().end());
        };
        RowResult r;
        r.serial = best_of(repeats, [&] { run(Exec::serial, out_serial); });
        r.parallel = best_of(repeats, [&] { run(Exec::parallel, out_parallel); });
        r.identical = same_bytes(out_serial, out_parallel);
        all_equal = all_equal && r.identical;
        print_row("proximal chains", r);
    }

    {  // Divergence estimate between two stored ensembles.
        const int n = quick ? 400 : 2000;
        const Ensemble p = standard_normal_ensemble(n, 5, 1);
        const Ensemble q = standard_normal_ensemble(n, 5, 2);
        std::vector<double> out_serial(1), out_parallel(1);
        RowResult r;
        r.serial =
            best_of(repeats, [&] { out_serial[0] = knn_kl(p, q, 4, Exec::serial).value; });
        r.parallel = best_of(
            repeats, [&] { out_parallel[0] = knn_kl(p, q, 4, Exec::parallel).value; });
        r.identical = same_bytes(out_serial, out_parallel);
        all_equal = all_equal && r.identical;
        print_row("k-NN divergence", r);
    }

    {  // Uniform sampling over the two-tori union.
        ExperimentConfig cfg = preset("tori-inout");
        const ToriDomain domain = cfg.tori.domain();
        InOutConfig ic = cfg.inout;
        ic.chains = quick ? 100 : 1000;
        ic.seed = 5;
        const int updates = quick ? 20 : 200;
        Ensemble init(ic.chains, 3);
        for (int i = 0; i < init.n(); ++i) init.row(i)[0] = 10.0;  // on T1's ring
        std::vector<double> out_serial, out_parallel;
        auto run = [&](Exec exec, std::vector<double>& sink) {
            const InOutResult res =
                in_and_out_run(ic, domain, init, updates, InOutObserver(), exec);
            sink.assign(res.final_ensemble.flat().begin(),
                        res.final_ensemble.flat().end());
        };
        RowResult r;
        r.serial = best_of(repeats, [&] { run(Exec::serial, out_serial); });
        r.parallel = best_of(repeats, [&] { run(Exec::parallel, out_parallel); });
        r.identical = same_bytes(out_serial, out_parallel);
        all_equal = all_equal && r.identical;
        print_row("in-and-out chains", r);
    }

    if (!all_equal) {
        std::printf("\nerror: a parallel kernel diverged from its serial twin\n");
        return 1;
    }
    return 0;
}
