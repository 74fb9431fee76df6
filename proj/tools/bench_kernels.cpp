// Times the OpenMP sampling kernels against their serial reference runs.

#include <chrono>
#include <cstdio>

#include "pvilab/holonomy.hpp"
#include "pvilab/orbifold.hpp"
#include "pvilab/suites.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

double seconds(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <class Fn>
double timed(const Fn& fn) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    return seconds(t0);
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP not enabled; both columns run serial\n");
#endif

    const std::uint64_t seed = 20240901;
    pvi::cplx c = 0.5;
    pvi::PviParameters params =
        pvi::derive_parameters(1.0 / 3.0, 1.0 / 5.0, 1.0 / 7.0, 1.0 / 2.0);
    pvi::OdeOptions oopts;
    pvi::QuadratureOptions qopts;

    std::printf("%-32s %12s %12s %8s\n", "kernel", "serial [s]", "parallel [s]", "speedup");

    {
        pvi::E1System e1 = pvi::build_e1(c);
        std::vector<pvi::cplx> punctures = {0.0, 1.0, c};
        pvi::LinearSystemOnSphere sys{punctures, e1.system(), c};
        pvi::TransversalFrame frame = pvi::make_frame(c);
        pvi::MonodromyRep rep =
            pvi::monodromy_representation(sys, frame.lambda_star, 0.1, oopts);
        double ts = timed([&] {
            pvi::check_virtual_commutativity(rep, 16, 20000, seed, 1e-7, false);
        });
        double tp = timed([&] {
            pvi::check_virtual_commutativity(rep, 16, 20000, seed, 1e-7, true);
        });
        std::printf("%-32s %12.3f %12.3f %8.2f\n", "matrix_word_commutators", ts, tp, ts / tp);
    }

    {
        pvi::HolonomyContext ctx = pvi::make_holonomy_context(c, params);
        double ts = timed([&] {
            pvi::check_virtual_commutativity_jets(ctx, 12, 5000, seed, 1e-5, oopts, false);
        });
        double tp = timed([&] {
            pvi::check_virtual_commutativity_jets(ctx, 12, 5000, seed, 1e-5, oopts, true);
        });
        std::printf("%-32s %12.3f %12.3f %8.2f\n", "jet_word_commutators", ts, tp, ts / tp);
    }

    {
        double ts = timed([&] { pvi::kernel_commutator_fuzz(200000, 24, seed, false); });
        double tp = timed([&] { pvi::kernel_commutator_fuzz(200000, 24, seed, true); });
        std::printf("%-32s %12.3f %12.3f %8.2f\n", "normal_form_commutators", ts, tp, ts / tp);
    }

    {
        double ts = timed([&] { pvi::shuffle_residual_sweep(200, seed, qopts, false); });
        double tp = timed([&] { pvi::shuffle_residual_sweep(200, seed, qopts, true); });
        std::printf("%-32s %12.3f %12.3f %8.2f\n", "shuffle_identity_sweep", ts, tp, ts / tp);
    }

    return 0;
}
