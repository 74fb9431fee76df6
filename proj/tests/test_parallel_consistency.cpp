#include <doctest.h>

#include "pvilab/holonomy.hpp"
#include "pvilab/orbifold.hpp"
#include "pvilab/suites.hpp"

using namespace pvi;

// The OpenMP kernels draw all randomness from per-index streams, so the
// parallel runs must reproduce the serial reference results exactly.

TEST_CASE("matrix-word commutator kernel: serial equals parallel") {
    cplx c = 0.5;
    E1System e1 = build_e1(c);
    LinearSystemOnSphere sys{{cplx(0.0), cplx(1.0), c}, e1.system(), c};
    TransversalFrame frame = make_frame(c);
    OdeOptions oopts;
    MonodromyRep rep = monodromy_representation(sys, frame.lambda_star, 0.1, oopts);

    GroupCheckReport serial = check_virtual_commutativity(rep, 12, 300, 42, 1e-7, false);
    GroupCheckReport parallel = check_virtual_commutativity(rep, 12, 300, 42, 1e-7, true);
    CHECK(serial.max_deviation == parallel.max_deviation);
    CHECK(serial.pass == parallel.pass);
    CHECK(serial.witness == parallel.witness);
}

TEST_CASE("jet-word commutator kernel: serial equals parallel") {
    PviParameters params = derive_parameters(1.0 / 3.0, 1.0 / 5.0, 1.0 / 7.0, 0.5);
    HolonomyContext ctx = make_holonomy_context(0.5, params);
    OdeOptions oopts;
    JetCommutativityReport serial =
        check_virtual_commutativity_jets(ctx, 8, 60, 42, 1e-5, oopts, false);
    JetCommutativityReport parallel =
        check_virtual_commutativity_jets(ctx, 8, 60, 42, 1e-5, oopts, true);
    CHECK(serial.max_even_deviation == parallel.max_even_deviation);
    CHECK(serial.max_odd_deviation == parallel.max_odd_deviation);
    CHECK(serial.witness == parallel.witness);
}

TEST_CASE("normal-form fuzz kernel: serial equals parallel") {
    KernelFuzzReport serial = kernel_commutator_fuzz(5000, 24, 42, false);
    KernelFuzzReport parallel = kernel_commutator_fuzz(5000, 24, 42, true);
    CHECK(serial.pass == parallel.pass);
    CHECK(serial.witness == parallel.witness);
}

TEST_CASE("shuffle sweep kernel: serial equals parallel") {
    QuadratureOptions qopts;
    double serial = shuffle_residual_sweep(40, 42, qopts, false);
    double parallel = shuffle_residual_sweep(40, 42, qopts, true);
    CHECK(serial == parallel);
}
