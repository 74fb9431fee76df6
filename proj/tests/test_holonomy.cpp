#include <doctest.h>

#include "oracles.hpp"
#include "pvilab/holonomy.hpp"

using namespace pvi;

namespace {
OdeOptions oopts() { return OdeOptions{}; }
PviParameters params() { return derive_parameters(1.0 / 3.0, 1.0 / 5.0, 1.0 / 7.0, 0.5); }
HolonomyContext ctx() { return make_holonomy_context(0.5, params()); }
}  // namespace

TEST_CASE("jet arithmetic basics") {
    Jet2 id = Jet2::identity();
    CHECK(jet_deviation_from_identity(id) == 0.0);

    Jet2 j = id;
    j.linear = Mat(2, {1.0, 0.3, 0.0, -1.0});
    j.q[0][0] = 0.2;
    j.q[1][1] = -0.1;
    double dropped = 1.0;
    Jet2 jj = jet_compose(j, id, &dropped);
    CHECK(jet_distance(jj, j) == 0.0);
    CHECK(dropped == 0.0);

    // Associativity to roundoff on generic jets.
    Jet2 k = id;
    k.linear = Mat(2, {1.0, -0.2, 0.0, 1.0});
    k.q[0][1] = 0.15;
    k.q[1][0] = 0.05;
    Jet2 l = id;
    l.linear = Mat(2, {1.0, 0.1, 0.0, -1.0});
    l.q[1][1] = 0.4;
    Jet2 lhs = jet_compose(jet_compose(j, k), l);
    Jet2 rhs = jet_compose(j, jet_compose(k, l));
    CHECK(jet_distance(lhs, rhs) < 1e-14);

    // The fixed point at the origin is structural: no constant term exists.
    auto [x, y] = j.apply(0.0, 0.0);
    CHECK(std::abs(x) == 0.0);
    CHECK(std::abs(y) == 0.0);
}

TEST_CASE("trivial loops give the identity jet") {
    HolonomyContext hc = ctx();
    Path circle;
    cplx center = hc.frame.lambda_star;
    for (int q = 0; q < 4; ++q)
        circle.append(Segment::arc(center + 0.02, 0.02, q * kPi / 2.0, (q + 1) * kPi / 2.0));
    Loop trivial{circle, circle.start(), {0, 0, 0}};
    Jet2 jet = holonomy_jet(hc, trivial, oopts());
    CHECK(jet_deviation_from_identity(jet) < 1e-10);
}

TEST_CASE("generator jets are involutions with reflection linear parts") {
    HolonomyContext hc = ctx();
    for (int k = 0; k < 3; ++k) {
        Jet2 jet = holonomy_jet(hc, hc.loops[k], oopts());
        CHECK(jet_deviation_from_identity(jet_compose(jet, jet)) < 1e-8);
        // Linear part has eigenvalues {-1, 1}: zero trace, det -1.
        CHECK(std::abs(trace(jet.linear)) < 1e-8);
        CHECK(std::abs(det(jet.linear) + 1.0) < 1e-8);
        // No dt feedback into mu at linear order.
        CHECK(std::abs(jet.linear.at(1, 0)) < 1e-10);
    }
}

TEST_CASE("holonomy fixes the leaf pointwise at mu = 0") {
    HolonomyContext hc = ctx();
    auto [dt, mu] = holonomy_nonlinear(hc, hc.loops[0], cplx(2e-4, 1e-4), 0.0, oopts());
    CHECK(std::abs(dt - cplx(2e-4, 1e-4)) < 1e-14);
    CHECK(std::abs(mu) == 0.0);
}

TEST_CASE("nonlinear holonomy double application returns") {
    HolonomyContext hc = ctx();
    InvolutivityReport rep = check_involutivity(hc, 0.0, 1e-3, oopts());
    CHECK(rep.max_nonlinear_distance < 1e-8);
    CHECK(rep.max_jet_deviation < 1e-6);

    Loop hinf = compose_loops(compose_loops(hc.loops[0], hc.loops[1]), hc.loops[2]);
    auto [dt, mu] =
        holonomy_nonlinear(hc, hinf.traversed_twice(), cplx(1e-4), cplx(1e-3), oopts());
    CHECK(std::hypot(std::abs(dt - 1e-4), std::abs(mu - 1e-3)) < 1e-7);
}

TEST_CASE("jets agree with the nonlinear holonomy to cubic order") {
    HolonomyContext hc = ctx();
    Jet2 jet = holonomy_jet(hc, hc.loops[1], oopts());
    double scales[2] = {1e-3, 5e-4};
    double err[2];
    for (int k = 0; k < 2; ++k) {
        cplx dt = 0.4 * scales[k], mu = scales[k];
        auto [jdt, jmu] = jet.apply(dt, mu);
        auto [ndt, nmu] = holonomy_nonlinear(hc, hc.loops[1], dt, mu, oopts());
        err[k] = std::hypot(std::abs(jdt - ndt), std::abs(jmu - nmu));
    }
    double order = std::log(err[0] / err[1]) / std::log(scales[0] / scales[1]);
    CHECK(order > 2.5);
}

TEST_CASE("path concatenation composes jets in the pinned order") {
    HolonomyContext hc = ctx();
    Jet2 j0 = holonomy_jet(hc, hc.loops[0], oopts());
    Jet2 j1 = holonomy_jet(hc, hc.loops[1], oopts());
    Loop both = compose_loops(hc.loops[0], hc.loops[1]);
    Jet2 jboth = holonomy_jet(hc, both, oopts());
    CHECK(jet_distance(jboth, jet_compose(j1, j0)) < 1e-6);
    // The reversed order differs (odd words do not commute).
    CHECK(jet_distance(jboth, jet_compose(j0, j1)) > 1e-3);
}

TEST_CASE("nonlinear and jet holonomy stay consistent under loop doubling") {
    // Deviations shrink when the ODE tolerance tightens.
    HolonomyContext hc = ctx();
    OdeOptions loose;
    loose.tol = 1e-6;
    OdeOptions tight;
    tight.tol = 1e-10;
    Jet2 j_loose = holonomy_jet(hc, hc.loops[0], loose);
    Jet2 j_tight = holonomy_jet(hc, hc.loops[0], tight);
    double dev_loose = jet_deviation_from_identity(jet_compose(j_loose, j_loose));
    double dev_tight = jet_deviation_from_identity(jet_compose(j_tight, j_tight));
    CHECK(dev_tight * 5.0 < dev_loose);
}

TEST_CASE("jet commutativity of even words with parity control") {
    HolonomyContext hc = ctx();
    JetCommutativityReport rep =
        check_virtual_commutativity_jets(hc, 8, 100, 20240901, 1e-5, oopts());
    CHECK(rep.even_pass);
    CHECK(rep.max_even_deviation < 1e-5);
    CHECK(rep.odd_control_pass);
    CHECK(rep.max_odd_deviation > 1e-5);
    CHECK(rep.witness.empty());
}

TEST_CASE("kappa0 = 0: jet involutivity persists") {
    PviParameters flat = derive_parameters(0.0, 1.0 / 5.0, 1.0 / 7.0, 0.5);
    HolonomyContext hc = make_holonomy_context(0.5, flat);
    for (int k = 0; k < 3; ++k) {
        Jet2 jet = holonomy_jet(hc, hc.loops[k], oopts());
        CHECK(jet_deviation_from_identity(jet_compose(jet, jet)) < 1e-6);
    }
}

TEST_CASE("ramification exponent of the leafwise approach to a0") {
    RamificationFit fit = ramification_exponent(0.5, params(), 1e-2, 2.5e-4, 25, oopts());
    CHECK(fit.exponent > 1.9);
    CHECK(fit.exponent < 2.1);
    CHECK(fit.half_window_drift < 0.05);
    // Projecting along the wrong axis destroys the quadratic fit.
    CHECK_FALSE(fit.control_exponent > 1.9);

    CHECK_THROWS_AS(
        ramification_exponent(0.5, derive_parameters(0.0, 0.2, 0.3, 0.4), 1e-2, 2.5e-4,
                              25, oopts()),
        DomainError);
    // A window without dynamic range is refused.
    CHECK_THROWS_AS(ramification_exponent(0.5, params(), 1e-2, 2e-2, 25, oopts()),
                    DomainError);
    CHECK_THROWS_AS(ramification_exponent(0.5, params(), 1e-2, 1e-3, 3, oopts()),
                    DomainError);
}

TEST_CASE("linear determinant sign tracks word parity") {
    HolonomyContext hc = ctx();
    std::array<Jet2, 3> gens = {holonomy_jet(hc, hc.loops[0], oopts()),
                                holonomy_jet(hc, hc.loops[1], oopts()),
                                holonomy_jet(hc, hc.loops[2], oopts())};
    SampleRng rng(31, 0);
    for (int i = 0; i < 40; ++i) {
        int len = 1 + rng.below(9);
        std::vector<int> word(len);
        for (int& u : word) u = rng.below(3);
        Jet2 jw = word_jet(gens, word);
        double expect = (len % 2 == 0) ? 1.0 : -1.0;
        CHECK(std::abs(det(jw.linear) - expect) < 1e-7);
    }
}

TEST_CASE("dropped dt^2 mass is negligible for pipeline jets") {
    HolonomyContext hc = ctx();
    Jet2 j0 = holonomy_jet(hc, hc.loops[0], oopts());
    Jet2 j1 = holonomy_jet(hc, hc.loops[1], oopts());
    double dropped = 0.0;
    jet_compose(j0, j1, &dropped);
    CHECK(dropped < 1e-9);
}
