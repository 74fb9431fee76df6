#include <doctest.h>

#include "oracles.hpp"
#include "pvilab/elliptic.hpp"

using namespace pvi;

namespace {
QuadratureOptions opts() { return QuadratureOptions{}; }
}

TEST_CASE("fundamental periods at c = 1/2 match the AGM oracle") {
    Periods per = fundamental_periods(0.5, opts());
    CHECK(std::abs(per.pi1 - oracle::agm_pi1(0.5)) < 1e-10);
    CHECK(std::abs(per.pi2 - oracle::agm_pi2(0.5)) < 1e-10);
    CHECK(std::abs(std::imag(per.pi2 / per.pi1)) > 0.1);
}

TEST_CASE("degenerate curve parameters are rejected") {
    CHECK_THROWS_AS(fundamental_periods(0.0, opts()), DomainError);
    CHECK_THROWS_AS(fundamental_periods(1.0, opts()), DomainError);
}

TEST_CASE("a loop enclosing no branch point has zero period") {
    EllipticCurve curve(0.5);
    Form omega = period_form(curve).as_form();
    cplx center(-0.4, 0.45);
    Path circle;
    for (int q = 0; q < 4; ++q)
        circle.append(Segment::arc(center, 0.1, q * kPi / 2.0, (q + 1) * kPi / 2.0));
    BranchState b = BranchState::at(curve.c, circle.start());
    CHECK(std::abs(integrate_form(omega, circle, &b, opts())) < 1e-12);
}

TEST_CASE("periods are stable under deformation of the realization") {
    Periods fat = fundamental_periods(0.5, opts(), 0.25);
    Periods thin = fundamental_periods(0.5, opts(), 0.12);
    CHECK(std::abs(fat.pi1 - thin.pi1) < 1e-10);
    CHECK(std::abs(fat.pi2 - thin.pi2) < 1e-10);
}

TEST_CASE("exact forms integrate to zero over cycles") {
    EllipticCurve curve(0.5);
    cplx c = curve.c;
    Cycle cyc = make_cycle(curve, CycleId::Cycle01, 0.25, opts());
    // d( -1/(2(lambda - c)) ) as a rational form.
    CurveForm exact;
    exact.r = [c](cplx l) { return 0.5 / ((l - c) * (l - c)); };
    exact.over_y = false;
    exact.poles = {c};
    exact.residue_free = true;
    CHECK(std::abs(period_of_form(curve, exact, cyc, opts())) < 1e-10);
}

TEST_CASE("the period form over cycle01 reproduces Pi1") {
    EllipticCurve curve(0.5);
    Cycle cyc = make_cycle(curve, CycleId::Cycle01, 0.25, opts());
    Periods per = fundamental_periods(0.5, opts());
    cplx v = period_of_form(curve, period_form(curve), cyc, opts());
    CHECK(std::abs(v - per.pi1) < 1e-11);
}

TEST_CASE("declared residue-free forms with residues are refused") {
    EllipticCurve curve(0.5);
    Cycle cyc = make_cycle(curve, CycleId::Cycle0c, 0.25, opts());
    CurveForm bad;
    bad.r = [](cplx l) { return 1.0 / (l - cplx(2.0, 0.0)); };
    bad.over_y = true;  // poles at the two preimages of 2 with opposite residues
    bad.poles = {cplx(2.0, 0.0)};
    bad.residue_free = true;
    CHECK_THROWS_AS(period_of_form(curve, bad, cyc, opts()), NumericError);
}

TEST_CASE("Legendre-type pairing of first and second kind periods") {
    // With Sigma the periods of lambda dlambda / (2y), the combination
    // (Pi1 Sigma2 - Pi2 Sigma1) / (c(c-1)) has modulus 2 pi for every c, by
    // the Riemann bilinear relation; the sign tracks the intersection
    // orientation of the realized cycles (it flips between c = 1/2 and c = 2,
    // where the excluded branch point moves across the chord).
    auto pairing = [&](cplx c) {
        EllipticCurve curve(c);
        Periods per = fundamental_periods(c, opts());
        CurveForm second;
        second.r = [](cplx l) { return 0.5 * l; };
        second.over_y = true;
        second.residue_free = true;
        Cycle c01 = make_cycle(curve, CycleId::Cycle01, 0.25, opts());
        Cycle c0c = make_cycle(curve, CycleId::Cycle0c, 0.25, opts());
        cplx sigma1 = period_of_form(curve, second, c01, opts());
        cplx sigma2 = period_of_form(curve, second, c0c, opts());
        return (per.pi1 * sigma2 - per.pi2 * sigma1) / (c * (c - 1.0));
    };
    cplx v_half = pairing(0.5);
    CHECK(std::abs(std::abs(v_half) - 2.0 * kPi) < 1e-8);
    CHECK(std::abs(std::abs(pairing(cplx(2.0, 0.0))) - 2.0 * kPi) < 1e-8);
    CHECK(std::abs(pairing(cplx(1.0, 1.0)) - v_half) < 1e-8);
}

TEST_CASE("lifting loops to the curve") {
    EllipticCurve curve(0.5);
    std::vector<cplx> pts = curve.branch_points();
    cplx base(0.25, 0.4);
    Loop g0 = build_puncture_loop(pts, 0, base, 0.1);
    Loop g1 = build_puncture_loop(pts, 1, base, 0.1);

    CHECK_FALSE(lift_loop(curve, g0).closes);
    CHECK(lift_loop(curve, compose_loops(g0, g1)).closes);
    CHECK(lift_loop(curve, g0.traversed_twice()).closes);
    CHECK(lift_loop(curve, g1.traversed_twice()).closes);

    Path circle;
    cplx center(-0.5, 0.5);
    for (int q = 0; q < 4; ++q)
        circle.append(Segment::arc(center, 0.1, q * kPi / 2.0, (q + 1) * kPi / 2.0));
    Loop trivial{circle, circle.start(), {0, 0, 0}};
    CHECK(lift_loop(curve, trivial).closes);
}

TEST_CASE("deep quadrature agrees with the default depth") {
    for (cplx c : {cplx(2.0, 0.0), cplx(1.0, 1.0)}) {
        Periods a = fundamental_periods(c, opts());
        Periods b = fundamental_periods(c, opts().deeper());
        CHECK(std::abs(a.pi1 - b.pi1) < 1e-11);
        CHECK(std::abs(a.pi2 - b.pi2) < 1e-11);
    }
}
