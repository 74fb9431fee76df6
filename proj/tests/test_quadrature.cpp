#include <doctest.h>

#include "oracles.hpp"
#include "pvilab/quadrature.hpp"

using namespace pvi;

namespace {
QuadratureOptions opts() { return QuadratureOptions{}; }

Path unit_circle(cplx center, double radius) {
    Path p;
    for (int q = 0; q < 4; ++q)
        p.append(Segment::arc(center, radius, q * kPi / 2.0, (q + 1) * kPi / 2.0));
    return p;
}
}  // namespace

TEST_CASE("plain contour integrals") {
    Path seg;
    seg.append(Segment::line(0.0, 1.0));
    Form one = Form::rational([](cplx) { return cplx(1.0); });
    CHECK(std::abs(integrate_form(one, seg, nullptr, opts()) - 1.0) < 1e-13);

    Form inv = Form::rational([](cplx z) { return 1.0 / z; });
    cplx around = integrate_form(inv, unit_circle(0.0, 1.0), nullptr, opts());
    CHECK(std::abs(around - cplx(0.0, 2.0 * kPi)) < 1e-12);
}

TEST_CASE("additivity and reversal") {
    Form f = Form::rational([](cplx z) { return std::exp(z) / (z - cplx(0.0, 2.0)); });
    Path whole;
    whole.append(Segment::line(cplx(-1.0, 0.0), cplx(0.5, 0.3)));
    whole.append(Segment::line(cplx(0.5, 0.3), cplx(1.0, -0.2)));
    Path first;
    first.append(Segment::line(cplx(-1.0, 0.0), cplx(0.5, 0.3)));
    Path second;
    second.append(Segment::line(cplx(0.5, 0.3), cplx(1.0, -0.2)));

    cplx v = integrate_form(f, whole, nullptr, opts());
    cplx v1 = integrate_form(f, first, nullptr, opts());
    cplx v2 = integrate_form(f, second, nullptr, opts());
    CHECK(std::abs(v - (v1 + v2)) < 1e-12);

    cplx back = integrate_form(f, whole.reversed(), nullptr, opts());
    CHECK(std::abs(v + back) < 1e-12);
}

TEST_CASE("square-root branch continuation around roots") {
    cplx c = 0.5;
    std::vector<cplx> roots = {0.0, 1.0, c};
    cplx base(-0.25, 0.4);
    BranchState b0 = BranchState::at(c, base);

    // No roots enclosed: value returns.
    Path none = unit_circle(base, 0.05);
    BranchState b_none(c, none.start(), BranchState::at(c, none.start()).y());
    BranchState after = continue_sqrt(b_none, none);
    CHECK(std::abs(after.y() - b_none.y()) < 1e-10);

    // Exactly one root: sign flips.
    Loop g0 = build_puncture_loop(roots, 0, base, 0.1);
    BranchState flipped = continue_sqrt(b0, g0.path);
    CHECK(std::abs(flipped.y() + b0.y()) < 1e-10);

    // Two roots: value returns; cross-check with a pre-split walk.
    Loop g1 = build_puncture_loop(roots, 1, base, 0.1);
    Loop both = compose_loops(g0, g1);
    BranchState round = continue_sqrt(b0, both.path);
    CHECK(std::abs(round.y() - b0.y()) < 1e-10);

    Path halved;
    for (const Segment& s : both.path.segments()) {
        if (s.kind == Segment::Kind::Line) {
            cplx mid = s.point(0.5);
            halved.append(Segment::line(s.z0, mid));
            halved.append(Segment::line(mid, s.z1));
        } else {
            double tm = 0.5 * (s.theta0 + s.theta1);
            halved.append(Segment::arc(s.center, s.radius, s.theta0, tm));
            halved.append(Segment::arc(s.center, s.radius, tm, s.theta1));
        }
    }
    BranchState round2 = continue_sqrt(b0, halved);
    CHECK(std::abs(round2.y() - round.y()) < 1e-12);

    CHECK(round.defect() < 1e-12);
}

TEST_CASE("branch state validates its invariant") {
    CHECK_THROWS_AS(BranchState(0.5, 2.0, cplx(123.0, 0.0)), DomainError);
}

TEST_CASE("period form over the basis loops matches the AGM closed form") {
    // gamma_0 then gamma_1, anchored on the (0, c) segment: the pinned
    // orientation makes this the negative of Pi1.
    cplx c = 0.5;
    std::vector<cplx> roots = {0.0, 1.0, c};
    cplx anchor = c / 8.0;
    Loop g0 = build_puncture_loop(roots, 0, anchor, 0.02);
    Loop g1 = build_puncture_loop(roots, 1, anchor, 0.02);
    Form omega = Form::on_curve([c](cplx, cplx y) { return 0.5 * c * (c - 1.0) / y; });

    BranchState b = BranchState::at(c, anchor);
    cplx v01 = integrate_form(omega, compose_loops(g0, g1).path, &b, opts());
    CHECK(std::abs(v01 + oracle::agm_pi1(0.5)) < 1e-10);

    BranchState b2 = BranchState::at(c, anchor);
    cplx v10 = integrate_form(omega, compose_loops(g1, g0).path, &b2, opts());
    CHECK(std::abs(v10 - oracle::agm_pi1(0.5)) < 1e-10);
}

TEST_CASE("a pole on the path is reported as non-convergence") {
    Form f = Form::rational([](cplx z) { return 1.0 / (z - 0.5); });
    Path seg;
    seg.append(Segment::line(0.0, 1.0));
    QuadratureOptions fast = opts();
    fast.max_depth = 8;
    CHECK_THROWS_AS(integrate_form(f, seg, nullptr, fast), NumericError);
}
