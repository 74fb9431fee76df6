#include "pvilab/elliptic.hpp"

#include <cmath>

namespace pvi {

EllipticCurve::EllipticCurve(cplx c_in) : c(c_in) {
    if (std::abs(c) < 1e-9 || std::abs(c - 1.0) < 1e-9)
        throw DomainError("elliptic curve: c must stay away from {0, 1}");
}

Form CurveForm::as_form() const {
    if (over_y) {
        auto r_fn = r;
        return Form::on_curve([r_fn](cplx lambda, cplx y) { return r_fn(lambda) / y; });
    }
    auto r_fn = r;
    return Form::rational([r_fn](cplx lambda) { return r_fn(lambda); });
}

CurveForm period_form(const EllipticCurve& curve) {
    CurveForm f;
    cplx c = curve.c;
    f.r = [c](cplx) { return 0.5 * c * (c - 1.0); };
    f.over_y = true;
    f.residue_free = true;  // holomorphic on S_c
    return f;
}

// Canonical cycle basepoint: a fixed point on the segment from 0 toward c.
// The periods are tied to the monodromy normalization whose basepoint tends
// to 0 along this same segment; realizing the cycles on the segment keeps
// the two homotopy families aligned for every admissible c.
cplx cycle_anchor(const EllipticCurve& curve) { return curve.c / 8.0; }

Cycle make_cycle(const EllipticCurve& curve, CycleId id, double radius_factor,
                 const QuadratureOptions& opts) {
    (void)opts;
    std::vector<cplx> pts = curve.branch_points();  // {0, 1, c}
    int i = 0, j = (id == CycleId::Cycle01) ? 1 : 2;
    cplx base = cycle_anchor(curve);
    double radius = std::min(radius_factor * min_pairwise_distance(pts),
                             0.4 * std::abs(base));

    Loop gi = build_puncture_loop(pts, i, base, radius);
    Loop gj = build_puncture_loop(pts, j, base, radius);
    // Orientation pinned so that the cycle's period is the translation entry
    // of the corresponding monodromy word in the p -> 0 normalization: the
    // loop around the second-named branch point is traversed first.
    Loop composite = compose_loops(gj, gi);

    BranchState base_branch = BranchState::at(curve.c, base);
    BranchState around = continue_sqrt(base_branch, composite.path);
    if (std::abs(around.y() - base_branch.y()) >
        1e-7 * std::max(1.0, std::abs(base_branch.y())))
        throw NumericError("cycle: lift does not close on the curve");

    return Cycle{id, composite, base_branch};
}

Periods fundamental_periods(cplx c, const QuadratureOptions& opts, double radius_factor) {
    EllipticCurve curve(c);
    Form omega = period_form(curve).as_form();

    Cycle c01 = make_cycle(curve, CycleId::Cycle01, radius_factor, opts);
    BranchState b1 = c01.base_branch;
    cplx pi1 = integrate_form(omega, c01.loop.path, &b1, opts);

    Cycle c0c = make_cycle(curve, CycleId::Cycle0c, radius_factor, opts);
    BranchState b2 = c0c.base_branch;
    cplx pi2 = integrate_form(omega, c0c.loop.path, &b2, opts);

    if (std::abs(std::imag(pi2 / pi1)) < 1e-9)
        throw NumericError("fundamental_periods: periods not independent over R");
    return Periods{pi1, pi2};
}

cplx residue_on_curve(const EllipticCurve& curve, const CurveForm& form, cplx pole,
                      const QuadratureOptions& opts) {
    double dist = std::numeric_limits<double>::infinity();
    for (cplx q : curve.branch_points())
        if (std::abs(q - pole) > 1e-12) dist = std::min(dist, std::abs(q - pole));
    double radius = std::min(1e-2, 0.3 * dist);

    bool is_branch = false;
    for (cplx q : curve.branch_points())
        if (std::abs(q - pole) <= 1e-12) is_branch = true;

    Path circle;
    double th0 = 0.0;
    int turns = (is_branch && form.over_y) ? 2 : 1;
    for (int t = 0; t < turns; ++t)
        for (int q = 0; q < 4; ++q)
            circle.append(Segment::arc(pole, radius, th0 + (4 * t + q) * kPi / 2.0,
                                       th0 + (4 * t + q + 1) * kPi / 2.0));

    Form f = form.as_form();
    cplx value;
    if (f.needs_branch) {
        BranchState b = BranchState::at(curve.c, pole + radius);
        value = integrate_form(f, circle, &b, opts);
    } else {
        value = integrate_form(f, circle, nullptr, opts);
    }
    return value / (2.0 * kPi * cplx(0.0, 1.0));
}

cplx period_of_form(const EllipticCurve& curve, const CurveForm& form, const Cycle& cycle,
                    const QuadratureOptions& opts) {
    if (form.residue_free) {
        for (cplx pole : form.poles) {
            cplx res = residue_on_curve(curve, form, pole, opts);
            if (std::abs(res) > 1e-9)
                throw NumericError("period_of_form: residue detected in a declared "
                                   "residue-free form");
        }
    }
    Form f = form.as_form();
    if (f.needs_branch) {
        BranchState b = cycle.base_branch;
        return integrate_form(f, cycle.loop.path, &b, opts);
    }
    return integrate_form(f, cycle.loop.path, nullptr, opts);
}

LiftResult lift_loop(const EllipticCurve& curve, const Loop& loop) {
    BranchState start = BranchState::at(curve.c, loop.basepoint);
    BranchState end = continue_sqrt(start, loop.path);
    double scale = std::max(1.0, std::abs(start.y()));
    bool closes = std::abs(end.y() - start.y()) <= 1e-7 * scale;

    // Cross-check against branch-crossing parity.
    long total = 0;
    for (cplx q : curve.branch_points()) total += loop.path.winding_number(q);
    bool parity_closes = (total % 2) == 0;
    if (closes != parity_closes)
        throw NumericError("lift_loop: continuation disagrees with winding parity");
    return LiftResult{closes, end};
}

}  // namespace pvi
