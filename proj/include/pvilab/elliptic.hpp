#pragma once

#include "pvilab/quadrature.hpp"

namespace pvi {

// The curve S_c : y^2 = lambda (lambda - 1)(lambda - c), c outside {0, 1}.
struct EllipticCurve {
    cplx c;
    explicit EllipticCurve(cplx c_in);
    std::vector<cplx> branch_points() const { return {cplx(0.0), cplx(1.0), c}; }
};

enum class CycleId { Cycle01, Cycle0c };

// A basis cycle realized as a closed loop in the lambda-plane whose lift to
// S_c closes, together with the branch at its basepoint (project convention).
struct Cycle {
    CycleId id;
    Loop loop;
    BranchState base_branch;
};

struct Periods {
    cplx pi1, pi2;
};

// r(lambda) dlambda, or r(lambda)/y dlambda when over_y is set.
struct CurveForm {
    std::function<cplx(cplx)> r;
    bool over_y = false;
    std::vector<cplx> poles;        // finite poles to residue-check
    bool residue_free = false;      // declared class

    Form as_form() const;
};

// The holomorphic differential in the normalization the closed-form
// monodromy entries use,
// c(c-1) dlambda / (2y).
CurveForm period_form(const EllipticCurve& curve);

Cycle make_cycle(const EllipticCurve& curve, CycleId id, double radius_factor,
                 const QuadratureOptions& opts);

// Loop integrals of the period form over the two basis cycles.  The cycle
// orientation convention is pinned so that these are exactly the entries the
// monodromy normalization produces (see closed_form_T).
Periods fundamental_periods(cplx c, const QuadratureOptions& opts, double radius_factor = 0.25);

// Branch-consistent loop integral of a residue-free form over a cycle's class.
cplx period_of_form(const EllipticCurve& curve, const CurveForm& form, const Cycle& cycle,
                    const QuadratureOptions& opts);

// Residue of the form at the curve point(s) over `pole` (small-loop quadrature).
cplx residue_on_curve(const EllipticCurve& curve, const CurveForm& form, cplx pole,
                      const QuadratureOptions& opts);

struct LiftResult {
    bool closes;
    BranchState end_branch;
};

// Lift of a plane loop to S_c; closes iff the branch returns to itself.
LiftResult lift_loop(const EllipticCurve& curve, const Loop& loop);

}  // namespace pvi
