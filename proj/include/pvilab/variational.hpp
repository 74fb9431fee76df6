#pragma once

#include "pvilab/elliptic.hpp"
#include "pvilab/ode.hpp"
#include "pvilab/pvi_model.hpp"

namespace pvi {

// First variational equation along the leaf at infinity:
//   (eta1, xi1)' = [[0, b], [0, a]] (eta1, xi1),
//   a = E_l / 2E,  b = c(c-1) / 2E   (everything at t = c).
struct E1System {
    cplx c;
    cplx a(cplx lambda) const;
    cplx b(cplx lambda) const;
    Mat coeff(cplx lambda) const;     // 2x2
    SystemMatrix system() const;      // rational coefficients, branch-free
};

E1System build_e1(cplx c);

// Distinguished fundamental solution of E1 continued from p along `path`:
//   X = [[ int c(c-1)/(2y), 1 ], [ y, 0 ]].
Mat closed_form_X(const E1System& e1, const Path& path_from_p, BranchState branch_at_p,
                  const QuadratureOptions& opts);
// X at the basepoint itself (empty integral).
Mat closed_form_X_at(const E1System& e1, const BranchState& branch_at_p);

// Monodromy generators in the p -> 0 normalization:
//   T0 = [[-1,0],[0,1]], T1 = [[-1,0],[Pi1,1]], Tc = [[-1,0],[Pi2,1]].
struct ClosedFormT {
    Mat t0, t1, tc;
};
ClosedFormT closed_form_T(const Periods& periods);

// Second variational equation, linearized with u1 = xi1 eta1, v1 = xi1^2:
//   (eta2, xi2, u1, v1)' = [[0,b,g,f],[0,a,e,d],[0,0,a,b],[0,0,0,2a]] (...).
struct E2System {
    cplx c;
    PviParameters params;
    cplx a(cplx lambda) const;
    cplx b(cplx lambda) const;
    cplx d(cplx lambda) const;
    cplx e(cplx lambda) const;
    cplx f(cplx lambda) const;
    cplx g(cplx lambda) const;
    Mat coeff(cplx lambda) const;     // 4x4
    SystemMatrix system() const;      // rational coefficients, branch-free
};

E2System build_e2(cplx c, const PviParameters& params);

// Strictly upper triangular form in (eta2, sigma2, u2, v2) after dividing
// xi2, u1 by y and v1 by E.  The six 1-forms a_ij dlambda live on S_c.
struct TriangularE2 {
    cplx c;
    E2System base;
    CurveForm w12() const;  // y b dl      = c(c-1)/(2y) dl
    CurveForm w13() const;  // y g dl
    CurveForm w14() const;  // E f dl
    CurveForm w23() const;  // e dl (exact: dh)
    CurveForm w24() const;  // y d dl
    CurveForm w34() const;  // identical to w12
    Mat coeff(cplx lambda, cplx y) const;  // 4x4, strictly upper triangular
    SystemMatrix system() const;           // needs branch
};

TriangularE2 triangularize(const E2System& sys);

// h with dh = w23:  h(lambda) = -1 / (2 (lambda - c)).
cplx triangular_h(cplx c, cplx lambda);

}  // namespace pvi
